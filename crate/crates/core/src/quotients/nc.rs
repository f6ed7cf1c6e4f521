use std::fmt;

use crate::group::GroupOps;

use super::bits::Bits;
use super::QuotientError;

/// Normal form `b_0^{eps_0} ... b_{N-1}^{eps_{N-1}} * z` in `Nc(N)`, where `z`
/// is a product of the central squares `c_k = b_k^2`, `0 <= k <= N/2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NcElem {
    eps: Bits,
    z: Bits,
}

impl NcElem {
    pub fn eps(&self) -> &Bits {
        &self.eps
    }

    pub fn z(&self) -> &Bits {
        &self.z
    }

    pub fn is_identity(&self) -> bool {
        self.eps.is_zero() && self.z.is_zero()
    }

    pub fn is_central(&self) -> bool {
        self.eps.is_zero()
    }

    /// The `N` this element belongs to.
    pub fn size(&self) -> usize {
        self.eps.len()
    }
}

impl fmt::Display for NcElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "eps={} z={}", self.eps, self.z)
    }
}

/// The class-2 group `<b_0, ..., b_{N-1}>` with relations `b_i^4 = 1`,
/// `[b_0, b_i] = b_i^2`, `[b_i, b_j] = b_i^2 b_{j-i}^2 b_j^2` and
/// `b_i^2 = b_{N-i}^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct NcGroup {
    size: usize,
}

impl NcGroup {
    pub fn new(size: usize) -> Result<Self, QuotientError> {
        if size == 0 {
            return Err(QuotientError::ZeroSize);
        }
        Ok(Self { size })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Number of central coordinates, `N/2 + 1`.
    pub fn central_len(&self) -> usize {
        self.size / 2 + 1
    }

    /// `log2 |Nc(N)| = N + N/2 + 1`.
    pub fn log2_order(&self) -> usize {
        self.size + self.central_len()
    }

    /// Central coordinate of `b_i^2`.
    pub fn sq_index(&self, i: usize) -> usize {
        i.min(self.size - i)
    }

    pub fn identity(&self) -> NcElem {
        NcElem {
            eps: Bits::zeros(self.size),
            z: Bits::zeros(self.central_len()),
        }
    }

    pub fn from_parts(&self, eps: Bits, z: Bits) -> Result<NcElem, QuotientError> {
        if eps.len() != self.size || z.len() != self.central_len() {
            return Err(QuotientError::Mismatch(format!(
                "expected {} + {} bits for N = {}, got {} + {}",
                self.size,
                self.central_len(),
                self.size,
                eps.len(),
                z.len()
            )));
        }
        Ok(NcElem { eps, z })
    }

    /// `b_i` for `0 <= i < N`.
    pub fn b(&self, i: usize) -> NcElem {
        NcElem {
            eps: Bits::unit(self.size, i),
            z: Bits::zeros(self.central_len()),
        }
    }

    /// `b_i` for any integer `i`: `b_{i mod N}`, except that a nonzero
    /// multiple of `N` gives the identity since `[b_0, d^N] = 1`.
    pub fn basis(&self, i: i64) -> NcElem {
        let r = i.rem_euclid(self.size as i64) as usize;
        if r == 0 && i != 0 {
            self.identity()
        } else {
            self.b(r)
        }
    }

    /// `c_k`, the central coordinate vector with a single 1 at `k`.
    pub fn central(&self, k: usize) -> NcElem {
        NcElem {
            eps: Bits::zeros(self.size),
            z: Bits::unit(self.central_len(), k),
        }
    }

    pub fn generators(&self) -> Vec<NcElem> {
        (0..self.size).map(|i| self.b(i)).collect()
    }

    /// Every element, in order of the packed `(eps, z)` bits. Only sensible
    /// for small `N`.
    pub fn all_elements(&self) -> Vec<NcElem> {
        let bits = self.log2_order();
        assert!(bits <= 24, "too many elements to list: 2^{bits}");
        (0u64..1 << bits)
            .map(|v| {
                let eps: Vec<bool> = (0..self.size).map(|i| v >> i & 1 == 1).collect();
                let z: Vec<bool> = (0..self.central_len())
                    .map(|k| v >> (self.size + k) & 1 == 1)
                    .collect();
                NcElem {
                    eps: Bits::from_bools(&eps),
                    z: Bits::from_bools(&z),
                }
            })
            .collect()
    }

    fn check(&self, x: &NcElem) -> Result<(), QuotientError> {
        if x.eps.len() != self.size {
            return Err(QuotientError::Mismatch(format!(
                "element of Nc({}) used in Nc({})",
                x.eps.len(),
                self.size
            )));
        }
        Ok(())
    }

    /// Central correction picked up when moving `y`'s letters left past `x`'s:
    /// `sum_{i > j} x_i y_j [b_i, b_j] + sum_i x_i y_i b_i^2`.
    pub fn cocycle(&self, x: &Bits, y: &Bits) -> Bits {
        // raw[r] accumulates b_r^2 before folding r -> min(r, N - r)
        let mut raw = x.and(y);
        for j in y.ones() {
            if j == 0 {
                let mut xs = x.clone();
                xs.set(0, false);
                raw.xor_assign(&xs);
            } else {
                let hi = x.above(j);
                if hi.parity() {
                    raw.flip(j);
                }
                raw.xor_assign(&hi.shifted_down(j));
                raw.xor_assign(&hi);
            }
        }
        let mut z = Bits::zeros(self.central_len());
        for r in raw.ones() {
            z.flip(self.sq_index(r));
        }
        z
    }

    pub fn try_mul(&self, x: &NcElem, y: &NcElem) -> Result<NcElem, QuotientError> {
        self.check(x)?;
        self.check(y)?;
        let mut z = x.z.xor(&y.z);
        z.xor_assign(&self.cocycle(&x.eps, &y.eps));
        Ok(NcElem {
            eps: x.eps.xor(&y.eps),
            z,
        })
    }

    pub fn inverse(&self, x: &NcElem) -> NcElem {
        NcElem {
            eps: x.eps.clone(),
            z: x.z.xor(&self.cocycle(&x.eps, &x.eps)),
        }
    }

    pub fn square(&self, x: &NcElem) -> NcElem {
        NcElem {
            eps: Bits::zeros(self.size),
            z: self.cocycle(&x.eps, &x.eps),
        }
    }

    /// Every element has order dividing 4.
    pub fn pow(&self, x: &NcElem, k: i64) -> NcElem {
        match k.rem_euclid(4) {
            0 => self.identity(),
            1 => x.clone(),
            2 => self.square(x),
            _ => self.inverse(x),
        }
    }

    /// Image of `x` under the endomorphism sending `b_i` to `image(i)`.
    pub fn apply_hom(&self, x: &NcElem, image: impl Fn(usize) -> NcElem) -> NcElem {
        let mut acc = self.identity();
        for i in x.eps.ones() {
            acc = self.mul(&acc, &image(i));
        }
        for k in x.z.ones() {
            acc = self.mul(&acc, &self.square(&image(k)));
        }
        acc
    }

    /// `sigma^k(b_i) = d^-k b_i d^k`.
    pub fn sigma_image(&self, i: usize, k: i64) -> NcElem {
        let k = k.rem_euclid(self.size as i64);
        if k == 0 {
            return self.b(i);
        }
        if i == 0 {
            self.mul(&self.b(0), &self.basis(k))
        } else {
            let bk_inv = self.inverse(&self.basis(k));
            self.mul(&bk_inv, &self.basis(i as i64 + k))
        }
    }

    /// Conjugation by `d^k`: `x -> d^-k x d^k`.
    pub fn sigma_pow(&self, x: &NcElem, k: i64) -> NcElem {
        if k.rem_euclid(self.size as i64) == 0 {
            return x.clone();
        }
        self.apply_hom(x, |i| self.sigma_image(i, k))
    }

    pub fn sigma(&self, x: &NcElem) -> NcElem {
        self.sigma_pow(x, 1)
    }

    /// Checks that `images` (of `b_0..b_{N-1}`) satisfy the defining
    /// relations, i.e. extend to an endomorphism.
    pub fn check_relations(&self, images: &[NcElem]) -> Result<(), String> {
        let n = self.size;
        if images.len() != n {
            return Err(format!("expected {n} images, got {}", images.len()));
        }
        for x in images {
            self.check(x).map_err(|e| e.to_string())?;
        }
        let sq: Vec<NcElem> = images.iter().map(|x| self.square(x)).collect();
        for (i, s) in sq.iter().enumerate() {
            if !self.mul(s, s).is_identity() {
                return Err(format!("image of b_{i} does not have order dividing 4"));
            }
        }
        for i in 1..n {
            if self.commutator(&images[0], &images[i]) != sq[i] {
                return Err(format!("[b_0, b_{i}] = b_{i}^2 fails on images"));
            }
        }
        for i in 1..n {
            for j in i + 1..n {
                let rhs = self.mul(&self.mul(&sq[i], &sq[j - i]), &sq[j]);
                if self.commutator(&images[i], &images[j]) != rhs {
                    return Err(format!(
                        "[b_{i}, b_{j}] = b_{i}^2 b_{}^2 b_{j}^2 fails on images",
                        j - i
                    ));
                }
            }
        }
        for i in 1..=n / 2 {
            if sq[i] != sq[n - i] {
                return Err(format!("b_{i}^2 = b_{}^2 fails on images", n - i));
            }
        }
        Ok(())
    }

    /// Checks that the generator images of `sigma` satisfy the relations
    /// and that iterating `sigma` `N` times fixes every generator.
    pub fn validate_sigma(&self) -> Result<(), QuotientError> {
        let invalid = |reason: String| QuotientError::InvalidSigma {
            size: self.size,
            reason,
        };
        let images: Vec<NcElem> = (0..self.size).map(|i| self.sigma_image(i, 1)).collect();
        self.check_relations(&images).map_err(invalid)?;
        for i in 0..self.size {
            let mut x = self.b(i);
            for _ in 0..self.size {
                x = self.apply_hom(&x, |j| images[j].clone());
            }
            if x != self.b(i) {
                return Err(invalid(format!("sigma^{}(b_{i}) = {x}", self.size)));
            }
        }
        Ok(())
    }
}

impl GroupOps for NcGroup {
    type Elem = NcElem;

    fn identity(&self) -> NcElem {
        NcGroup::identity(self)
    }

    fn mul(&self, a: &NcElem, b: &NcElem) -> NcElem {
        self.try_mul(a, b).expect("elements of the same Nc(N)")
    }

    fn inv(&self, a: &NcElem) -> NcElem {
        self.inverse(a)
    }
}
