use std::fmt;

use serde::Serialize;

use crate::group::GroupOps;
use crate::word::{Sym, Word};

use super::nc::{NcElem, NcGroup};
use super::q::{QElem, QGroup};
use super::QuotientError;

/// Largest `m` for which the explicit tables of [`PGroup`] are built.
pub const MAX_TABLE_M: u32 = 10;
/// Largest `m` accepted by [`eval_in_p`].
pub const MAX_EVAL_M: u32 = 20;

/// `u * d^a * t^e` in `P_{n,m} = Q_{2^m} x| <t>`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PElem {
    u: NcElem,
    a: u64,
    e: u64,
}

impl PElem {
    pub fn u(&self) -> &NcElem {
        &self.u
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn e(&self) -> u64 {
        self.e
    }

    pub fn is_identity(&self) -> bool {
        self.a == 0 && self.e == 0 && self.u.is_identity()
    }

    pub fn image(&self) -> PImage {
        PImage {
            eps: self.u.eps().to_string(),
            z: self.u.z().to_string(),
            d_exp: self.a,
            t_exp: self.e,
        }
    }
}

impl fmt::Display for PElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} a={} e={}", self.u, self.a, self.e)
    }
}

/// Serialized form of a [`PElem`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PImage {
    pub eps: String,
    pub z: String,
    pub d_exp: u64,
    pub t_exp: u64,
}

fn pow_mod(base: i64, mut exp: u64, modulus: u64) -> u64 {
    let m = modulus as u128;
    let mut b = base.rem_euclid(modulus as i64) as u128;
    let mut acc = 1 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

fn check_params(n: i64, m: u32, max_m: u32) -> Result<(), QuotientError> {
    if n == 0 {
        return Err(QuotientError::ZeroN);
    }
    if m == 0 || m > max_m {
        return Err(QuotientError::BadM { m, max: max_m });
    }
    Ok(())
}

/// The automorphism `x -> t x t^-1` of `Q_{2^m}`: `d -> d^n`,
/// `b_0 -> d^n c^-n`, `b_i -> [d^n c^-n, d^{n i}]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TauTable {
    n: i64,
    m: u32,
    q: QGroup,
    images: Vec<NcElem>,
}

impl TauTable {
    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Images of `b_0, ..., b_{2^m - 1}`.
    pub fn images(&self) -> &[NcElem] {
        &self.images
    }

    /// `d`-exponent of the image of `d`.
    pub fn d_image(&self) -> u64 {
        pow_mod(self.n, 1, self.q.size() as u64)
    }

    pub fn apply(&self, x: &NcElem) -> NcElem {
        self.q.nc().apply_hom(x, |i| self.images[i].clone())
    }

    pub fn apply_q(&self, x: &QElem) -> QElem {
        let a = x.a() as i64 * self.d_image() as i64;
        self.q.from_parts(self.apply(x.u()), a).expect("same Q")
    }
}

/// Builds `tau` on `Q_{2^m}` by evaluating its defining words and validates
/// it: the images satisfy every relation of `Q_{2^m}`, and `tau^{2^m}` fixes
/// `d` and each `b_i`. Even `n` fails the last check.
pub fn build_tau(n: i64, m: u32) -> Result<TauTable, QuotientError> {
    check_params(n, m, MAX_TABLE_M)?;
    let size = 1usize << m;
    let q = QGroup::new(size)?;
    let nc = *q.nc();
    let invalid = |reason: String| QuotientError::InvalidTau { n, m, reason };

    let y = Word::letter(Sym::D, n).mul(&Word::letter(Sym::C, -n));
    let mut images = Vec::with_capacity(size);
    for i in 0..size as i64 {
        let word = if i == 0 {
            y.clone()
        } else {
            let k = n.checked_mul(i).ok_or(QuotientError::Overflow)?;
            Word::commutator(&y, &Word::letter(Sym::D, k))
        };
        let (u, a) = q.eval(&word)?.into_parts();
        if a != 0 {
            return Err(invalid(format!("image of b_{i} has d-exponent {a}")));
        }
        images.push(u);
    }
    let tau = TauTable { n, m, q, images };

    nc.check_relations(&tau.images).map_err(invalid)?;
    for i in 0..size {
        // d^-1 b_i d = sigma(b_i) must survive: tau(d)^-1 tau(b_i) tau(d) = tau(sigma(b_i))
        let lhs = nc.sigma_pow(&tau.images[i], tau.d_image() as i64);
        let rhs = tau.apply(&nc.sigma(&nc.b(i)));
        if lhs != rhs {
            return Err(invalid(format!("d-action on b_{i} is not preserved")));
        }
    }
    let sq = nc.square(&tau.images[0]);
    if nc.sigma_pow(&sq, tau.d_image() as i64) != sq {
        return Err(invalid("[b_0^2, d] = 1 is not preserved".into()));
    }

    let period = size as u64;
    let d_end = pow_mod(n, period, size as u64);
    if d_end != 1 % size as u64 {
        return Err(invalid(format!(
            "tau^{period}(d) = d^{d_end}, not d{}",
            if n % 2 == 0 { " (n must be odd)" } else { "" }
        )));
    }
    for i in 0..size {
        let mut x = nc.b(i);
        for _ in 0..period {
            x = tau.apply(&x);
        }
        if x != nc.b(i) {
            return Err(invalid(format!("tau^{period}(b_{i}) = {x}, not b_{i}")));
        }
    }
    Ok(tau)
}

/// `P_{n,m}` with explicit tables for every power of `tau`.
#[derive(Debug, Clone)]
pub struct PGroup {
    tau: TauTable,
    tau_pows: Vec<Vec<NcElem>>,
    n_pows: Vec<u64>,
}

impl PGroup {
    pub fn new(n: i64, m: u32) -> Result<Self, QuotientError> {
        let tau = build_tau(n, m)?;
        let size = 1usize << m;
        let mut tau_pows = vec![tau.q.nc().generators()];
        for e in 1..size {
            let next = tau_pows[e - 1].iter().map(|x| tau.apply(x)).collect();
            tau_pows.push(next);
        }
        let n_pows = (0..size as u64)
            .map(|e| pow_mod(n, e, size as u64))
            .collect();
        Ok(Self {
            tau,
            tau_pows,
            n_pows,
        })
    }

    pub fn n(&self) -> i64 {
        self.tau.n
    }

    pub fn m(&self) -> u32 {
        self.tau.m
    }

    pub fn q(&self) -> &QGroup {
        &self.tau.q
    }

    pub fn nc(&self) -> &NcGroup {
        self.tau.q.nc()
    }

    pub fn tau(&self) -> &TauTable {
        &self.tau
    }

    pub fn size(&self) -> usize {
        self.tau.q.size()
    }

    /// `log2 |P_{n,m}| = N + N/2 + 1 + 2m`.
    pub fn log2_order(&self) -> usize {
        self.nc().log2_order() + 2 * self.m() as usize
    }

    pub fn identity(&self) -> PElem {
        PElem {
            u: self.nc().identity(),
            a: 0,
            e: 0,
        }
    }

    pub fn from_q(&self, x: &QElem) -> PElem {
        PElem {
            u: x.u().clone(),
            a: x.a(),
            e: 0,
        }
    }

    pub fn from_parts(&self, u: NcElem, a: i64, e: i64) -> Result<PElem, QuotientError> {
        let x = self.q().from_parts(u, a)?;
        let mut p = self.from_q(&x);
        p.e = e.rem_euclid(self.size() as i64) as u64;
        Ok(p)
    }

    pub fn c(&self) -> PElem {
        self.from_q(&self.q().c())
    }

    pub fn d(&self) -> PElem {
        self.from_q(&self.q().d())
    }

    pub fn t(&self) -> PElem {
        PElem {
            e: 1 % self.size() as u64,
            ..self.identity()
        }
    }

    pub fn generators(&self) -> Vec<PElem> {
        vec![self.c(), self.d(), self.t()]
    }

    /// `tau^e(x)` from the tables.
    pub fn tau_pow(&self, x: &NcElem, e: u64) -> NcElem {
        let table = &self.tau_pows[e as usize % self.size()];
        self.nc().apply_hom(x, |i| table[i].clone())
    }

    pub fn try_mul(&self, x: &PElem, y: &PElem) -> Result<PElem, QuotientError> {
        let nc = self.nc();
        let moved = nc.sigma_pow(&self.tau_pow(&y.u, x.e), -(x.a as i64));
        let size = self.size() as u64;
        Ok(PElem {
            u: nc.try_mul(&x.u, &moved)?,
            a: (x.a + self.n_pows[x.e as usize] * y.a) % size,
            e: (x.e + y.e) % size,
        })
    }

    pub fn inverse(&self, x: &PElem) -> PElem {
        let size = self.size() as u64;
        let e = (size - x.e) % size;
        let nc = self.nc();
        let v = nc.sigma_pow(&nc.inverse(&x.u), x.a as i64);
        PElem {
            u: self.tau_pow(&v, e),
            a: (size - x.a) % size * self.n_pows[e as usize] % size,
            e,
        }
    }

    /// Element orders divide `4 N^2`.
    pub fn pow(&self, x: &PElem, k: i64) -> PElem {
        let bound = 4 * (self.size() as i64).pow(2);
        let mut k = k.rem_euclid(bound);
        let mut base = x.clone();
        let mut acc = self.identity();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            k >>= 1;
        }
        acc
    }

    pub fn letter(&self, sym: Sym, exp: i64) -> PElem {
        let g = match sym {
            Sym::C => self.c(),
            Sym::D => self.d(),
            Sym::T => self.t(),
            Sym::B(i) => self.from_q(&self.q().basis(i)),
        };
        self.pow(&g, exp)
    }

    /// Fold of the group law over the letter images.
    pub fn eval(&self, w: &Word) -> PElem {
        w.letters().iter().fold(self.identity(), |acc, l| {
            self.mul(&acc, &self.letter(l.sym, l.exp))
        })
    }
}

impl GroupOps for PGroup {
    type Elem = PElem;

    fn identity(&self) -> PElem {
        PGroup::identity(self)
    }

    fn mul(&self, a: &PElem, b: &PElem) -> PElem {
        self.try_mul(a, b).expect("elements of the same P_{n,m}")
    }

    fn inv(&self, a: &PElem) -> PElem {
        self.inverse(a)
    }
}

/// Image of `w` in `P_{n,m}` without building the tables of [`PGroup`].
///
/// The state is `q * t^e` with `q` in `Q_{2^m}`; a letter `x` is absorbed as
/// `q * tau^e(x)`, where `tau^e` is substitution `t -> t^{n^e}` on `c`, `d`
/// and the `b_i`.
pub fn eval_in_p(w: &Word, n: i64, m: u32) -> Result<PElem, QuotientError> {
    check_params(n, m, MAX_EVAL_M)?;
    if n % 2 == 0 {
        return Err(QuotientError::EvenN(n));
    }
    let size = 1u64 << m;
    let q = QGroup::new(size as usize)?;
    let nc = *q.nc();
    let mut acc = q.identity();
    let mut e = 0u64;
    for l in w.letters() {
        if l.sym == Sym::T {
            e = (e as i64 + l.exp).rem_euclid(size as i64) as u64;
            continue;
        }
        // n^e modulo 4N covers both the c-exponent (order | 4N) and the d-exponent
        let ne = pow_mod(n, e, 4 * size) as i64;
        let x = match l.sym {
            Sym::C => q.pow(&q.c(), ne * (l.exp.rem_euclid(4 * size as i64))),
            Sym::D => q.d_pow(ne * l.exp.rem_euclid(size as i64)),
            Sym::B(i) => {
                let ye = q.mul(&q.d_pow(ne), &q.pow(&q.c(), -ne));
                debug_assert_eq!(ye.a(), 0);
                let image = if i == 0 {
                    ye.u().clone()
                } else {
                    let shift = ne * i.rem_euclid(size as i64);
                    nc.mul(&nc.inverse(ye.u()), &nc.sigma_pow(ye.u(), shift))
                };
                q.from_nc(nc.pow(&image, l.exp))
            }
            Sym::T => unreachable!(),
        };
        acc = q.mul(&acc, &x);
    }
    let (u, a) = acc.into_parts();
    Ok(PElem { u, a, e })
}
