use std::fmt;

use crate::group::GroupOps;
use crate::word::{Sym, Word};

use super::nc::{NcElem, NcGroup};
use super::QuotientError;

/// `u * d^a` in `Q_N = Nc(N) x| <d>`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QElem {
    u: NcElem,
    a: u64,
}

impl QElem {
    pub fn u(&self) -> &NcElem {
        &self.u
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn is_identity(&self) -> bool {
        self.a == 0 && self.u.is_identity()
    }

    pub fn into_parts(self) -> (NcElem, u64) {
        (self.u, self.a)
    }
}

impl fmt::Display for QElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} a={}", self.u, self.a)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QGroup {
    nc: NcGroup,
}

impl QGroup {
    pub fn new(size: usize) -> Result<Self, QuotientError> {
        Ok(Self {
            nc: NcGroup::new(size)?,
        })
    }

    pub fn nc(&self) -> &NcGroup {
        &self.nc
    }

    pub fn size(&self) -> usize {
        self.nc.size()
    }

    fn modulus(&self) -> i64 {
        self.size() as i64
    }

    pub fn log2_order_of_nc(&self) -> usize {
        self.nc.log2_order()
    }

    pub fn identity(&self) -> QElem {
        QElem {
            u: self.nc.identity(),
            a: 0,
        }
    }

    pub fn from_parts(&self, u: NcElem, a: i64) -> Result<QElem, QuotientError> {
        if u.size() != self.size() {
            return Err(QuotientError::Mismatch(format!(
                "element of Nc({}) used in Q_{}",
                u.size(),
                self.size()
            )));
        }
        Ok(QElem {
            u,
            a: a.rem_euclid(self.modulus()) as u64,
        })
    }

    pub fn from_nc(&self, u: NcElem) -> QElem {
        QElem { u, a: 0 }
    }

    /// `c = b_0^-1 d`
    pub fn c(&self) -> QElem {
        QElem {
            u: self.nc.inverse(&self.nc.b(0)),
            a: 1 % self.size() as u64,
        }
    }

    pub fn d(&self) -> QElem {
        self.d_pow(1)
    }

    pub fn d_pow(&self, k: i64) -> QElem {
        QElem {
            u: self.nc.identity(),
            a: k.rem_euclid(self.modulus()) as u64,
        }
    }

    pub fn basis(&self, i: i64) -> QElem {
        self.from_nc(self.nc.basis(i))
    }

    pub fn generators(&self) -> Vec<QElem> {
        vec![self.c(), self.d()]
    }

    pub fn try_mul(&self, x: &QElem, y: &QElem) -> Result<QElem, QuotientError> {
        let moved = self.nc.sigma_pow(&y.u, -(x.a as i64));
        Ok(QElem {
            u: self.nc.try_mul(&x.u, &moved)?,
            a: (x.a + y.a) % self.size() as u64,
        })
    }

    pub fn inverse(&self, x: &QElem) -> QElem {
        QElem {
            u: self.nc.sigma_pow(&self.nc.inverse(&x.u), x.a as i64),
            a: (-(x.a as i64)).rem_euclid(self.modulus()) as u64,
        }
    }

    /// Element orders divide `4N`, so `k` is reduced modulo `4N` first.
    pub fn pow(&self, x: &QElem, k: i64) -> QElem {
        let mut k = k.rem_euclid(4 * self.modulus());
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

    pub fn letter(&self, sym: Sym, exp: i64) -> Result<QElem, QuotientError> {
        Ok(match sym {
            Sym::C => self.pow(&self.c(), exp),
            Sym::D => self.d_pow(exp),
            Sym::B(i) => self.from_nc(self.nc.pow(&self.nc.basis(i), exp)),
            Sym::T => return Err(QuotientError::ContainsStableLetter),
        })
    }

    pub fn eval(&self, w: &Word) -> Result<QElem, QuotientError> {
        let mut acc = self.identity();
        for l in w.letters() {
            acc = self.mul(&acc, &self.letter(l.sym, l.exp)?);
        }
        Ok(acc)
    }
}

impl GroupOps for QGroup {
    type Elem = QElem;

    fn identity(&self) -> QElem {
        QGroup::identity(self)
    }

    fn mul(&self, a: &QElem, b: &QElem) -> QElem {
        self.try_mul(a, b).expect("elements of the same Q_N")
    }

    fn inv(&self, a: &QElem) -> QElem {
        self.inverse(a)
    }
}

/// Image of a t-free word in `Q_N`.
pub fn eval_in_q(w: &Word, size: usize) -> Result<QElem, QuotientError> {
    QGroup::new(size)?.eval(w)
}
