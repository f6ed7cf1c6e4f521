//! Residual-2 separation: the projection `H_n -> BS(1, n)`, certificates that
//! a word survives in some `P_{n,m}`, and the divisibility behind `P_{n,m}`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::matrix_model::{self, ModelError};
use crate::quotients::{eval_in_p, PElem, PImage, QuotientError, MAX_EVAL_M};
use crate::word::{Sym, Word};

/// Default largest `m` tried by [`separate`].
pub const DEFAULT_M_CAP: u32 = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeparationError {
    #[error("n must be nonzero")]
    ZeroN,
    #[error("n must be odd: H_n is residually 2 only for odd n (got n = {0})")]
    EvenN(i64),
    #[error("m must lie in 1..={max}, got {m}")]
    BadM { m: u32, max: u32 },
    #[error("t-exponent overflow")]
    Overflow,
    #[error("certificate failed verification: {0}")]
    Unverified(String),
    #[error(transparent)]
    Quotient(#[from] QuotientError),
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// `(a / n^k, e)` in `BS(1, n) = Z[1/n] x| Z`, with `t d t^-1 = d^n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BsElem {
    a: BigInt,
    k: u64,
    e: i64,
}

impl BsElem {
    pub fn identity() -> Self {
        Self {
            a: BigInt::zero(),
            k: 0,
            e: 0,
        }
    }

    /// Normalizes `a / n^k`.
    pub fn new(a: BigInt, k: u64, e: i64, n: i64) -> Result<Self, SeparationError> {
        if n == 0 {
            return Err(SeparationError::ZeroN);
        }
        let nb = BigInt::from(n);
        let (mut a, mut k) = (a, k);
        while k > 0 {
            let (q, r) = a.div_rem(&nb);
            if !r.is_zero() {
                break;
            }
            a = q;
            k -= 1;
        }
        if a.is_zero() {
            k = 0;
        }
        Ok(Self { a, k, e })
    }

    pub fn numerator(&self) -> &BigInt {
        &self.a
    }

    pub fn denominator_exp(&self) -> u64 {
        self.k
    }

    pub fn t_exp(&self) -> i64 {
        self.e
    }

    pub fn is_identity(&self) -> bool {
        self.a.is_zero() && self.e == 0
    }

    /// `(q1, e1)(q2, e2) = (q1 + n^{e1} q2, e1 + e2)`.
    pub fn mul(&self, other: &Self, n: i64) -> Result<Self, SeparationError> {
        if n == 0 {
            return Err(SeparationError::ZeroN);
        }
        let nb = BigInt::from(n);
        // n^{e1} * a2 / n^{k2} as num / n^den
        let (num2, den2) = if self.e >= 0 {
            (&other.a * Pow::pow(&nb, self.e.unsigned_abs()), other.k)
        } else {
            (other.a.clone(), other.k + self.e.unsigned_abs())
        };
        let den = self.k.max(den2);
        let a = &self.a * Pow::pow(&nb, den - self.k) + num2 * Pow::pow(&nb, den - den2);
        let e = self
            .e
            .checked_add(other.e)
            .ok_or(SeparationError::Overflow)?;
        Self::new(a, den, e, n)
    }
}

impl fmt::Display for BsElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(a={}, k={}, e={})", self.a, self.k, self.e)
    }
}

/// Image of `w` in `BS(1, n)`: `c, d -> d`, `t -> t`, `b_i -> 1`.
pub fn bs_project(w: &Word, n: i64) -> Result<BsElem, SeparationError> {
    if n == 0 {
        return Err(SeparationError::ZeroN);
    }
    let mut acc = BsElem::identity();
    for l in w.letters() {
        let x = match l.sym {
            Sym::C | Sym::D => BsElem::new(BigInt::from(l.exp), 0, 0, n)?,
            Sym::T => BsElem::new(BigInt::zero(), 0, l.exp, n)?,
            Sym::B(_) => continue,
        };
        acc = acc.mul(&x, n)?;
    }
    Ok(acc)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Trivial,
    Separated,
    /// No `m <= m_cap` separates; never read as triviality.
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    BsPart,
    NcSearch,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Trivial => "trivial",
            Verdict::Separated => "separated",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Route::BsPart => "bs-part",
            Route::NcSearch => "nc-search",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub word: String,
    pub n: i64,
    pub verdict: Verdict,
    pub m: Option<u32>,
    pub route: Option<Route>,
    pub image: Option<PImage>,
    #[serde(skip)]
    pub element: Option<PElem>,
}

impl Certificate {
    fn new(w: &Word, n: i64, verdict: Verdict) -> Self {
        Self {
            word: w.to_string(),
            n,
            verdict,
            m: None,
            route: None,
            image: None,
            element: None,
        }
    }

    fn separated(w: &Word, n: i64, m: u32, route: Route, p: PElem) -> Self {
        Self {
            m: Some(m),
            route: Some(route),
            image: Some(p.image()),
            element: Some(p),
            ..Self::new(w, n, Verdict::Separated)
        }
    }

    /// Re-evaluates the word in `P_{n,m}` and checks the stored image.
    pub fn verify(&self, w: &Word) -> Result<bool, SeparationError> {
        match (self.verdict, self.m, &self.element) {
            (Verdict::Separated, Some(m), Some(p)) => {
                let q = eval_in_p(w, self.n, m)?;
                Ok(&q == p && !q.is_identity())
            }
            (Verdict::Trivial, _, _) => {
                matrix_model::is_trivial_in_h(w, self.n).map_err(Into::into)
            }
            (Verdict::Inconclusive, _, _) => Ok(true),
            _ => Ok(false),
        }
    }
}

fn v2(x: &BigInt) -> u64 {
    x.trailing_zeros().expect("nonzero")
}

/// Finds `m` with `pi_{n,m}(w) != 1`, or decides `w = 1` in `H_n`.
///
/// A nontrivial image in `BS(1, n)` is detected analytically: a t-exponent
/// `e != 0` survives modulo `2^{v2(e)+1}`, and otherwise the d-exponent
/// `a n^-k` survives modulo `2^{v2(a)+1}`. Remaining words lie in the kernel
/// of the projection; they are tested for triviality with the matrix model
/// and, if nontrivial, separated by trying `m = 1, 2, ..., m_cap`.
pub fn separate(w: &Word, n: i64, m_cap: u32) -> Result<Certificate, SeparationError> {
    if n % 2 == 0 {
        return Err(SeparationError::EvenN(n));
    }
    if m_cap == 0 || m_cap > MAX_EVAL_M {
        return Err(SeparationError::BadM {
            m: m_cap,
            max: MAX_EVAL_M,
        });
    }
    let beta = bs_project(w, n)?;
    if !beta.is_identity() {
        let v = if beta.e != 0 {
            u64::from(beta.e.unsigned_abs().trailing_zeros())
        } else {
            v2(&beta.a)
        };
        if v >= u64::from(m_cap) {
            return Ok(Certificate {
                route: Some(Route::BsPart),
                ..Certificate::new(w, n, Verdict::Inconclusive)
            });
        }
        let m = v as u32 + 1;
        let p = eval_in_p(w, n, m)?;
        if p.is_identity() {
            return Err(SeparationError::Unverified(format!(
                "image of {w} in BS(1, {n}) is {beta} but its image in P({n}, {m}) is trivial"
            )));
        }
        return Ok(Certificate::separated(w, n, m, Route::BsPart, p));
    }
    if matrix_model::is_trivial_in_h(w, n)? {
        return Ok(Certificate::new(w, n, Verdict::Trivial));
    }
    for m in 1..=m_cap {
        let p = eval_in_p(w, n, m)?;
        if !p.is_identity() {
            return Ok(Certificate::separated(w, n, m, Route::NcSearch, p));
        }
    }
    Ok(Certificate {
        route: Some(Route::NcSearch),
        ..Certificate::new(w, n, Verdict::Inconclusive)
    })
}

/// Whether `2^{m+2}` divides `n^{2^m} - 1`.
pub fn check_divisibility(n: i64, m: u32) -> Result<bool, SeparationError> {
    if n % 2 == 0 {
        return Err(SeparationError::EvenN(n));
    }
    if m == 0 || m > 62 {
        return Err(SeparationError::BadM { m, max: 62 });
    }
    let modulus = BigInt::one() << (m + 2);
    let exp = BigInt::one() << m;
    Ok(BigInt::from(n).modpow(&exp, &modulus).is_one())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn bs(a: i64, k: u64, e: i64, n: i64) -> BsElem {
        BsElem::new(BigInt::from(a), k, e, n).unwrap()
    }

    #[test]
    fn projection_examples() {
        assert!(bs_project(&w("c d^-1"), 3).unwrap().is_identity());
        assert_eq!(bs_project(&w("t^-1 d t"), 3).unwrap(), bs(1, 1, 0, 3));
        assert!(bs_project(&w("t d t^-1 d^-3"), 3).unwrap().is_identity());
        assert!(bs_project(&w("b4 b-2"), 3).unwrap().is_identity());
        assert_eq!(bs_project(&w("t^2 d t^-1"), 3).unwrap(), bs(9, 0, 1, 3));
        assert_eq!(bs_project(&w("d"), 0), Err(SeparationError::ZeroN));
    }

    #[test]
    fn normalization() {
        assert_eq!(bs(9, 2, 0, 3), bs(1, 0, 0, 3));
        assert_eq!(bs(6, 2, 0, 3), bs(2, 1, 0, 3));
        assert_eq!(bs(0, 5, 1, 3), bs(0, 0, 1, 3));
        assert_eq!(bs(5, 3, 0, -1), bs(-5, 0, 0, -1));
        assert_eq!(bs(5, 3, 0, 1), bs(5, 0, 0, 1));
    }

    #[test]
    fn separation_examples() {
        let c = separate(&w("d"), 3, 12).unwrap();
        assert_eq!(
            (c.verdict, c.m, c.route),
            (Verdict::Separated, Some(1), Some(Route::BsPart))
        );
        let c = separate(&w("d c^-1"), 3, 12).unwrap();
        assert_eq!(
            (c.verdict, c.m, c.route),
            (Verdict::Separated, Some(1), Some(Route::NcSearch))
        );
        assert!(c.verify(&w("d c^-1")).unwrap());
        let c = separate(&w("t c t^-1 c^-3"), 3, 12).unwrap();
        assert_eq!((c.verdict, c.m), (Verdict::Trivial, None));
        let c = separate(&w("t^4"), 3, 12).unwrap();
        assert_eq!((c.verdict, c.m), (Verdict::Separated, Some(3)));
        let c = separate(&w("t^4"), 3, 2).unwrap();
        assert_eq!(c.verdict, Verdict::Inconclusive);
        assert_eq!(separate(&w("d"), 4, 12), Err(SeparationError::EvenN(4)));
    }

    #[test]
    fn divisibility() {
        assert!(check_divisibility(3, 1).unwrap());
        assert!(check_divisibility(5, 2).unwrap());
        assert!(check_divisibility(-7, 3).unwrap());
        assert_eq!(check_divisibility(2, 1), Err(SeparationError::EvenN(2)));
    }
}
