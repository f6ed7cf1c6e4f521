//! Laurent polynomials over F2.
//!
//! A polynomial is stored as the sorted list of exponents whose coefficient
//! is 1. Exponents are arbitrary-precision integers because conjugating by
//! powers of the stable letter scales them by `n^j`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LaurentError {
    #[error("substitution t -> t^0 is not injective")]
    ZeroSubstitution,
    #[error("cannot parse Laurent polynomial {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

/// An element of F2[t, 1/t].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LaurentPoly {
    // strictly increasing
    exps: Vec<BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self { exps: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(BigInt::zero())
    }

    /// `t^k`
    pub fn monomial(k: impl Into<BigInt>) -> Self {
        Self {
            exps: vec![k.into()],
        }
    }

    /// `1 + t`
    pub fn one_plus_t() -> Self {
        Self::from_exponents([0, 1])
    }

    /// Builds a polynomial from exponents; repeated exponents cancel in pairs.
    pub fn from_exponents<I, E>(exps: I) -> Self
    where
        I: IntoIterator<Item = E>,
        E: Into<BigInt>,
    {
        let mut v: Vec<BigInt> = exps.into_iter().map(Into::into).collect();
        v.sort();
        Self {
            exps: cancel_pairs(v),
        }
    }

    pub fn exponents(&self) -> &[BigInt] {
        &self.exps
    }

    pub fn is_zero(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.exps.len() == 1 && self.exps[0].is_zero()
    }

    pub fn num_terms(&self) -> usize {
        self.exps.len()
    }

    pub fn add(&self, other: &Self) -> Self {
        // symmetric difference of two sorted lists
        let (a, b) = (&self.exps, &other.exps);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Self { exps: out }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.exps.len() == 1 {
            return other.shift(&self.exps[0]);
        }
        if other.exps.len() == 1 {
            return self.shift(&other.exps[0]);
        }
        let mut v = Vec::with_capacity(self.exps.len() * other.exps.len());
        for a in &self.exps {
            for b in &other.exps {
                v.push(a + b);
            }
        }
        v.sort();
        Self {
            exps: cancel_pairs(v),
        }
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return self.clone();
        }
        Self {
            exps: self.exps.iter().map(|e| e + k).collect(),
        }
    }

    /// The ring endomorphism `t -> t^k`.
    pub fn subst_pow(&self, k: &BigInt) -> Result<Self, LaurentError> {
        if k.is_zero() {
            return Err(LaurentError::ZeroSubstitution);
        }
        if k.is_one() {
            return Ok(self.clone());
        }
        let mut v: Vec<BigInt> = self.exps.iter().map(|e| e * k).collect();
        if k < &BigInt::zero() {
            v.reverse();
        }
        Ok(Self { exps: v })
    }

    /// Returns `k` when the polynomial is the unit `t^k`.
    pub fn as_unit_monomial(&self) -> Option<BigInt> {
        match self.exps.as_slice() {
            [k] => Some(k.clone()),
            _ => None,
        }
    }
}

fn cancel_pairs(sorted: Vec<BigInt>) -> Vec<BigInt> {
    let mut out: Vec<BigInt> = Vec::with_capacity(sorted.len());
    for e in sorted {
        if out.last() == Some(&e) {
            out.pop();
        } else {
            out.push(e);
        }
    }
    out
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exps.is_empty() {
            return f.write_str("0");
        }
        for (i, e) in self.exps.iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            if e.is_zero() {
                f.write_str("1")?;
            } else if e.is_one() {
                f.write_str("t")?;
            } else {
                write!(f, "t^{e}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for LaurentPoly {
    type Err = LaurentError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |reason: &str| LaurentError::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err("empty input"));
        }
        if compact == "0" {
            return Ok(Self::zero());
        }
        let mut exps = Vec::new();
        for term in compact.split('+') {
            let e = match term {
                "" => return Err(err("empty term")),
                "1" => BigInt::zero(),
                "t" => BigInt::one(),
                _ => {
                    let rest = term
                        .strip_prefix("t^")
                        .ok_or_else(|| err(&format!("bad term {term:?}")))?;
                    let rest = rest
                        .strip_prefix('(')
                        .and_then(|r| r.strip_suffix(')'))
                        .unwrap_or(rest);
                    rest.parse::<BigInt>()
                        .map_err(|_| err(&format!("bad exponent in {term:?}")))?
                }
            };
            exps.push(e);
        }
        Ok(Self::from_exponents(exps))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn addition_examples() {
        assert_eq!(p("1+t").add(&p("t+t^2")), p("1+t^2"));
        assert_eq!(p("1+t^-1").add(&LaurentPoly::zero()), p("1+t^-1"));
        assert!(p("1+t^-1").add(&p("1+t^-1")).is_zero());
    }

    #[test]
    fn multiplication_examples() {
        assert_eq!(p("1+t").mul(&p("1+t")), p("1+t^2"));
        assert_eq!(p("1+t").mul(&p("1+t+t^2")), p("1+t^3"));
        assert_eq!(p("t^-1").mul(&p("t")), LaurentPoly::one());
    }

    #[test]
    fn substitution_examples() {
        let two = BigInt::from(2);
        assert_eq!(p("1+t^-1").subst_pow(&two).unwrap(), p("1+t^-2"));
        assert_eq!(p("t").subst_pow(&BigInt::from(-1)).unwrap(), p("t^-1"));
        assert_eq!(
            p("t").subst_pow(&BigInt::zero()),
            Err(LaurentError::ZeroSubstitution)
        );
    }

    #[test]
    fn unit_detection() {
        assert_eq!(p("t^-3").as_unit_monomial(), Some(BigInt::from(-3)));
        assert_eq!(p("1+t").as_unit_monomial(), None);
        assert_eq!(p("1").as_unit_monomial(), Some(BigInt::zero()));
        assert_eq!(LaurentPoly::zero().as_unit_monomial(), None);
    }

    #[test]
    fn text_form() {
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!(p("t^2 + 1 + t").to_string(), "1+t+t^2");
        assert_eq!(p("t^-1+1").to_string(), "t^-1+1");
        assert_eq!(p("t^(-4)"), LaurentPoly::monomial(-4));
        assert_eq!(p("t+t"), LaurentPoly::zero());
        assert!("t^".parse::<LaurentPoly>().is_err());
        assert!("x".parse::<LaurentPoly>().is_err());
        assert!("1++t".parse::<LaurentPoly>().is_err());
    }
}
