//! The faithful matrix model of `G = <c, d>` inside GL(3, F2[t, 1/t]) and the
//! word problem in the ascending HNN extension `H_n` of `G` by `t -> t^n`.

mod enumerate;
mod suite;

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Pow};
use thiserror::Error;

use crate::mat3::{Mat3, MatError};
use crate::word::{Sym, Word};

pub use enumerate::{enumerate_subgroup, EnumerateError, FiniteGroupTable, MatrixGroup};
pub use suite::{
    verify_identity_suite, verify_identity_suite_with, CheckResult, CheckStatus, Outcome,
    SuiteReport,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("word contains the stable letter t; it does not lie in G")]
    ContainsStableLetter,
    #[error("n must be nonzero")]
    ZeroN,
    #[error("max index must be at least 2, got {0}")]
    MaxIndexTooSmall(usize),
    #[error(transparent)]
    Matrix(#[from] MatError),
}

/// `c = [[t, 1+t, 1+t], [1+t, t, 1+t], [1+t, 1+t, t]]`
pub fn c_matrix() -> Mat3 {
    Mat3::from_strs([
        ["t", "1+t", "1+t"],
        ["1+t", "t", "1+t"],
        ["1+t", "1+t", "t"],
    ])
}

/// `d = diag(t, 1, 1)`
pub fn d_matrix() -> Mat3 {
    Mat3::from_strs([["t", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]])
}

/// Conjugator taking `b_0` and `d^-1` to matrices over F2[1/t].
pub fn x_conjugator() -> Mat3 {
    Mat3::from_strs([
        ["0", "0", "1"],
        ["1+t^-1", "1+t", "1+t"],
        ["1+t^-1", "1+t^-1", "t^-1"],
    ])
}

/// Expected image of `b_0` under conjugation by [`x_conjugator`].
pub fn x_image_of_b0() -> Mat3 {
    Mat3::from_strs([["0", "0", "1"], ["1", "0", "1"], ["0", "1", "1"]])
}

/// Expected image of `d^-1` under conjugation by [`x_conjugator`].
pub fn x_image_of_d_inv() -> Mat3 {
    Mat3::from_strs([["1", "0", "0"], ["1", "1+t^-1", "1"], ["1", "t^-1", "0"]])
}

/// `(1 + t) Y` where `Y` conjugates `b_0` to `[d^-1, b_0]` and fixes `d`.
/// `Y` itself has `(1+t)^-1` in its last row; clearing the scalar keeps every
/// entry in F2[t, 1/t] and leaves conjugation unchanged.
pub fn y_conjugator_cleared() -> Mat3 {
    Mat3::from_strs([
        ["1+t", "0", "0"],
        ["0", "1+t", "t^-1+1"],
        ["0", "t", "t^-1"],
    ])
}

/// A pair of generating matrices standing in for `c` and `d`.
///
/// The standard model uses [`c_matrix`] and [`d_matrix`]; other pairs exist so
/// the identity suite can be run against perturbed generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Model {
    c: Mat3,
    d: Mat3,
}

impl Default for Model {
    fn default() -> Self {
        Self::standard()
    }
}

impl Model {
    pub fn standard() -> Self {
        Self {
            c: c_matrix(),
            d: d_matrix(),
        }
    }

    pub fn with_generators(c: Mat3, d: Mat3) -> Self {
        Self { c, d }
    }

    pub fn c(&self) -> &Mat3 {
        &self.c
    }

    pub fn d(&self) -> &Mat3 {
        &self.d
    }

    fn generator(&self, sym: Sym) -> &Mat3 {
        match sym {
            Sym::C => &self.c,
            Sym::D => &self.d,
            Sym::T | Sym::B(_) => unreachable!("only c and d are matrix generators"),
        }
    }

    /// Evaluates a word without stable letters; `b_i` letters are expanded.
    pub fn eval_in_g(&self, w: &Word) -> Result<Mat3, ModelError> {
        if w.has_t() {
            return Err(ModelError::ContainsStableLetter);
        }
        let w = w.expand_b();
        let mut acc = Mat3::identity();
        for l in w.letters() {
            acc = acc.mul(&self.generator(l.sym).pow(l.exp)?);
        }
        Ok(acc)
    }

    pub fn b_matrix(&self, i: i64) -> Result<Mat3, ModelError> {
        self.eval_in_g(&Word::b(i))
    }

    /// `x_0 = b_0`, `x_{i+1} = [d^-1, x_i]`.
    pub fn x_matrix(&self, i: usize) -> Result<Mat3, ModelError> {
        let d_inv = self.d.inverse()?;
        let mut x = self.b_matrix(0)?;
        for _ in 0..i {
            x = Mat3::commutator(&d_inv, &x)?;
        }
        Ok(x)
    }

    /// Decides `w = 1` in `H_n`.
    ///
    /// A word with nonzero t-exponent sum is never trivial. Otherwise the word
    /// is conjugated by `t^J` so that every prefix has t-offset `j >= 0`; a
    /// generator at offset `j` then equals `rho_{n^j}` of itself, and the
    /// whole product lands in `G`, where the matrix model is faithful.
    pub fn is_trivial_in_h(&self, w: &Word, n: i64) -> Result<bool, ModelError> {
        Ok(self.eval_in_h(w, n)?.is_some_and(|m| m.is_identity()))
    }

    /// Matrix of `t^J w t^-J` for `J = max_negative_offset(w)`, or `None`
    /// when the t-exponent sum of `w` is nonzero.
    pub fn eval_in_h(&self, w: &Word, n: i64) -> Result<Option<Mat3>, ModelError> {
        if n == 0 {
            return Err(ModelError::ZeroN);
        }
        let w = w.expand_b();
        if w.t_exponent_sum() != 0 {
            return Ok(None);
        }
        let base = BigInt::from(n);
        let mut offset = w.max_negative_offset();
        let mut acc = Mat3::identity();
        let mut segment = Mat3::identity();
        let flush = |acc: &mut Mat3, segment: &mut Mat3, offset: u64| -> Result<(), ModelError> {
            if !segment.is_identity() {
                let k: BigInt = if offset == 0 {
                    BigInt::one()
                } else {
                    Pow::pow(&base, offset)
                };
                *acc = acc.mul(&segment.rho(&k)?);
                *segment = Mat3::identity();
            }
            Ok(())
        };
        for l in w.letters() {
            match l.sym {
                Sym::T => {
                    flush(&mut acc, &mut segment, offset)?;
                    offset = offset
                        .checked_add_signed(l.exp)
                        .expect("offsets stay nonnegative after conjugation");
                }
                s => segment = segment.mul(&self.generator(s).pow(l.exp)?),
            }
        }
        flush(&mut acc, &mut segment, offset)?;
        Ok(Some(acc))
    }
}

fn standard() -> &'static Model {
    static MODEL: OnceLock<Model> = OnceLock::new();
    MODEL.get_or_init(Model::standard)
}

/// [`Model::eval_in_g`] on the standard generators.
pub fn eval_in_g(w: &Word) -> Result<Mat3, ModelError> {
    standard().eval_in_g(w)
}

/// [`Model::is_trivial_in_h`] on the standard generators.
pub fn is_trivial_in_h(w: &Word, n: i64) -> Result<bool, ModelError> {
    standard().is_trivial_in_h(w, n)
}

pub fn b_matrix(i: i64) -> Mat3 {
    standard()
        .b_matrix(i)
        .expect("standard generators are invertible")
}

pub fn x_matrix(i: usize) -> Mat3 {
    standard()
        .x_matrix(i)
        .expect("standard generators are invertible")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn b_matrices() {
        let b0 = b_matrix(0);
        assert!(b0.pow(4).unwrap().is_identity());
        assert!(!b0.pow(2).unwrap().is_identity());
        assert_eq!(b_matrix(2).pow(2).unwrap(), b_matrix(-2).pow(2).unwrap());
        assert_eq!(eval_in_g(&w("d c^-1")).unwrap(), b0);
    }

    #[test]
    fn x_matrices() {
        assert_eq!(x_matrix(0), b_matrix(0));
        assert!(x_matrix(1).pow(4).unwrap().is_identity());
        let x2sq = x_matrix(2).pow(2).unwrap();
        let d_inv = d_matrix().inverse().unwrap();
        assert!(Mat3::commutator(&x2sq, &d_inv).unwrap().is_identity());
    }

    #[test]
    fn eval_examples() {
        assert!(eval_in_g(&Word::empty()).unwrap().is_identity());
        assert!(eval_in_g(&w("[b1, b2] b1^2 b1^2 b2^2"))
            .unwrap()
            .is_identity());
        assert_eq!(eval_in_g(&w("t c")), Err(ModelError::ContainsStableLetter));
    }

    #[test]
    fn word_problem_in_h() {
        assert!(is_trivial_in_h(&w("t d t^-1 d^-3"), 3).unwrap());
        assert!(is_trivial_in_h(&w("t c t^-1 c^-3"), 3).unwrap());
        assert!(!is_trivial_in_h(&w("t^-1 d t d^-1"), 2).unwrap());
        assert!(!is_trivial_in_h(&w("c"), 3).unwrap());
        assert!(is_trivial_in_h(&w("t^-1 d^2 t d^-1"), 2).unwrap());
        assert!(is_trivial_in_h(&w("t^-2 d^9 t^2 d^-1"), 3).unwrap());
        assert!(is_trivial_in_h(&w("t d t^-1 d"), -1).unwrap());
        assert_eq!(is_trivial_in_h(&w("c"), 0), Err(ModelError::ZeroN));
    }

    #[test]
    fn conjugated_evaluation_witness() {
        // t^-1 d t d^-1 at n = 2 becomes d rho_2(d^-1) = diag(t^-1, 1, 1)
        let m = standard()
            .eval_in_h(&w("t^-1 d t d^-1"), 2)
            .unwrap()
            .unwrap();
        assert_eq!(m, d_matrix().inverse().unwrap());
    }
}
