//! 3x3 matrices over F2[t, 1/t].

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use thiserror::Error;

use crate::laurent::{LaurentError, LaurentPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatError {
    #[error("determinant not a unit: det = {det}")]
    NotUnit { det: LaurentPoly },
    #[error(transparent)]
    Laurent(#[from] LaurentError),
    #[error("cannot parse matrix {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat3 {
    entries: [[LaurentPoly; 3]; 3],
}

impl Mat3 {
    pub fn new(entries: [[LaurentPoly; 3]; 3]) -> Self {
        Self { entries }
    }

    /// Builds a matrix from a 3x3 grid of polynomial strings.
    ///
    /// Panics on malformed input; meant for fixed constants and tests.
    pub fn from_strs(rows: [[&str; 3]; 3]) -> Self {
        Self {
            entries: rows.map(|r| r.map(|s| s.parse().expect("valid polynomial literal"))),
        }
    }

    pub fn identity() -> Self {
        Self::diag(LaurentPoly::one(), LaurentPoly::one(), LaurentPoly::one())
    }

    pub fn diag(a: LaurentPoly, b: LaurentPoly, c: LaurentPoly) -> Self {
        let z = LaurentPoly::zero;
        Self {
            entries: [[a, z(), z()], [z(), b, z()], [z(), z(), c]],
        }
    }

    pub fn entry(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.entries[i][j]
    }

    pub fn entries(&self) -> &[[LaurentPoly; 3]; 3] {
        &self.entries
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let a = &self.entries;
        let b = &rhs.entries;
        let entries = std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                (0..3).fold(LaurentPoly::zero(), |acc, k| {
                    acc.add(&a[i][k].mul(&b[k][j]))
                })
            })
        });
        Self { entries }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self {
            entries: std::array::from_fn(|i| {
                std::array::from_fn(|j| self.entries[i][j].add(&rhs.entries[i][j]))
            }),
        }
    }

    pub fn scale(&self, s: &LaurentPoly) -> Self {
        Self {
            entries: self.entries.clone().map(|r| r.map(|x| x.mul(s))),
        }
    }

    /// Cofactor expansion; every sign is + in characteristic 2.
    pub fn det(&self) -> LaurentPoly {
        let m = &self.entries;
        let minor = |r1: usize, r2: usize, c1: usize, c2: usize| {
            m[r1][c1].mul(&m[r2][c2]).add(&m[r1][c2].mul(&m[r2][c1]))
        };
        m[0][0]
            .mul(&minor(1, 2, 1, 2))
            .add(&m[0][1].mul(&minor(1, 2, 0, 2)))
            .add(&m[0][2].mul(&minor(1, 2, 0, 1)))
    }

    /// Transposed cofactor matrix, so that `A * adj(A) = det(A) I`.
    pub fn adjugate(&self) -> Self {
        let m = &self.entries;
        let cof = |i: usize, j: usize| {
            let rows: Vec<usize> = (0..3).filter(|&r| r != i).collect();
            let cols: Vec<usize> = (0..3).filter(|&c| c != j).collect();
            m[rows[0]][cols[0]]
                .mul(&m[rows[1]][cols[1]])
                .add(&m[rows[0]][cols[1]].mul(&m[rows[1]][cols[0]]))
        };
        Self {
            entries: std::array::from_fn(|i| std::array::from_fn(|j| cof(j, i))),
        }
    }

    pub fn inverse(&self) -> Result<Self, MatError> {
        let det = self.det();
        let k = det
            .as_unit_monomial()
            .ok_or_else(|| MatError::NotUnit { det: det.clone() })?;
        Ok(self.adjugate().scale(&LaurentPoly::monomial(-k)))
    }

    /// Entrywise substitution `t -> t^k`.
    pub fn rho(&self, k: &BigInt) -> Result<Self, MatError> {
        let mut entries = self.entries.clone();
        for row in entries.iter_mut() {
            for x in row.iter_mut() {
                *x = x.subst_pow(k)?;
            }
        }
        Ok(Self { entries })
    }

    /// Integer power; negative exponents need a unit determinant.
    pub fn pow(&self, k: i64) -> Result<Self, MatError> {
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Self::identity();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq);
            }
        }
        Ok(acc)
    }

    /// `[a, b] = a^-1 b^-1 a b`
    pub fn commutator(a: &Self, b: &Self) -> Result<Self, MatError> {
        Ok(a.inverse()?.mul(&b.inverse()?).mul(a).mul(b))
    }
}

impl fmt::Display for Mat3 {
    /// Rows separated by `; `, entries within a row by `, `.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{}, {}, {}", row[0], row[1], row[2])?;
        }
        Ok(())
    }
}

impl FromStr for Mat3 {
    type Err = MatError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |reason: String| MatError::Parse {
            input: s.to_string(),
            reason,
        };
        let rows: Vec<&str> = s.split(';').collect();
        if rows.len() != 3 {
            return Err(err(format!("expected 3 rows, found {}", rows.len())));
        }
        let mut out: [[LaurentPoly; 3]; 3] = Default::default();
        for (i, row) in rows.iter().enumerate() {
            let cells: Vec<&str> = row.split(',').collect();
            if cells.len() != 3 {
                return Err(err(format!(
                    "row {i}: expected 3 entries, found {}",
                    cells.len()
                )));
            }
            for (j, cell) in cells.iter().enumerate() {
                out[i][j] = cell.parse()?;
            }
        }
        Ok(Self { entries: out })
    }
}
