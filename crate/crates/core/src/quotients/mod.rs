//! The finite 2-group quotients `Q_N = G / <<d^N>>` and
//! `P_{n,m} = H_n / <<d^{2^m}, t^{2^m}>>`, built from their presentations.

pub mod bits;
mod nc;
mod p;
mod q;

use serde::Serialize;
use thiserror::Error;

use crate::group::{self, GroupError, StructureReport};

pub use nc::{NcElem, NcGroup};
pub use p::{build_tau, eval_in_p, PElem, PGroup, PImage, TauTable, MAX_EVAL_M, MAX_TABLE_M};
pub use q::{eval_in_q, QElem, QGroup};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuotientError {
    #[error("N must be positive")]
    ZeroSize,
    #[error("n must be nonzero")]
    ZeroN,
    #[error("n must be odd, got {0}")]
    EvenN(i64),
    #[error("m must lie in 1..={max}, got {m}")]
    BadM { m: u32, max: u32 },
    #[error("parameter mismatch: {0}")]
    Mismatch(String),
    #[error("word contains the stable letter t; it has no image in Q_N")]
    ContainsStableLetter,
    #[error("exponent overflow")]
    Overflow,
    #[error("sigma validation failed for N = {size}: {reason}")]
    InvalidSigma { size: usize, reason: String },
    #[error("tau validation failed for n = {n}, m = {m}: {reason}")]
    InvalidTau { n: i64, m: u32, reason: String },
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// A [`StructureReport`] together with the parameters of the group it
/// describes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuotientReport {
    /// `"Nc"`, `"Q"` or `"P"`.
    pub group: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    #[serde(rename = "N")]
    pub size: usize,
    #[serde(flatten)]
    pub structure: StructureReport,
}

pub fn analyze_nc(size: usize, cap: usize) -> Result<QuotientReport, QuotientError> {
    let g = NcGroup::new(size)?;
    Ok(QuotientReport {
        group: "Nc",
        n: None,
        m: None,
        size,
        structure: group::analyze(&g, &g.generators(), cap)?,
    })
}

pub fn analyze_q(size: usize, cap: usize) -> Result<QuotientReport, QuotientError> {
    let g = QGroup::new(size)?;
    Ok(QuotientReport {
        group: "Q",
        n: None,
        m: None,
        size,
        structure: group::analyze(&g, &g.generators(), cap)?,
    })
}

pub fn analyze_p(n: i64, m: u32, cap: usize) -> Result<QuotientReport, QuotientError> {
    let g = PGroup::new(n, m)?;
    Ok(QuotientReport {
        group: "P",
        n: Some(n),
        m: Some(m),
        size: g.size(),
        structure: group::analyze(&g, &g.generators(), cap)?,
    })
}
