use hnn_core::mat3::Mat3;
use hnn_core::matrix_model::{
    d_matrix, verify_identity_suite_with, CheckResult, Model, Outcome, SuiteReport,
};
use hnn_core::quotients::{analyze_nc, build_tau, NcGroup, MAX_TABLE_M};
use hnn_core::separation::{check_divisibility, separate, Verdict};
use hnn_core::word::Word;
use serde::Serialize;

use crate::config::RunConfig;

const TAU_NS: [i64; 2] = [3, 5];
const DIVISIBILITY_NS: [i64; 6] = [-3, 1, 3, 5, 7, 15];

#[derive(Debug, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Serialize)]
pub struct Report<'a> {
    pub version: &'static str,
    pub config: &'a RunConfig,
    pub checks: Vec<CheckResult>,
    pub summary: Summary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<u64>,
}

impl Report<'_> {
    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }
}

pub fn model(cfg: &RunConfig) -> Result<Model, String> {
    match &cfg.c_matrix {
        None => Ok(Model::standard()),
        Some(s) => {
            let c: Mat3 = s.parse().map_err(|e| format!("invalid c matrix: {e}"))?;
            Ok(Model::with_generators(c, d_matrix()))
        }
    }
}

pub fn run(cfg: &RunConfig, timestamp: Option<u64>) -> Result<Report<'_>, String> {
    let model = model(cfg)?;
    let mut suite = verify_identity_suite_with(&model, cfg.max_index).map_err(|e| e.to_string())?;
    for &size in &cfg.quotients {
        suite.checks.extend(quotient_checks(size, cfg.enum_cap));
    }
    suite.checks.push(divisibility_check(cfg.m_cap));
    suite.checks.extend(separation_checks(cfg.m_cap));
    suite.sort();
    Ok(report(cfg, suite, timestamp))
}

fn report(cfg: &RunConfig, suite: SuiteReport, timestamp: Option<u64>) -> Report<'_> {
    let passed = suite.checks.iter().filter(|c| c.passed()).count();
    Report {
        version: env!("CARGO_PKG_VERSION"),
        config: cfg,
        summary: Summary {
            total: suite.checks.len(),
            passed,
            failed: suite.checks.len() - passed,
        },
        checks: suite.checks,
        timestamp,
    }
}

fn quotient_checks(size: usize, cap: usize) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let half = size / 2;
    let expected = size + half + 1;
    let report = analyze_nc(size, cap).map_err(|e| e.to_string());
    let order_outcome = || -> Outcome {
        let order = report.as_ref().map_err(|e| e.clone())?.structure.order;
        Ok((order != 1usize.checked_shl(expected as u32).unwrap_or(0))
            .then(|| format!("order {order}, expected 2^{expected}")))
    };
    let class_outcome = || -> Outcome {
        let class = report
            .as_ref()
            .map_err(|e| e.clone())?
            .structure
            .nilpotency_class;
        Ok((class != Some(2)).then(|| format!("nilpotency class {class:?}")))
    };
    out.push(CheckResult::from_outcome(
        format!("quotient.nc-order-n{size}"),
        format!("|Nc({size})| = 2^(N + N/2 + 1)"),
        order_outcome(),
    ));
    out.push(CheckResult::from_outcome(
        format!("quotient.nc-class-n{size}"),
        format!("Nc({size}) is nilpotent of class 2"),
        class_outcome(),
    ));
    out.push(CheckResult::from_outcome(
        format!("quotient.sigma-n{size}"),
        format!("sigma respects the relations of Nc({size}) and sigma^N = 1"),
        NcGroup::new(size)
            .and_then(|g| g.validate_sigma())
            .map(|()| None)
            .map_err(Into::into),
    ));
    if size.is_power_of_two() {
        let m = size.trailing_zeros();
        if (1..=MAX_TABLE_M).contains(&m) {
            for n in TAU_NS {
                out.push(CheckResult::from_outcome(
                    format!("quotient.tau-n{n}-m{m}"),
                    format!("tau_{n} is an endomorphism of Q_{size} with tau^{size} = 1"),
                    build_tau(n, m).map(|_| None).map_err(Into::into),
                ));
            }
        }
    }
    out
}

fn divisibility_check(m_cap: u32) -> CheckResult {
    let outcome = || -> Outcome {
        for n in DIVISIBILITY_NS {
            for m in 1..=m_cap.min(62) {
                if !check_divisibility(n, m)? {
                    return Ok(Some(format!("n = {n}, m = {m}")));
                }
            }
        }
        Ok(None)
    };
    CheckResult::from_outcome(
        "separation.divisibility",
        "2^(m+2) divides n^(2^m) - 1 for odd n",
        outcome(),
    )
}

fn separation_checks(m_cap: u32) -> Vec<CheckResult> {
    let cases: [(&str, &str, i64, Verdict); 4] = [
        ("separation.d", "d", 3, Verdict::Separated),
        ("separation.relator", "t c t^-1 c^-3", 3, Verdict::Trivial),
        ("separation.t", "t^4", 5, Verdict::Separated),
        (
            "separation.b0-conjugate",
            "t b0 t^-1 b0^-1",
            3,
            Verdict::Separated,
        ),
    ];
    cases
        .iter()
        .map(|&(id, word, n, want)| {
            let outcome = || -> Outcome {
                let w: Word = word.parse()?;
                let cert = separate(&w, n, m_cap)?;
                if cert.verdict != want {
                    return Ok(Some(format!("verdict {} for {word}", cert.verdict)));
                }
                Ok((!cert.verify(&w)?).then(|| format!("certificate for {word} does not verify")))
            };
            CheckResult::from_outcome(id, format!("{word} in H_{n} is {want}"), outcome())
        })
        .collect()
}
