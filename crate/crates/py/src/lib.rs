//! Python module `hnn`.

use hnn_core::group::DEFAULT_ENUM_CAP;
use hnn_core::matrix_model::{self, verify_identity_suite};
use hnn_core::quotients::{analyze_nc, analyze_p, analyze_q, eval_in_p, eval_in_q};
use hnn_core::separation::{self, DEFAULT_M_CAP};
use hnn_core::word::Word;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde::Serialize;

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn word(s: &str) -> PyResult<Word> {
    s.parse().map_err(err)
}

/// Converts through JSON so the Python side sees plain dicts and lists.
fn to_py<'py, T: Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(err)?;
    py.import("json")?.call_method1("loads", (text,))
}

/// Normal form of a word.
#[pyfunction]
fn parse_word(s: &str) -> PyResult<String> {
    Ok(word(s)?.to_string())
}

/// Matrix of a t-free word, rows separated by `; `.
#[pyfunction]
fn eval_g(s: &str) -> PyResult<String> {
    Ok(matrix_model::eval_in_g(&word(s)?).map_err(err)?.to_string())
}

#[pyfunction]
fn is_trivial_in_h(s: &str, n: i64) -> PyResult<bool> {
    matrix_model::is_trivial_in_h(&word(s)?, n).map_err(err)
}

#[pyfunction]
fn eval_q<'py>(py: Python<'py>, s: &str, size: usize) -> PyResult<Bound<'py, PyAny>> {
    let x = eval_in_q(&word(s)?, size).map_err(err)?;
    let value = serde_json::json!({
        "eps": x.u().eps().to_string(),
        "z": x.u().z().to_string(),
        "d_exp": x.a(),
        "identity": x.is_identity(),
    });
    to_py(py, &value)
}

#[pyfunction]
fn eval_p<'py>(py: Python<'py>, s: &str, n: i64, m: u32) -> PyResult<Bound<'py, PyAny>> {
    let x = eval_in_p(&word(s)?, n, m).map_err(err)?;
    let mut value = serde_json::to_value(x.image()).map_err(err)?;
    value["identity"] = x.is_identity().into();
    to_py(py, &value)
}

/// Separation certificate as a dict.
#[pyfunction]
#[pyo3(signature = (s, n, m_cap = DEFAULT_M_CAP))]
fn separate<'py>(py: Python<'py>, s: &str, n: i64, m_cap: u32) -> PyResult<Bound<'py, PyAny>> {
    let cert = separation::separate(&word(s)?, n, m_cap).map_err(err)?;
    to_py(py, &cert)
}

#[pyfunction]
fn check_divisibility(n: i64, m: u32) -> PyResult<bool> {
    separation::check_divisibility(n, m).map_err(err)
}

/// Identity suite report: `{"checks": [...]}`.
#[pyfunction]
#[pyo3(signature = (max_index = 6))]
fn verify(py: Python<'_>, max_index: usize) -> PyResult<Bound<'_, PyAny>> {
    let mut report = verify_identity_suite(max_index).map_err(err)?;
    report.sort();
    to_py(py, &report)
}

/// Structure of `P_{n,m}`.
#[pyfunction]
#[pyo3(signature = (n, m, cap = DEFAULT_ENUM_CAP))]
fn quotient_p(py: Python<'_>, n: i64, m: u32, cap: usize) -> PyResult<Bound<'_, PyAny>> {
    to_py(py, &analyze_p(n, m, cap).map_err(err)?)
}

/// Structure of `Q_N`.
#[pyfunction]
#[pyo3(signature = (size, cap = DEFAULT_ENUM_CAP))]
fn quotient_q(py: Python<'_>, size: usize, cap: usize) -> PyResult<Bound<'_, PyAny>> {
    to_py(py, &analyze_q(size, cap).map_err(err)?)
}

/// Structure of `Nc(N)`.
#[pyfunction]
#[pyo3(signature = (size, cap = DEFAULT_ENUM_CAP))]
fn quotient_nc(py: Python<'_>, size: usize, cap: usize) -> PyResult<Bound<'_, PyAny>> {
    to_py(py, &analyze_nc(size, cap).map_err(err)?)
}

#[pymodule]
#[pyo3(name = "hnn")]
fn hnn_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(parse_word, m)?)?;
    m.add_function(wrap_pyfunction!(eval_g, m)?)?;
    m.add_function(wrap_pyfunction!(is_trivial_in_h, m)?)?;
    m.add_function(wrap_pyfunction!(eval_q, m)?)?;
    m.add_function(wrap_pyfunction!(eval_p, m)?)?;
    m.add_function(wrap_pyfunction!(separate, m)?)?;
    m.add_function(wrap_pyfunction!(check_divisibility, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(quotient_p, m)?)?;
    m.add_function(wrap_pyfunction!(quotient_q, m)?)?;
    m.add_function(wrap_pyfunction!(quotient_nc, m)?)?;
    Ok(())
}
