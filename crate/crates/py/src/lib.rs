//! Python bindings for qdiff.
//!
//! Scalar and parser helpers are exposed directly. The report-producing
//! commands go through the CLI and come back as parsed JSON dictionaries.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use qdiff::cli;
use qdiff::parse;
use qdiff::scalars::{self, Mode};

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_mode(mode: &str) -> PyResult<Mode> {
    mode.parse::<Mode>().map_err(value_error)
}

/// Gaussian binomial `[n k]_q` rendered as text, in `generic` or `root:N` mode.
#[pyfunction]
#[pyo3(signature = (n, k, mode = "generic"))]
fn q_binomial(n: u32, k: u32, mode: &str) -> PyResult<String> {
    Ok(scalars::q_binomial(n, k, parse_mode(mode)?).to_string())
}

/// q-integer `[k]_q = 1 + q + ... + q^{k-1}`.
#[pyfunction]
#[pyo3(signature = (k, mode = "generic"))]
fn q_integer(k: u32, mode: &str) -> PyResult<String> {
    Ok(scalars::q_integer(k, parse_mode(mode)?).to_string())
}

/// Canonical form of a differential form expression.
#[pyfunction]
fn normalize(expression: &str, n: u32, d: u32) -> PyResult<String> {
    parse::normalize(expression, n, d).map_err(value_error)
}

#[pyfunction]
fn is_zero(expression: &str, n: u32, d: u32) -> PyResult<bool> {
    parse::is_zero(expression, n, d).map_err(value_error)
}

/// Runs the CLI with `args` (without the program name). Returns `(code, stdout, stderr)`.
#[pyfunction]
fn run(args: Vec<String>) -> (i32, String, String) {
    let out = cli::run(std::iter::once("qdiff".to_string()).chain(args));
    (out.code, out.stdout, out.stderr)
}

/// Runs a CLI command in JSON mode and returns the report as a dict.
/// Usage and library errors raise `ValueError`; failed checks do not.
#[pyfunction]
fn report<'py>(py: Python<'py>, args: Vec<String>) -> PyResult<Bound<'py, PyAny>> {
    let full = ["qdiff", "--json", "--stable"].into_iter().map(String::from).chain(args);
    let out = cli::run(full);
    if out.code == 2 {
        return Err(PyValueError::new_err(out.stderr.trim().to_string()));
    }
    py.import("json")?.call_method1("loads", (out.stdout,))
}

#[pyfunction]
#[pyo3(signature = (n, trials = 20, seed = 0, d = 2))]
fn verify<'py>(py: Python<'py>, n: &str, trials: usize, seed: u64, d: u32) -> PyResult<Bound<'py, PyAny>> {
    report(
        py,
        vec![
            "verify".into(),
            "--n".into(),
            n.into(),
            "--trials".into(),
            trials.to_string(),
            "--seed".into(),
            seed.to_string(),
            "--d".into(),
            d.to_string(),
        ],
    )
}

#[pyfunction]
#[pyo3(signature = (n, realization = "matrix", d = 2))]
fn curvature<'py>(py: Python<'py>, n: usize, realization: &str, d: u32) -> PyResult<Bound<'py, PyAny>> {
    report(
        py,
        vec![
            "curvature".into(),
            "--realization".into(),
            realization.into(),
            "--n".into(),
            n.to_string(),
            "--d".into(),
            d.to_string(),
        ],
    )
}

#[pyfunction]
#[pyo3(signature = (n, weights = "commutator", degree = None))]
fn deform<'py>(py: Python<'py>, n: usize, weights: &str, degree: Option<usize>) -> PyResult<Bound<'py, PyAny>> {
    let mut args = vec!["deform".into(), "--n".into(), n.to_string(), "--weights".into(), weights.into()];
    if let Some(deg) = degree {
        args.extend(["--degree".into(), deg.to_string()]);
    }
    report(py, args)
}

#[pymodule]
fn pyqdiff(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(q_binomial, m)?)?;
    m.add_function(wrap_pyfunction!(q_integer, m)?)?;
    m.add_function(wrap_pyfunction!(normalize, m)?)?;
    m.add_function(wrap_pyfunction!(is_zero, m)?)?;
    m.add_function(wrap_pyfunction!(run, m)?)?;
    m.add_function(wrap_pyfunction!(report, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(curvature, m)?)?;
    m.add_function(wrap_pyfunction!(deform, m)?)?;
    Ok(())
}
