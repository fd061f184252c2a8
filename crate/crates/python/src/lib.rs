//! Python module `lpmhd`: the batch commands, the verification suites and a
//! few pointwise helpers. Long computations release the GIL.

use std::path::PathBuf;

use pyo3::exceptions::{PyIOError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use ::lpmhd::io::SnapshotFile;
use ::lpmhd::{commands, verify, DyadicPartition, Error, Grid3};

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Io(_) | Error::Format(_) | Error::GridMismatch(..) => PyIOError::new_err(e.to_string()),
        e if e.is_numerical() => PyRuntimeError::new_err(e.to_string()),
        e => PyValueError::new_err(e.to_string()),
    }
}

/// Runs a configuration file; returns a dict with `snapshots`, `t_final`,
/// `complete` and `abort` (None or the abort message).
#[pyfunction]
fn simulate<'py>(py: Python<'py>, config: PathBuf, out: PathBuf) -> PyResult<Bound<'py, PyDict>> {
    let s = py.detach(|| commands::simulate(&config, &out)).map_err(to_py)?;
    let d = PyDict::new(py);
    d.set_item("snapshots", s.snapshots)?;
    d.set_item("t_final", s.t_final)?;
    d.set_item("complete", s.complete)?;
    d.set_item("abort", s.abort.map(|e| e.to_string()))?;
    Ok(d)
}

/// Writes the diagnostics CSV; returns the number of rows.
#[pyfunction]
fn analyze(py: Python<'_>, input: PathBuf, criteria: PathBuf, out: PathBuf) -> PyResult<usize> {
    py.detach(|| commands::analyze(&input, &criteria, &out)).map_err(to_py)
}

/// Writes the criterion report; returns a dict with the main verdict and a
/// list of `(id, value, threshold, verdict)` for the eight conditions.
#[pyfunction]
fn criteria<'py>(py: Python<'py>, input: PathBuf, criteria: PathBuf, out: PathBuf) -> PyResult<Bound<'py, PyDict>> {
    let rep = py
        .detach(|| commands::criteria(&input, &criteria, &out))
        .map_err(to_py)?;
    let d = PyDict::new(py);
    d.set_item("criterion", rep.criterion_verdict.label())?;
    d.set_item("criterion_max_top4", rep.criterion.surrogate.max_top4)?;
    let conds: Vec<(u8, Option<f64>, f64, &str)> = rep
        .conditions
        .iter()
        .map(|c| (c.id, c.value, c.threshold, c.verdict.label()))
        .collect();
    d.set_item("conditions", conds)?;
    d.set_item("lemma_max_ratio", rep.lemma.max_ratio())?;
    d.set_item("gronwall_max", rep.gronwall.max_constant())?;
    Ok(d)
}

/// Runs a named suite; returns `(passed, text)`.
#[pyfunction]
fn run_suite(py: Python<'_>, name: String) -> PyResult<(bool, String)> {
    let rep = py.detach(|| verify::run_suite(&name)).map_err(to_py)?;
    Ok((rep.passed(), rep.to_string()))
}

#[pyfunction]
fn suites() -> Vec<&'static str> {
    verify::SUITES.to_vec()
}

/// `max_k |Σ_q φ_q(k) - 1|` on the `n³` grid with the default profile.
#[pyfunction]
fn partition_defect(n: usize) -> PyResult<f64> {
    let grid = Grid3::new(n).map_err(to_py)?;
    Ok(DyadicPartition::with_default_profile(grid).partition_defect())
}

/// Header fields of a snapshot file: `n`, `nu`, `mu`, `t`, `has_b`.
#[pyfunction]
fn snapshot_info<'py>(py: Python<'py>, path: PathBuf) -> PyResult<Bound<'py, PyDict>> {
    let s = SnapshotFile::load(&path).map_err(to_py)?;
    let d = PyDict::new(py);
    d.set_item("n", s.grid().n())?;
    d.set_item("nu", s.nu)?;
    d.set_item("mu", s.mu)?;
    d.set_item("t", s.t)?;
    d.set_item("has_b", s.b.is_some())?;
    Ok(d)
}

#[pymodule]
#[pyo3(name = "lpmhd")]
fn lpmhd_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    register(m)
}

/// Adds the module contents to `m`.
pub fn register(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_function(wrap_pyfunction!(simulate, m)?)?;
    m.add_function(wrap_pyfunction!(analyze, m)?)?;
    m.add_function(wrap_pyfunction!(criteria, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    m.add_function(wrap_pyfunction!(suites, m)?)?;
    m.add_function(wrap_pyfunction!(partition_defect, m)?)?;
    m.add_function(wrap_pyfunction!(snapshot_info, m)?)?;
    Ok(())
}
