use pyo3::exceptions::{PyIOError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn with_module<T>(f: impl FnOnce(&Bound<'_, PyModule>) -> T) -> T {
    Python::attach(|py| {
        let m = PyModule::new(py, "lpmhd").unwrap();
        lpmhd_python::register(&m).unwrap();
        f(&m)
    })
}

#[test]
fn helpers() {
    with_module(|m| {
        let d: f64 = m.getattr("partition_defect").unwrap().call1((16,)).unwrap().extract().unwrap();
        assert!(d <= 1e-12);
        let suites: Vec<String> = m.getattr("suites").unwrap().call0().unwrap().extract().unwrap();
        assert_eq!(suites.len(), 7);
        let (passed, text): (bool, String) =
            m.getattr("run_suite").unwrap().call1(("partition",)).unwrap().extract().unwrap();
        assert!(passed, "{text}");
    });
}

#[test]
fn errors_map_to_python_exceptions() {
    with_module(|m| {
        let py = m.py();
        let e = m.getattr("run_suite").unwrap().call1(("nope",)).unwrap_err();
        assert!(e.is_instance_of::<PyValueError>(py));
        let e = m.getattr("partition_defect").unwrap().call1((12,)).unwrap_err();
        assert!(e.is_instance_of::<PyValueError>(py));
        let e = m.getattr("snapshot_info").unwrap().call1(("/nonexistent/x.lpmhd",)).unwrap_err();
        assert!(e.is_instance_of::<PyIOError>(py));
    });
}

#[test]
fn simulate_and_report() {
    let tmp = tempfile_dir();
    let cfg = tmp.join("run.toml");
    std::fs::write(
        &cfg,
        "[solver]\nn = 8\nnu = 0.1\nmu = 0.1\ndt = 0.01\nt_end = 0.2\nsnapshot_interval = 0.02\n\n\
         [solver.initial]\nkind = \"taylor-green\"\n",
    )
    .unwrap();
    let out = tmp.join("out");
    with_module(|m| {
        let run = m.getattr("simulate").unwrap().call1((&cfg, &out)).unwrap();
        let run = run.cast::<PyDict>().unwrap();
        let n: usize = run.get_item("snapshots").unwrap().unwrap().extract().unwrap();
        assert_eq!(n, 11);
        let rep = m.getattr("criteria").unwrap().call1((&out, &cfg, tmp.join("r.txt"))).unwrap();
        let conds: Vec<(u8, Option<f64>, f64, String)> = rep
            .cast::<PyDict>()
            .unwrap()
            .get_item("conditions")
            .unwrap()
            .unwrap()
            .extract()
            .unwrap();
        assert_eq!(conds.len(), 8);
        assert_eq!(conds[2].3, "satisfied");
    });
    std::fs::remove_dir_all(&tmp).unwrap();
}

fn tempfile_dir() -> std::path::PathBuf {
    let p = std::env::temp_dir().join(format!("lpmhd-py-{}", std::process::id()));
    std::fs::create_dir_all(&p).unwrap();
    p
}
