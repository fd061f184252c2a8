use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use num_complex::Complex64;

use lpmhd::io::{load_snapshots, snapshot_name, Manifest, SnapshotFile};
use lpmhd::solver::SolverState;
use lpmhd::spectral::{Grid3, SpectralField, SpectralScalarField, SpectralVectorField};

fn lpmhd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lpmhd"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn write_config(dir: &Path, body: &str) -> PathBuf {
    let p = dir.join("run.toml");
    std::fs::write(&p, body).unwrap();
    p
}

fn random_run(n: usize, dt: f64, t_end: f64, interval: f64) -> String {
    format!(
        "[solver]\nn = {n}\nnu = 0.1\nmu = 0.1\ndt = {dt}\nt_end = {t_end}\nsnapshot_interval = {interval}\nseed = 11\n\n\
         [solver.initial]\nkind = \"random-spectrum\"\nslope = 4.0\nenergy = 1.0\npeak_shell = 1\nmagnetic_energy = 0.5\n\n\
         [criteria]\nc_r = 0.02\n"
    )
}

const CRITERIA: &str = "[criteria]\nr = 2.0\nl = 2.0\ns = 0.75\nc_r = 0.01\n";

// (0, 0, cos(k·x)) scaled to `amp`
fn cosine(g: Grid3, k: [i64; 3], amp: f64) -> SpectralVectorField {
    SpectralVectorField::new([
        SpectralScalarField::zeros(g),
        SpectralScalarField::zeros(g),
        SpectralScalarField::from_modes(g, &[(k, Complex64::new(0.5 * amp, 0.0))]),
    ])
    .unwrap()
}

fn write_trajectory(dir: &Path, states: &[(f64, SpectralVectorField)]) {
    std::fs::create_dir_all(dir).unwrap();
    for (i, (t, u)) in states.iter().enumerate() {
        let st = SolverState::new(u.clone(), SpectralVectorField::zeros(u.grid()), *t).unwrap();
        SnapshotFile::from_state(&st, 0.1, 0.05).save(&dir.join(snapshot_name(i))).unwrap();
    }
}

fn data_rows(csv: &str) -> Vec<Vec<String>> {
    csv.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn zero_horizon_writes_one_snapshot() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), &random_run(8, 0.01, 0.0, 0.01));
    let out = tmp.path().join("out");
    let o = lpmhd(&["simulate", "--config", s(&cfg), "--out", s(&out)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let snaps = load_snapshots(&out).unwrap();
    assert_eq!(snaps.len(), 1);
    assert_eq!(snaps[0].t, 0.0);
    let m = Manifest::load(&out).unwrap();
    assert!(m.complete && m.abort.is_none());
    assert!(m.verify(&out).unwrap().is_empty());
}

#[test]
fn fixed_seed_is_reproducible() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), &random_run(8, 0.01, 0.1, 0.05));
    let (a, b) = (tmp.path().join("a"), tmp.path().join("b"));
    for out in [&a, &b] {
        let o = lpmhd(&["simulate", "--config", s(&cfg), "--out", s(out)]);
        assert_eq!(code(&o), 0, "{}", stderr(&o));
    }
    let (ma, mb) = (Manifest::load(&a).unwrap(), Manifest::load(&b).unwrap());
    assert_eq!(ma.files, mb.files);
    assert_eq!(ma.files.len(), 4);
    let ledger = std::fs::read_to_string(a.join("ledger.csv")).unwrap();
    assert!(ledger.contains("# seed = 11") && ledger.contains("# c_r = 0.02"));
}

#[test]
fn taylor_green_run_checks_against_decay() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(
        tmp.path(),
        "[solver]\nn = 32\nnu = 0.1\nmu = 0.1\ndt = 0.001\nt_end = 1.0\nsnapshot_interval = 0.5\n\n\
         [solver.initial]\nkind = \"taylor-green\"\n",
    );
    let out = tmp.path().join("tg");
    assert_eq!(code(&lpmhd(&["simulate", "--config", s(&cfg), "--out", s(&out)])), 0);
    let o = lpmhd(&["verify", "--suite", "taylor-green", "--in", s(&out)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    assert!(String::from_utf8_lossy(&o.stdout).contains("2 of 2 checks passed"));
}

#[test]
fn cfl_abort_flags_incomplete_manifest() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(
        tmp.path(),
        "[solver]\nn = 16\nnu = 0.01\nmu = 0.01\ndt = 0.5\nt_end = 5.0\nsnapshot_interval = 0.5\n\n\
         [solver.initial]\nkind = \"taylor-green\"\namplitude = 2.0\n",
    );
    let out = tmp.path().join("out");
    let o = lpmhd(&["simulate", "--config", s(&cfg), "--out", s(&out)]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("CFL"));
    let m = Manifest::load(&out).unwrap();
    assert!(!m.complete);
    assert!(m.abort.unwrap().contains("Courant"));
}

#[test]
fn analyze_rows() {
    let tmp = tempfile::tempdir().unwrap();
    let crit = tmp.path().join("crit.toml");
    std::fs::write(&crit, CRITERIA).unwrap();
    let g = Grid3::new(64).unwrap();
    let dir = tmp.path().join("snaps");
    // the mode (24, 24, 0) sits in shell 5 alone; 0.01 puts it well above
    // the threshold c_r·min(ν,μ) = 5e-4 and far below it at 1e-9
    write_trajectory(
        &dir,
        &[
            (0.0, SpectralVectorField::zeros(g)),
            (0.5, cosine(g, [24, 24, 0], 1e-2)),
            (1.0, cosine(g, [24, 24, 0], 1e-9)),
        ],
    );
    let out = tmp.path().join("diag.csv");
    let o = lpmhd(&["analyze", "--in", s(&dir), "--criteria", s(&crit), "--out", s(&out)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.contains("# c_r = 0.01"));
    let header = text.lines().find(|l| !l.starts_with('#')).unwrap();
    assert!(header.starts_with("t,Lambda_r,Q,f,hs_energy,low_besov,u_inf_q-1,"));
    let rows = data_rows(&text);
    assert_eq!(rows.len(), 3);
    let num = |r: &Vec<String>, i: usize| r[i].parse::<f64>().unwrap();
    assert_eq!((num(&rows[0], 1), rows[0][2].as_str(), num(&rows[0], 3)), (1.0, "0", 0.0));
    assert_eq!((num(&rows[1], 1), rows[1][2].as_str()), (32.0, "5"));
    assert_eq!(rows[2][2], "0");

    let again = tmp.path().join("diag2.csv");
    lpmhd(&["analyze", "--in", s(&dir), "--criteria", s(&crit), "--out", s(&again)]);
    assert_eq!(std::fs::read(&out).unwrap(), std::fs::read(&again).unwrap());
}

#[test]
fn analyze_rejects_mixed_grids() {
    let tmp = tempfile::tempdir().unwrap();
    let crit = tmp.path().join("crit.toml");
    std::fs::write(&crit, CRITERIA).unwrap();
    let dir = tmp.path().join("snaps");
    write_trajectory(&dir, &[(0.0, SpectralVectorField::zeros(Grid3::new(8).unwrap()))]);
    let st = SolverState::new(
        SpectralVectorField::zeros(Grid3::new(16).unwrap()),
        SpectralVectorField::zeros(Grid3::new(16).unwrap()),
        1.0,
    )
    .unwrap();
    SnapshotFile::from_state(&st, 0.1, 0.05).save(&dir.join(snapshot_name(1))).unwrap();
    let o = lpmhd(&["analyze", "--in", s(&dir), "--criteria", s(&crit), "--out", s(&tmp.path().join("d.csv"))]);
    assert_eq!(code(&o), 3);
    assert!(stderr(&o).contains("grid mismatch"));
}

#[test]
fn criteria_on_zero_trajectory() {
    let tmp = tempfile::tempdir().unwrap();
    let crit = tmp.path().join("crit.toml");
    std::fs::write(&crit, CRITERIA).unwrap();
    let g = Grid3::new(8).unwrap();
    let dir = tmp.path().join("snaps");
    write_trajectory(&dir, &(0..=4).map(|i| (0.25 * i as f64, SpectralVectorField::zeros(g))).collect::<Vec<_>>());
    let out = tmp.path().join("report.txt");
    let o = lpmhd(&["criteria", "--in", s(&dir), "--criteria", s(&crit), "--out", s(&out)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let text = std::fs::read_to_string(&out).unwrap();
    let conditions: Vec<&str> = text.lines().filter(|l| l.starts_with("condition\t")).collect();
    assert_eq!(conditions.len(), 8);
    for l in &conditions {
        assert!(l.contains("\tvalue=0.0000000000000000e0\t") && l.contains("verdict=satisfied"), "{l}");
    }
    assert!(text.contains("criterion_summary\t") && text.contains("verdict=satisfied"));
    for suffix in ["shells", "gronwall", "lemma", "q_series"] {
        let companion = std::fs::read_to_string(tmp.path().join(format!("report.{suffix}.csv"))).unwrap();
        assert!(companion.contains("# c_r = 0.01"));
    }
}

#[test]
fn criteria_needs_the_second_half_window() {
    let tmp = tempfile::tempdir().unwrap();
    let crit = tmp.path().join("crit.toml");
    std::fs::write(&crit, CRITERIA).unwrap();
    let g = Grid3::new(8).unwrap();
    let dir = tmp.path().join("snaps");
    write_trajectory(&dir, &[(0.0, SpectralVectorField::zeros(g)), (0.3, SpectralVectorField::zeros(g))]);
    // a manifest promising T = 1 leaves [T/2, T] without samples
    Manifest {
        complete: false,
        abort: Some("stopped".into()),
        t_end: 1.0,
        c_r: 0.01,
        config: String::new(),
        files: vec![],
    }
    .save(&dir)
    .unwrap();
    let o = lpmhd(&["criteria", "--in", s(&dir), "--criteria", s(&crit), "--out", s(&tmp.path().join("r.txt"))]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("window"), "{}", stderr(&o));
}

#[test]
fn usage_errors() {
    let o = lpmhd(&["verify", "--suite", "navier"]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("partition, reconstruction, bony"));
    assert_eq!(code(&lpmhd(&["simulate"])), 1);
    assert_eq!(code(&lpmhd(&["--help"])), 0);

    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), &format!("{}bogus = 1\n", random_run(8, 0.01, 0.1, 0.05)));
    let o = lpmhd(&["simulate", "--config", s(&cfg), "--out", s(&tmp.path().join("o"))]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("bogus"));
    let o = lpmhd(&["simulate", "--config", s(&tmp.path().join("missing.toml")), "--out", s(tmp.path())]);
    assert_eq!(code(&o), 3);
}

#[test]
fn thread_override() {
    let o = Command::new(env!("CARGO_BIN_EXE_lpmhd"))
        .args(["verify", "--suite", "partition"])
        .env("LPMHD_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    let o = Command::new(env!("CARGO_BIN_EXE_lpmhd"))
        .args(["verify", "--suite", "partition"])
        .env("LPMHD_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(code(&o), 1);
}

#[test]
fn snapshot_files_reload_bit_exactly() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), &random_run(8, 0.01, 0.05, 0.05));
    let out = tmp.path().join("out");
    assert_eq!(code(&lpmhd(&["simulate", "--config", s(&cfg), "--out", s(&out)])), 0);
    for snap in load_snapshots(&out).unwrap() {
        let bytes = snap.to_bytes();
        assert_eq!(SnapshotFile::from_bytes(&bytes).unwrap().to_bytes(), bytes);
        assert!(snap.b.unwrap().coefficient_energy() > 0.0);
    }
}
