//! The batch commands behind the `lpmhd` binary, callable from Rust and Python.

use std::path::Path;

use crate::diagnostics::{evaluate_conditions, CriterionReport, TrajectoryDiagnostics};
use crate::io::{
    atomic_write, diagnostics_csv, ledger_csv, load_snapshots, report_companions, report_text,
    snapshot_name, CriteriaFile, Manifest, RunConfig, SnapshotFile, MANIFEST_NAME,
};
use crate::solver::{run_with, SolverState};
use crate::{DyadicPartition, Error, Result};

pub const THREADS_VAR: &str = "LPMHD_THREADS";
pub const LEDGER_NAME: &str = "ledger.csv";

/// Outcome of [`simulate`]. A CFL abort is reported through `abort` after
/// the partial output and the manifest have been written.
#[derive(Debug)]
pub struct SimulationSummary {
    pub snapshots: usize,
    pub t_final: f64,
    pub complete: bool,
    pub abort: Option<Error>,
}

/// Runs the configuration at `config`, writing `snap_*.lpmhd`, `ledger.csv`
/// and `manifest.json` into `out`.
pub fn simulate(config: &Path, out: &Path) -> Result<SimulationSummary> {
    let run_cfg = RunConfig::load(config)?;
    let cfg = run_cfg.solver_config();
    let echo = run_cfg.to_toml();
    let (u0, b0) = run_cfg.solver.initial.build(run_cfg.grid()?, cfg.seed)?;
    std::fs::create_dir_all(out)?;

    let mut files = Vec::new();
    let mut write_err = None;
    let traj = run_with(&u0, &b0, &cfg, |s: &SolverState| {
        if write_err.is_some() {
            return;
        }
        let name = snapshot_name(files.len());
        let bytes = SnapshotFile::from_state(s, cfg.nu, cfg.mu).to_bytes();
        match atomic_write(&out.join(&name), &bytes) {
            Ok(()) => files.push(Manifest::entry(&name, &bytes)),
            Err(e) => write_err = Some(e),
        }
    })?;
    if let Some(e) = write_err {
        return Err(e);
    }
    let ledger = ledger_csv(&traj.ledger, &echo);
    atomic_write(&out.join(LEDGER_NAME), ledger.as_bytes())?;
    files.push(Manifest::entry(LEDGER_NAME, ledger.as_bytes()));

    Manifest {
        complete: traj.complete,
        abort: traj.abort.as_ref().map(|e| e.to_string()),
        t_end: cfg.t_end,
        c_r: run_cfg.criteria.c_r,
        config: echo,
        files,
    }
    .save(out)?;
    Ok(SimulationSummary {
        snapshots: traj.snapshots.len(),
        t_final: traj.last().t,
        complete: traj.complete,
        abort: traj.abort,
    })
}

struct Loaded {
    states: Vec<SolverState>,
    nu: f64,
    mu: f64,
    t_end: f64,
    criteria: CriteriaFile,
    echo: String,
}

fn load_inputs(input: &Path, criteria: &Path) -> Result<Loaded> {
    let criteria = CriteriaFile::load(criteria)?;
    let snaps = load_snapshots(input)?;
    let Some(last) = snaps.last() else {
        return Err(Error::Window(format!("no snapshots in {}", input.display())));
    };
    let (nu, mu, t_last) = (last.nu, last.mu, last.t);
    // the planned end time comes from the run manifest when there is one,
    // so an aborted run is judged against the horizon it was meant to reach
    let manifest = input
        .join(MANIFEST_NAME)
        .exists()
        .then(|| Manifest::load(input))
        .transpose()?;
    let t_end = manifest.as_ref().map_or(t_last, |m| m.t_end);
    let mut echo = String::new();
    if let Some(m) = &manifest {
        echo.push_str("source run:\n");
        echo.push_str(&m.config);
    }
    echo.push_str(&format!("source nu = {nu:e}, mu = {mu:e}, t_end = {t_end:e}\n"));
    echo.push_str(&criteria.to_toml());
    Ok(Loaded {
        states: snaps.into_iter().map(SnapshotFile::into_state).collect(),
        nu,
        mu,
        t_end,
        criteria,
        echo,
    })
}

fn diagnostics(l: &Loaded) -> Result<TrajectoryDiagnostics> {
    let part = DyadicPartition::with_default_profile(l.states[0].grid());
    TrajectoryDiagnostics::compute(&l.states, l.nu, l.mu, l.t_end, &l.criteria.criteria, &part)
}

/// Writes the per-snapshot diagnostics CSV; returns the number of rows.
pub fn analyze(input: &Path, criteria: &Path, out: &Path) -> Result<usize> {
    let l = load_inputs(input, criteria)?;
    let diag = diagnostics(&l)?;
    atomic_write(out, diagnostics_csv(&diag, &l.echo).as_bytes())?;
    Ok(diag.records.len())
}

/// Writes the report to `out` and its CSV companions next to it as
/// `<stem>.shells.csv`, `<stem>.gronwall.csv`, `<stem>.lemma.csv`,
/// `<stem>.q_series.csv`.
pub fn criteria(input: &Path, criteria: &Path, out: &Path) -> Result<CriterionReport> {
    let l = load_inputs(input, criteria)?;
    let diag = diagnostics(&l)?;
    let rep = evaluate_conditions(&diag, &l.criteria.criteria)?;
    atomic_write(out, report_text(&rep, &l.echo).as_bytes())?;
    let stem = out.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    for (suffix, text) in report_companions(&rep, &l.echo) {
        atomic_write(&out.with_file_name(format!("{stem}.{suffix}")), text.as_bytes())?;
    }
    Ok(rep)
}
