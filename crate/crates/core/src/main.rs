use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use lpmhd::commands::{self, THREADS_VAR};
use lpmhd::io::load_snapshots;
use lpmhd::verify::{run_suite, taylor_green_snapshots, SuiteReport};
use lpmhd::Error;

/// Pseudo-spectral MHD solver with Littlewood-Paley regularity diagnostics.
#[derive(Parser)]
#[command(name = "lpmhd", version, about, after_help = AFTER_HELP)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

const AFTER_HELP: &str = "Environment: LPMHD_THREADS sets the worker thread count.\n\
Exit codes: 0 ok, 1 usage or configuration, 2 numerical failure, 3 I/O.";

#[derive(Subcommand)]
enum Command {
    /// Integrate a run configuration, writing snapshots, ledger.csv and manifest.json.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Per-snapshot diagnostics as CSV.
    Analyze {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        criteria: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Criterion report plus CSV companions next to it.
    Criteria {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        criteria: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run a named verification suite, or check a stored Taylor–Green run.
    Verify {
        #[arg(long)]
        suite: String,
        /// Snapshot directory (taylor-green only).
        #[arg(long = "in")]
        input: Option<PathBuf>,
    },
}

enum Failure {
    Lib(Error),
    Checks(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Io(_) | Error::Format(_) | Error::GridMismatch(..) => 3,
        e if e.is_numerical() => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    if let Err(msg) = configure_threads() {
        eprintln!("error: {msg}");
        return ExitCode::from(1);
    }
    let result = match cli.command {
        Command::Simulate { config, out } => simulate(&config, &out),
        Command::Analyze { input, criteria, out } => analyze(&input, &criteria, &out),
        Command::Criteria { input, criteria, out } => criteria_cmd(&input, &criteria, &out),
        Command::Verify { suite, input } => verify(&suite, input.as_deref()),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
        Err(Failure::Checks(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn configure_threads() -> Result<(), String> {
    let Ok(v) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("{THREADS_VAR} must be a positive integer, got '{v}'"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

fn simulate(config: &Path, out: &Path) -> Result<(), Failure> {
    let s = commands::simulate(config, out)?;
    println!(
        "{} snapshots, t = {} ({})",
        s.snapshots,
        s.t_final,
        if s.complete { "complete" } else { "incomplete" }
    );
    match s.abort {
        Some(e) => Err(e.into()),
        None => Ok(()),
    }
}

fn analyze(input: &Path, criteria: &Path, out: &Path) -> Result<(), Failure> {
    let rows = commands::analyze(input, criteria, out)?;
    println!("{rows} rows written to {}", out.display());
    Ok(())
}

fn criteria_cmd(input: &Path, criteria: &Path, out: &Path) -> Result<(), Failure> {
    let rep = commands::criteria(input, criteria, out)?;
    println!(
        "criterion: {}; conditions: {}",
        rep.criterion_verdict.label(),
        rep.conditions
            .iter()
            .map(|c| format!("({}) {}", c.id, c.verdict.label()))
            .collect::<Vec<_>>()
            .join(", ")
    );
    Ok(())
}

fn verify(suite: &str, input: Option<&Path>) -> Result<(), Failure> {
    let rep: SuiteReport = match input {
        Some(dir) if suite == "taylor-green" => taylor_green_snapshots(&load_snapshots(dir)?)?,
        Some(_) => {
            return Err(Error::Config(format!("--in is only accepted by the taylor-green suite, not '{suite}'")).into())
        }
        None => run_suite(suite)?,
    };
    println!("{rep}");
    if rep.passed() {
        Ok(())
    } else {
        Err(Failure::Checks(format!(
            "suite {suite}: {} check(s) failed",
            rep.failures().count()
        )))
    }
}
