//! Snapshot files, run configuration, CSV tables, text reports and the
//! output-directory manifest.

mod config;
mod manifest;
mod snapshot;
mod tables;

pub use config::{CriteriaFile, RunConfig, SolverSection};
pub use manifest::{sha256_hex, Manifest, ManifestEntry, MANIFEST_NAME};
pub use snapshot::{
    list_snapshots, load_snapshots, snapshot_name, SnapshotFile, FORMAT_VERSION, MAGIC,
    SNAPSHOT_EXTENSION,
};
pub use tables::{
    diagnostics_columns, diagnostics_csv, echo_lines, fmt_f, ledger_csv, report_companions,
    report_text,
};

use std::fs;
use std::io::Write;
use std::path::Path;

use crate::Result;

/// Writes `bytes` to a temporary sibling of `path`, then renames it into place.
pub fn atomic_write(path: &Path, bytes: &[u8]) -> Result<()> {
    let name = path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_default();
    let tmp = path.with_file_name(format!(".{name}.tmp{}", std::process::id()));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path).inspect_err(|_| {
        let _ = fs::remove_file(&tmp);
    })?;
    Ok(())
}
