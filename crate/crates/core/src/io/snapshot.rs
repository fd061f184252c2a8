use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use num_complex::Complex64;

use super::atomic_write;
use crate::solver::SolverState;
use crate::spectral::{Grid3, SpectralField, SpectralVectorField};
use crate::{Error, Result};

pub const MAGIC: &[u8; 6] = b"LPMHD1";
pub const FORMAT_VERSION: u32 = 1;
pub const SNAPSHOT_EXTENSION: &str = "lpmhd";
const HEADER_LEN: usize = 6 + 4 + 4 + 8 + 8 + 8 + 1;

/// Contents of one snapshot file.
#[derive(Clone, Debug, PartialEq)]
pub struct SnapshotFile {
    pub nu: f64,
    pub mu: f64,
    pub t: f64,
    pub u: SpectralVectorField,
    /// Absent for velocity-only files (field count 1).
    pub b: Option<SpectralVectorField>,
}

impl SnapshotFile {
    pub fn from_state(state: &SolverState, nu: f64, mu: f64) -> Self {
        Self {
            nu,
            mu,
            t: state.t,
            u: state.u.clone(),
            b: Some(state.b.clone()),
        }
    }

    pub fn grid(&self) -> Grid3 {
        self.u.grid()
    }

    pub fn into_state(self) -> SolverState {
        let grid = self.grid();
        let b = self.b.unwrap_or_else(|| SpectralVectorField::zeros(grid));
        SolverState { u: self.u, b, t: self.t }
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let grid = self.grid();
        let fields: Vec<&SpectralVectorField> = std::iter::once(&self.u).chain(self.b.as_ref()).collect();
        let mut out = Vec::with_capacity(HEADER_LEN + fields.len() * 3 * grid.len() * 16);
        out.extend_from_slice(MAGIC);
        out.extend_from_slice(&FORMAT_VERSION.to_le_bytes());
        out.extend_from_slice(&(grid.n() as u32).to_le_bytes());
        out.extend_from_slice(&self.nu.to_le_bytes());
        out.extend_from_slice(&self.mu.to_le_bytes());
        out.extend_from_slice(&self.t.to_le_bytes());
        out.push(fields.len() as u8);
        for f in fields {
            for c in f.components() {
                for z in c.coeffs() {
                    out.extend_from_slice(&z.re.to_le_bytes());
                    out.extend_from_slice(&z.im.to_le_bytes());
                }
            }
        }
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        if bytes.len() < HEADER_LEN {
            return Err(Error::Format(format!("file too short for a header ({} bytes)", bytes.len())));
        }
        if &bytes[..6] != MAGIC {
            return Err(Error::Format("bad magic bytes".into()));
        }
        let u32_at = |o: usize| u32::from_le_bytes(bytes[o..o + 4].try_into().expect("4 bytes"));
        let f64_at = |o: usize| f64::from_le_bytes(bytes[o..o + 8].try_into().expect("8 bytes"));
        let version = u32_at(6);
        if version != FORMAT_VERSION {
            return Err(Error::Format(format!("unsupported format version {version}")));
        }
        let n = u32_at(10) as usize;
        let grid = Grid3::new(n).map_err(|_| Error::Format(format!("invalid grid size {n} in header")))?;
        let (nu, mu, t) = (f64_at(14), f64_at(22), f64_at(30));
        let count = bytes[38] as usize;
        if !(1..=2).contains(&count) {
            return Err(Error::Format(format!("field count must be 1 or 2, got {count}")));
        }
        let expected = HEADER_LEN + count * 3 * grid.len() * 16;
        if bytes.len() != expected {
            return Err(Error::Format(format!(
                "payload length mismatch: header implies {expected} bytes, file has {}",
                bytes.len()
            )));
        }
        let mut off = HEADER_LEN;
        let mut read_field = || {
            let comps: [Vec<Complex64>; 3] = std::array::from_fn(|_| {
                (0..grid.len())
                    .map(|_| {
                        let z = Complex64::new(f64_at(off), f64_at(off + 8));
                        off += 16;
                        z
                    })
                    .collect()
            });
            SpectralVectorField::from_coeffs(grid, comps)
        };
        let u = read_field()?;
        let b = if count == 2 { Some(read_field()?) } else { None };
        Ok(Self { nu, mu, t, u, b })
    }

    pub fn write(&self, mut w: impl Write) -> Result<()> {
        w.write_all(&self.to_bytes())?;
        Ok(())
    }

    pub fn read(mut r: impl Read) -> Result<Self> {
        let mut buf = Vec::new();
        r.read_to_end(&mut buf)?;
        Self::from_bytes(&buf)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        atomic_write(path, &self.to_bytes())
    }

    pub fn load(path: &Path) -> Result<Self> {
        let bytes = fs::read(path)?;
        Self::from_bytes(&bytes).map_err(|e| match e {
            Error::Format(m) => Error::Format(format!("{}: {m}", path.display())),
            other => other,
        })
    }
}

/// File name of the `index`-th snapshot.
pub fn snapshot_name(index: usize) -> String {
    format!("snap_{index:06}.{SNAPSHOT_EXTENSION}")
}

/// Snapshot files in `dir`, sorted by name.
pub fn list_snapshots(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut paths: Vec<PathBuf> = fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == SNAPSHOT_EXTENSION))
        .collect();
    paths.sort();
    Ok(paths)
}

/// Loads every snapshot of a directory in time order; all must share one
/// grid and one `(ν, μ)`.
pub fn load_snapshots(dir: &Path) -> Result<Vec<SnapshotFile>> {
    let paths = list_snapshots(dir)?;
    if paths.is_empty() {
        return Err(Error::Window(format!("no .{SNAPSHOT_EXTENSION} files in {}", dir.display())));
    }
    let mut snaps = paths.iter().map(|p| SnapshotFile::load(p)).collect::<Result<Vec<_>>>()?;
    snaps.sort_by(|a, b| a.t.total_cmp(&b.t));
    let first = &snaps[0];
    for s in &snaps[1..] {
        if s.grid() != first.grid() {
            return Err(Error::GridMismatch(first.grid().n(), s.grid().n()));
        }
        if s.nu != first.nu || s.mu != first.mu {
            return Err(Error::Format("snapshots disagree on nu/mu".into()));
        }
    }
    Ok(snaps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::random_vector;
    use proptest::prelude::*;

    #[test]
    fn header_layout() {
        let g = Grid3::new(8).unwrap();
        let s = SnapshotFile {
            nu: 0.1,
            mu: 0.2,
            t: 0.5,
            u: random_vector(g, 1),
            b: None,
        };
        let bytes = s.to_bytes();
        assert_eq!(&bytes[..6], b"LPMHD1");
        assert_eq!(bytes.len(), HEADER_LEN + 3 * 512 * 16);
        assert_eq!(bytes[38], 1);
        assert_eq!(SnapshotFile::from_bytes(&bytes).unwrap(), s);
        assert!(SnapshotFile::from_bytes(&bytes[..bytes.len() - 1]).is_err());
        let mut bad = bytes.clone();
        bad[0] = b'X';
        assert!(SnapshotFile::from_bytes(&bad).is_err());
    }

    fn bits(v: &SpectralVectorField) -> Vec<(u64, u64)> {
        v.components()
            .iter()
            .flat_map(|c| c.coeffs().iter().map(|z| (z.re.to_bits(), z.im.to_bits())))
            .collect()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn round_trip_is_bit_exact(
            seed in any::<u64>(),
            nu in any::<f64>(),
            t in any::<f64>(),
            special in prop::sample::select(vec![0.0, -0.0, f64::NAN, f64::INFINITY, 1e-310]),
        ) {
            let g = Grid3::new(8).unwrap();
            let mut u = random_vector(g, seed);
            u.component_mut(2).coeffs_mut()[5].im = special;
            let s = SnapshotFile { nu, mu: 1.0, t, u, b: Some(random_vector(g, seed ^ 1)) };
            let back = SnapshotFile::from_bytes(&s.to_bytes()).unwrap();
            prop_assert_eq!(back.nu.to_bits(), s.nu.to_bits());
            prop_assert_eq!(back.t.to_bits(), s.t.to_bits());
            prop_assert_eq!(bits(&back.u), bits(&s.u));
            prop_assert_eq!(bits(back.b.as_ref().unwrap()), bits(s.b.as_ref().unwrap()));
        }
    }

    #[test]
    fn directory_listing() {
        let dir = tempfile::tempdir().unwrap();
        let g = Grid3::new(8).unwrap();
        for (i, t) in [0.2, 0.0, 0.1].into_iter().enumerate() {
            let s = SnapshotFile { nu: 0.1, mu: 0.1, t, u: random_vector(g, i as u64), b: None };
            s.save(&dir.path().join(snapshot_name(i))).unwrap();
        }
        std::fs::write(dir.path().join("notes.txt"), "x").unwrap();
        let snaps = load_snapshots(dir.path()).unwrap();
        let times: Vec<f64> = snaps.iter().map(|s| s.t).collect();
        assert_eq!(times, vec![0.0, 0.1, 0.2]);

        let other = SnapshotFile { nu: 0.1, mu: 0.1, t: 0.3, u: random_vector(Grid3::new(16).unwrap(), 0), b: None };
        other.save(&dir.path().join(snapshot_name(9))).unwrap();
        assert!(matches!(load_snapshots(dir.path()), Err(Error::GridMismatch(..))));
    }
}
