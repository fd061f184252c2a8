use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::atomic_write;
use crate::Result;

pub const MANIFEST_NAME: &str = "manifest.json";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub name: String,
    pub bytes: u64,
    pub sha256: String,
}

/// Index of a simulation output directory.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub complete: bool,
    pub abort: Option<String>,
    pub t_end: f64,
    pub c_r: f64,
    pub config: String,
    pub files: Vec<ManifestEntry>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl Manifest {
    pub fn entry(name: &str, bytes: &[u8]) -> ManifestEntry {
        ManifestEntry {
            name: name.to_string(),
            bytes: bytes.len() as u64,
            sha256: sha256_hex(bytes),
        }
    }

    pub fn save(&self, dir: &Path) -> Result<()> {
        let mut text = serde_json::to_string_pretty(self).map_err(|e| crate::Error::Format(e.to_string()))?;
        text.push('\n');
        atomic_write(&dir.join(MANIFEST_NAME), text.as_bytes())
    }

    pub fn load(dir: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(dir.join(MANIFEST_NAME))?;
        serde_json::from_str(&text).map_err(|e| crate::Error::Format(e.to_string()))
    }

    /// Names of listed files whose current contents no longer match.
    pub fn verify(&self, dir: &Path) -> Result<Vec<String>> {
        let mut bad = Vec::new();
        for f in &self.files {
            let bytes = std::fs::read(dir.join(&f.name))?;
            if sha256_hex(&bytes) != f.sha256 {
                bad.push(f.name.clone());
            }
        }
        Ok(bad)
    }
}
