use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::diagnostics::CriterionConfig;
use crate::solver::{DealiasRule, InitialData, Scheme, SolverConfig};
use crate::spectral::Grid3;
use crate::{Error, Result};

/// `[solver]` section of a run configuration.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolverSection {
    pub n: usize,
    pub nu: f64,
    pub mu: f64,
    pub dt: f64,
    pub t_end: f64,
    #[serde(default = "default_scheme")]
    pub scheme: Scheme,
    #[serde(default)]
    pub dealias_rule: DealiasRule,
    pub snapshot_interval: f64,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "yes")]
    pub nonlinear: bool,
    pub initial: InitialData,
}

fn default_scheme() -> Scheme {
    Scheme::IfRk4
}

fn yes() -> bool {
    true
}

/// Run configuration file: a `[solver]` table (with an `[solver.initial]`
/// subtable) and an optional `[criteria]` table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub solver: SolverSection,
    #[serde(default)]
    pub criteria: CriterionConfig,
}

/// Configuration file holding only a `[criteria]` table.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CriteriaFile {
    #[serde(default)]
    pub criteria: CriterionConfig,
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let cfg: Self = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn validate(&self) -> Result<()> {
        Grid3::new(self.solver.n)?;
        self.solver_config().validate()
    }

    pub fn grid(&self) -> Result<Grid3> {
        Grid3::new(self.solver.n)
    }

    pub fn solver_config(&self) -> SolverConfig {
        let s = &self.solver;
        SolverConfig {
            nu: s.nu,
            mu: s.mu,
            dt: s.dt,
            t_end: s.t_end,
            scheme: s.scheme,
            dealias_rule: s.dealias_rule,
            snapshot_interval: s.snapshot_interval,
            seed: s.seed,
            nonlinear: s.nonlinear,
        }
    }

    /// Canonical TOML rendering used as the provenance echo.
    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("run config serializes")
    }
}

impl CriteriaFile {
    /// Accepts either a criteria-only file or a full run configuration.
    pub fn parse(text: &str) -> Result<Self> {
        match toml::from_str::<Self>(text) {
            Ok(c) => Ok(c),
            Err(first) => match toml::from_str::<RunConfig>(text) {
                Ok(run) => Ok(Self { criteria: run.criteria }),
                Err(_) => Err(Error::Config(first.to_string())),
            },
        }
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("criteria config serializes")
    }
}
