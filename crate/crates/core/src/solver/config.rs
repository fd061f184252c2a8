use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Time-integration scheme. Both treat the viscous and resistive terms with
/// an exact integrating factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scheme {
    IfRk4,
    IfEuler,
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scheme::IfRk4 => "if-rk4",
            Scheme::IfEuler => "if-euler",
        })
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "if-rk4" => Ok(Scheme::IfRk4),
            "if-euler" => Ok(Scheme::IfEuler),
            other => Err(Error::Unknown {
                kind: "scheme",
                name: other.to_string(),
                available: "if-rk4, if-euler".into(),
            }),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DealiasRule {
    #[default]
    TwoThirds,
}

/// Largest admissible Courant number `dt · max|u| · n / 2π`.
pub const MAX_COURANT: f64 = 0.5;

#[derive(Clone, Debug, PartialEq)]
pub struct SolverConfig {
    pub nu: f64,
    pub mu: f64,
    pub dt: f64,
    pub t_end: f64,
    pub scheme: Scheme,
    pub dealias_rule: DealiasRule,
    pub snapshot_interval: f64,
    pub seed: u64,
    /// When false the quadratic terms are dropped (Stokes/linear limit).
    pub nonlinear: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            nu: 0.1,
            mu: 0.1,
            dt: 1e-3,
            t_end: 1.0,
            scheme: Scheme::IfRk4,
            dealias_rule: DealiasRule::TwoThirds,
            snapshot_interval: 0.1,
            seed: 0,
            nonlinear: true,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(msg));
        if !(self.nu > 0.0 && self.nu.is_finite()) {
            return bad(format!("nu must be positive, got {}", self.nu));
        }
        if !(self.mu > 0.0 && self.mu.is_finite()) {
            return bad(format!("mu must be positive, got {}", self.mu));
        }
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return bad(format!("dt must be positive, got {}", self.dt));
        }
        if !(self.t_end >= 0.0 && self.t_end.is_finite()) {
            return bad(format!("t_end must be nonnegative, got {}", self.t_end));
        }
        if self.snapshot_interval < self.dt * (1.0 - 1e-12) {
            return bad(format!(
                "snapshot_interval {} is shorter than dt {}",
                self.snapshot_interval, self.dt
            ));
        }
        let ratio = self.snapshot_interval / self.dt;
        if (ratio - ratio.round()).abs() > 1e-9 * ratio {
            return bad(format!(
                "snapshot_interval {} is not a multiple of dt {}",
                self.snapshot_interval, self.dt
            ));
        }
        let steps = self.t_end / self.dt;
        if (steps - steps.round()).abs() > 1e-9 * steps.max(1.0) {
            return bad(format!("t_end {} is not a multiple of dt {}", self.t_end, self.dt));
        }
        Ok(())
    }

    pub fn total_steps(&self) -> usize {
        (self.t_end / self.dt).round() as usize
    }

    pub fn snapshot_stride(&self) -> usize {
        ((self.snapshot_interval / self.dt).round() as usize).max(1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(SolverConfig::default().validate().is_ok());
        let mut c = SolverConfig {
            snapshot_interval: 0.0005,
            ..Default::default()
        };
        assert!(c.validate().is_err());
        c.snapshot_interval = 0.0025;
        assert!(c.validate().is_err());
        c.snapshot_interval = 0.002;
        assert!(c.validate().is_ok());
        c.nu = 0.0;
        assert!(c.validate().is_err());
        assert_eq!("if-euler".parse::<Scheme>().unwrap(), Scheme::IfEuler);
        assert!("rk45".parse::<Scheme>().is_err());
    }
}
