use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Exponents and thresholds shared by all criterion evaluations.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct CriterionConfig {
    /// Lebesgue exponent `r`; `f64::INFINITY` is only admissible when `b ≡ 0`.
    pub r: f64,
    /// Time exponent `l >= 1`.
    pub l: f64,
    /// Sobolev smoothness `s ∈ (1/2, 1)`.
    pub s: f64,
    /// Threshold constant `c_r > 0`.
    pub c_r: f64,
    /// Number of rungs `ε = (T/2)·2^{-j}` in the shrinking-window ladder.
    pub eps_depth: u32,
    /// Cap on measured constants in the inequality chain.
    pub c_cap: f64,
}

impl Default for CriterionConfig {
    fn default() -> Self {
        Self {
            r: 2.0,
            l: 2.0,
            s: 0.75,
            c_r: 0.01,
            eps_depth: 8,
            c_cap: 10.0,
        }
    }
}

impl CriterionConfig {
    /// Checks the admissible ranges; `magnetic` selects the MHD constraint
    /// `2 <= r < min(6, 3/s)`.
    pub fn validate(&self, magnetic: bool) -> Result<()> {
        let bad = |m: String| Err(Error::Config(m));
        if !(self.s > 0.5 && self.s < 1.0) {
            return bad(format!("s must lie in (1/2, 1), got {}", self.s));
        }
        if self.r.is_nan() || self.r < 2.0 {
            return bad(format!("r must be >= 2, got {}", self.r));
        }
        if magnetic && !(self.r < 6.0 && self.r < 3.0 / self.s) {
            return bad(format!(
                "with a magnetic field r must satisfy r < 6 and r < 3/s = {}, got {}",
                3.0 / self.s,
                self.r
            ));
        }
        if !(self.l >= 1.0 && self.l.is_finite()) {
            return bad(format!("l must be a finite number >= 1, got {}", self.l));
        }
        if !(self.c_r > 0.0 && self.c_r.is_finite()) {
            return bad(format!("c_r must be positive, got {}", self.c_r));
        }
        if !(self.c_cap > 0.0) {
            return bad(format!("c_cap must be positive, got {}", self.c_cap));
        }
        if self.eps_depth == 0 {
            return bad("eps_depth must be at least 1".into());
        }
        Ok(())
    }

    /// Exponent `-1 + 2/l + 3/r` of the weighted shell norms.
    pub fn sigma(&self) -> f64 {
        -1.0 + 2.0 / self.l + 3.0 / self.r
    }

    /// Exponent `-1 + 3/r` of the dissipation-wavenumber test.
    pub fn wave_exponent(&self) -> f64 {
        -1.0 + 3.0 / self.r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        let c = CriterionConfig::default();
        assert!(c.validate(true).is_ok());
        let inf = CriterionConfig {
            r: f64::INFINITY,
            ..c.clone()
        };
        assert!(inf.validate(false).is_ok());
        assert!(inf.validate(true).is_err());
        let coupled = CriterionConfig { r: 4.5, s: 0.7, ..c.clone() };
        assert!(coupled.validate(true).is_err());
        assert!(coupled.validate(false).is_ok());
        assert!(CriterionConfig { s: 1.0, ..c.clone() }.validate(false).is_err());
        assert!(CriterionConfig { c_r: 0.0, ..c }.validate(false).is_err());
    }
}
