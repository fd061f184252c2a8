use std::fmt;
use std::sync::Arc;

use crate::{Error, Result};

/// Radius below which the cutoff is identically one.
pub const INNER_RADIUS: f64 = 0.75;
/// Radius above which the cutoff vanishes.
pub const OUTER_RADIUS: f64 = 1.0;

type TransitionFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

#[derive(Clone)]
enum Transition {
    /// `ψ(t) = e(t) / (e(t) + e(1-t))`, `e(t) = exp(-a/t)`, evaluated at
    /// `t = (1-ρ)/(1-3/4)`.
    Smooth { steepness: f64 },
    Custom { label: String, f: TransitionFn },
}

/// Radial cutoff `χ`: one on `ρ <= 3/4`, zero on `ρ >= 1`, with a monotone
/// transition in between.
#[derive(Clone)]
pub struct CutoffProfile {
    transition: Transition,
}

impl fmt::Debug for CutoffProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CutoffProfile({})", self.label())
    }
}

impl Default for CutoffProfile {
    fn default() -> Self {
        Self::smooth()
    }
}

fn bump(t: f64, a: f64) -> f64 {
    if t <= 0.0 {
        0.0
    } else {
        (-a / t).exp()
    }
}

impl CutoffProfile {
    /// The default `C^∞` profile.
    pub fn smooth() -> Self {
        Self {
            transition: Transition::Smooth { steepness: 1.0 },
        }
    }

    /// `C^∞` profile with a different steepness `a > 0` in `exp(-a/t)`.
    pub fn smooth_with_steepness(steepness: f64) -> Result<Self> {
        if !(steepness.is_finite() && steepness > 0.0) {
            return Err(Error::InvalidProfile(format!(
                "steepness must be positive, got {steepness}"
            )));
        }
        Ok(Self {
            transition: Transition::Smooth { steepness },
        })
    }

    /// Profile whose transition on `(3/4, 1)` is `f(ρ)`. Endpoint values and
    /// monotonicity are checked by [`CutoffProfile::validate`].
    pub fn custom(label: impl Into<String>, f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Self {
            transition: Transition::Custom {
                label: label.into(),
                f: Arc::new(f),
            },
        }
    }

    pub fn label(&self) -> String {
        match &self.transition {
            Transition::Smooth { steepness } => format!("smooth(a={steepness})"),
            Transition::Custom { label, .. } => format!("custom({label})"),
        }
    }

    fn transition(&self, rho: f64) -> f64 {
        match &self.transition {
            Transition::Smooth { steepness } => {
                let t = (OUTER_RADIUS - rho) / (OUTER_RADIUS - INNER_RADIUS);
                let e0 = bump(t, *steepness);
                let e1 = bump(1.0 - t, *steepness);
                e0 / (e0 + e1)
            }
            Transition::Custom { f, .. } => f(rho),
        }
    }

    /// `χ(ρ)` for `ρ >= 0`.
    pub fn chi(&self, rho: f64) -> f64 {
        if rho <= INNER_RADIUS {
            1.0
        } else if rho >= OUTER_RADIUS {
            0.0
        } else {
            self.transition(rho)
        }
    }

    /// Checks endpoint values, range and monotonicity of the transition.
    pub fn validate(&self) -> Result<()> {
        let at_inner = self.transition(INNER_RADIUS);
        let at_outer = self.transition(OUTER_RADIUS);
        if (at_inner - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidProfile(format!(
                "transition must equal 1 at 3/4, got {at_inner}"
            )));
        }
        if at_outer.abs() > 1e-12 {
            return Err(Error::InvalidProfile(format!(
                "transition must equal 0 at 1, got {at_outer}"
            )));
        }
        let samples = 1024;
        let mut prev = 1.0;
        for i in 0..=samples {
            let rho = INNER_RADIUS + (OUTER_RADIUS - INNER_RADIUS) * i as f64 / samples as f64;
            let v = self.chi(rho);
            if !(0.0..=1.0).contains(&v) || v.is_nan() {
                return Err(Error::InvalidProfile(format!("χ({rho}) = {v} outside [0, 1]")));
            }
            if v > prev + 1e-15 {
                return Err(Error::InvalidProfile(format!("χ increases near ρ = {rho}")));
            }
            prev = v;
        }
        Ok(())
    }
}
