use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::spectral::{
    dealias, leray_project, random_scalar_with, Grid3, PhysicalVectorField, SpectralField,
    SpectralVectorField,
};
use crate::{Error, Result};

/// Initial condition families, tagged by `kind` in configuration files.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum InitialData {
    /// `u₀ = A (sin x cos y, -cos x sin y, 0)`, optionally with random
    /// velocity and magnetic perturbations of the given energies.
    TaylorGreen {
        #[serde(default = "one")]
        amplitude: f64,
        #[serde(default)]
        perturbation_energy: f64,
        #[serde(default)]
        magnetic_energy: f64,
        #[serde(default = "default_peak")]
        peak_shell: u32,
    },
    /// Random solenoidal fields with energy spectrum
    /// `E(k) ∝ (k/k_p)^s exp(-(s/2)(k/k_p)²)`, `k_p = 1.25·2^peak_shell`.
    RandomSpectrum {
        slope: f64,
        energy: f64,
        peak_shell: u32,
        #[serde(default)]
        magnetic_energy: f64,
    },
    /// 2.5D Orszag–Tang vortex: `u = (-sin y, sin x, 0)`, `b = (-sin y, sin 2x, 0)`.
    OrszagTang,
}

fn one() -> f64 {
    1.0
}

fn default_peak() -> u32 {
    1
}

pub const INITIAL_KINDS: &str = "taylor-green, random-spectrum, orszag-tang";

impl InitialData {
    /// Default parameters for a named kind.
    pub fn from_kind(kind: &str) -> Result<Self> {
        match kind {
            "taylor-green" => Ok(Self::taylor_green()),
            "random-spectrum" => Ok(Self::RandomSpectrum {
                slope: 4.0,
                energy: 1.0,
                peak_shell: 1,
                magnetic_energy: 0.0,
            }),
            "orszag-tang" => Ok(Self::OrszagTang),
            other => Err(Error::Unknown {
                kind: "initial data",
                name: other.to_string(),
                available: INITIAL_KINDS.into(),
            }),
        }
    }

    pub fn taylor_green() -> Self {
        Self::TaylorGreen {
            amplitude: 1.0,
            perturbation_energy: 0.0,
            magnetic_energy: 0.0,
            peak_shell: 1,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Self::TaylorGreen { .. } => "taylor-green",
            Self::RandomSpectrum { .. } => "random-spectrum",
            Self::OrszagTang => "orszag-tang",
        }
    }

    /// Builds `(u₀, b₀)` on `grid`; `seed` drives the random components.
    pub fn build(&self, grid: Grid3, seed: u64) -> Result<(SpectralVectorField, SpectralVectorField)> {
        match *self {
            Self::TaylorGreen {
                amplitude,
                perturbation_energy,
                magnetic_energy,
                peak_shell,
            } => {
                let mut u = taylor_green(grid, amplitude);
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                if perturbation_energy > 0.0 {
                    let p = random_solenoidal(grid, &mut rng, 4.0, perturbation_energy, peak_shell)?;
                    u.axpy(1.0, &p)?;
                }
                let b = if magnetic_energy > 0.0 {
                    random_solenoidal(grid, &mut rng, 4.0, magnetic_energy, peak_shell)?
                } else {
                    SpectralVectorField::zeros(grid)
                };
                Ok((u, b))
            }
            Self::RandomSpectrum {
                slope,
                energy,
                peak_shell,
                magnetic_energy,
            } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let u = random_solenoidal(grid, &mut rng, slope, energy, peak_shell)?;
                let b = if magnetic_energy > 0.0 {
                    random_solenoidal(grid, &mut rng, slope, magnetic_energy, peak_shell)?
                } else {
                    SpectralVectorField::zeros(grid)
                };
                Ok((u, b))
            }
            Self::OrszagTang => {
                let u = PhysicalVectorField::from_fn(grid, |x, y, _| [-y.sin(), x.sin(), 0.0]);
                let b = PhysicalVectorField::from_fn(grid, |x, y, _| [-y.sin(), (2.0 * x).sin(), 0.0]);
                Ok((clean(u.to_spectral()), clean(b.to_spectral())))
            }
        }
    }
}

/// `A (sin x cos y, -cos x sin y, 0)`.
pub fn taylor_green(grid: Grid3, amplitude: f64) -> SpectralVectorField {
    let u = PhysicalVectorField::from_fn(grid, |x, y, _| {
        [amplitude * x.sin() * y.cos(), -amplitude * x.cos() * y.sin(), 0.0]
    });
    clean(u.to_spectral())
}

// drops transform round-off below 1e-15 of the largest coefficient
fn clean(v: SpectralVectorField) -> SpectralVectorField {
    let grid = v.grid();
    let scale = v
        .components()
        .iter()
        .flat_map(|c| c.coeffs().iter().map(|x| x.norm()))
        .fold(0.0, f64::max);
    let mut out = v;
    for c in 0..3 {
        for x in out.component_mut(c).coeffs_mut() {
            if x.norm() <= 1e-15 * scale {
                *x = Default::default();
            }
        }
    }
    debug_assert_eq!(out.grid(), grid);
    out
}

fn random_solenoidal(
    grid: Grid3,
    rng: &mut ChaCha8Rng,
    slope: f64,
    energy: f64,
    peak_shell: u32,
) -> Result<SpectralVectorField> {
    if !(slope > 0.0) || !(energy >= 0.0) {
        return Err(Error::Config(format!(
            "random spectrum needs slope > 0 and energy >= 0 (slope {slope}, energy {energy})"
        )));
    }
    let kp = 1.25 * 2f64.powi(peak_shell as i32);
    // per-mode amplitude ∝ sqrt(E(k) / k²)
    let envelope = |k: f64| {
        if k == 0.0 {
            return 0.0;
        }
        let x = k / kp;
        (x.powf(slope) * (-0.5 * slope * x * x).exp()).sqrt() / k
    };
    let raw = SpectralVectorField::new(std::array::from_fn(|_| random_scalar_with(grid, rng, envelope)))?;
    let v = leray_project(&dealias(&raw));
    let current = 0.5 * grid.box_length().powi(3) * v.coefficient_energy();
    if current == 0.0 {
        return if energy == 0.0 {
            Ok(v)
        } else {
            Err(Error::Config("random spectrum has no resolved modes".into()))
        };
    }
    Ok(v.scaled((energy / current).sqrt()))
}
