use std::ops::RangeInclusive;

use super::profile::CutoffProfile;
use crate::spectral::{Grid3, SpectralField};
use crate::{Error, Result};

/// Dyadic frequency `λ_q = 2^q`, extended to `q = -1` as `1/2`.
#[inline]
pub fn lambda(q: i32) -> f64 {
    2f64.powi(q)
}

/// Tabulated Littlewood-Paley multipliers `φ_q(k)` for `q = -1 ..= q_max`,
/// with `φ_{-1} = χ` and `φ_q(ξ) = χ(ξ/2^{q+1}) - χ(ξ/2^q)` for `q >= 0`.
#[derive(Clone, Debug)]
pub struct DyadicPartition {
    grid: Grid3,
    profile: CutoffProfile,
    q_max: i32,
    multipliers: Vec<Vec<f64>>,
    // cumulative[q + 1] = Σ_{p <= q} φ_p
    cumulative: Vec<Vec<f64>>,
}

impl DyadicPartition {
    pub fn build(grid: Grid3, profile: CutoffProfile) -> Result<Self> {
        profile.validate()?;
        let q_max = grid.q_max();
        let radii: Vec<f64> = (0..grid.len()).map(|f| grid.k_squared(f).sqrt()).collect();
        let multipliers: Vec<Vec<f64>> = (-1..=q_max)
            .map(|q| {
                radii
                    .iter()
                    .map(|&r| {
                        if q < 0 {
                            profile.chi(r)
                        } else {
                            profile.chi(r / lambda(q + 1)) - profile.chi(r / lambda(q))
                        }
                    })
                    .collect()
            })
            .collect();
        let mut cumulative = Vec::with_capacity(multipliers.len());
        let mut acc = vec![0.0; grid.len()];
        for m in &multipliers {
            for (a, x) in acc.iter_mut().zip(m) {
                *a += x;
            }
            cumulative.push(acc.clone());
        }
        Ok(Self {
            grid,
            profile,
            q_max,
            multipliers,
            cumulative,
        })
    }

    pub fn with_default_profile(grid: Grid3) -> Self {
        Self::build(grid, CutoffProfile::smooth()).expect("default profile is valid")
    }

    pub fn grid(&self) -> Grid3 {
        self.grid
    }

    pub fn profile(&self) -> &CutoffProfile {
        &self.profile
    }

    pub fn q_max(&self) -> i32 {
        self.q_max
    }

    pub fn shells(&self) -> RangeInclusive<i32> {
        -1..=self.q_max
    }

    fn check_q(&self, q: i32) -> Result<usize> {
        if q < -1 || q > self.q_max {
            return Err(Error::ShellIndex { q, q_max: self.q_max });
        }
        Ok((q + 1) as usize)
    }

    fn check_grid(&self, g: Grid3) -> Result<()> {
        if g != self.grid {
            return Err(Error::GridMismatch(g.n(), self.grid.n()));
        }
        Ok(())
    }

    pub fn multiplier(&self, q: i32) -> Result<&[f64]> {
        Ok(&self.multipliers[self.check_q(q)?])
    }

    /// `φ_q(k)` at a single wavevector.
    pub fn value(&self, q: i32, k: [i64; 3]) -> Result<f64> {
        Ok(self.multipliers[self.check_q(q)?][self.grid.flat_of(k)])
    }

    /// `max_k |Σ_q φ_q(k) - 1|` over every grid wavevector.
    pub fn partition_defect(&self) -> f64 {
        self.cumulative
            .last()
            .expect("at least one shell")
            .iter()
            .map(|s| (s - 1.0).abs())
            .fold(0.0, f64::max)
    }

    /// `Δ_q u`.
    pub fn project_shell<F: SpectralField>(&self, u: &F, q: i32) -> Result<F> {
        self.check_grid(u.grid())?;
        Ok(u.apply_multiplier(self.multiplier(q)?))
    }

    /// `u_{<=q} = Σ_{p=-1}^{q} u_p`; zero for `q < -1`, all of `u` for
    /// `q >= q_max`.
    pub fn low_pass<F: SpectralField>(&self, u: &F, q: i32) -> Result<F> {
        self.check_grid(u.grid())?;
        if q < -1 {
            return Ok(u.zeros_like());
        }
        let idx = (q.min(self.q_max) + 1) as usize;
        Ok(u.apply_multiplier(&self.cumulative[idx]))
    }

    /// `u_{(p,q]} = Σ_{j=p+1}^{q} u_j`.
    pub fn band<F: SpectralField>(&self, u: &F, p: i32, q: i32) -> Result<F> {
        let mut hi = self.low_pass(u, q)?;
        if q > p {
            hi.axpy(-1.0, &self.low_pass(u, p)?)?;
            Ok(hi)
        } else {
            Ok(u.zeros_like())
        }
    }

    /// `ũ_q = u_{q-1} + u_q + u_{q+1}` (out-of-range shells are zero).
    pub fn neighborhood<F: SpectralField>(&self, u: &F, q: i32) -> Result<F> {
        self.band(u, q - 2, q + 1)
    }

    pub fn decompose<F: SpectralField>(&self, u: &F) -> Result<ShellDecomposition<F>> {
        self.check_grid(u.grid())?;
        let shells = self
            .shells()
            .map(|q| self.project_shell(u, q))
            .collect::<Result<Vec<_>>>()?;
        Ok(ShellDecomposition {
            grid: self.grid,
            shells,
        })
    }
}

/// The shells `u_q`, `q = -1 ..= q_max`, of one field.
#[derive(Clone, Debug)]
pub struct ShellDecomposition<F> {
    grid: Grid3,
    shells: Vec<F>,
}

impl<F: SpectralField> ShellDecomposition<F> {
    pub fn source_grid(&self) -> Grid3 {
        self.grid
    }

    pub fn q_max(&self) -> i32 {
        self.shells.len() as i32 - 2
    }

    pub fn shell(&self, q: i32) -> Option<&F> {
        if q < -1 {
            return None;
        }
        self.shells.get((q + 1) as usize)
    }

    /// `(q, u_q)` pairs in increasing `q`.
    pub fn iter(&self) -> impl Iterator<Item = (i32, &F)> {
        self.shells.iter().enumerate().map(|(i, s)| (i as i32 - 1, s))
    }

    /// `Σ_q u_q`.
    pub fn reconstruct(&self) -> F {
        let mut acc = self.shells[0].zeros_like();
        for s in &self.shells {
            acc.axpy(1.0, s).expect("shells share the source grid");
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::{random_vector, SpectralScalarField, SpectralVectorField};
    use num_complex::Complex64;

    #[test]
    fn partition_of_unity() {
        for n in [8, 16, 32] {
            let p = DyadicPartition::with_default_profile(Grid3::new(n).unwrap());
            assert!(p.partition_defect() <= 1e-12);
        }
    }

    #[test]
    fn forced_placements() {
        let p = DyadicPartition::with_default_profile(Grid3::new(16).unwrap());
        for q in p.shells() {
            let at3 = p.value(q, [3, 0, 0]).unwrap();
            let at0 = p.value(q, [0, 0, 0]).unwrap();
            assert_eq!(at3, if q == 1 { 1.0 } else { 0.0 });
            assert_eq!(at0, if q == -1 { 1.0 } else { 0.0 });
        }
        // |k| = √3 is split between shells 0 and 1 by the transition
        let s0 = p.value(0, [1, 1, 1]).unwrap();
        let s1 = p.value(1, [1, 1, 1]).unwrap();
        assert!(s0 > 0.0 && s1 > 0.0);
        assert!((s0 + s1 - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn support_of_shells() {
        let p = DyadicPartition::with_default_profile(Grid3::new(32).unwrap());
        let g = p.grid();
        for q in 0..=p.q_max() {
            let m = p.multiplier(q).unwrap();
            for f in 0..g.len() {
                let r = g.k_squared(f).sqrt();
                if m[f] != 0.0 {
                    assert!(0.75 * lambda(q) < r && r < lambda(q + 1));
                }
            }
        }
    }

    #[test]
    fn single_mode_projection() {
        let g = Grid3::new(16).unwrap();
        let p = DyadicPartition::with_default_profile(g);
        let u = SpectralVectorField::new([
            SpectralScalarField::zeros(g),
            SpectralScalarField::from_modes(g, &[([0, 3, 0], Complex64::new(0.5, 0.2))]),
            SpectralScalarField::zeros(g),
        ])
        .unwrap();
        assert_eq!(p.project_shell(&u, 1).unwrap(), u);
        assert_eq!(p.project_shell(&u, 0).unwrap().coefficient_energy(), 0.0);
        assert_eq!(p.project_shell(&u, 2).unwrap().coefficient_energy(), 0.0);
        assert!(matches!(
            p.project_shell(&u, 9),
            Err(Error::ShellIndex { q: 9, .. })
        ));
        let zero = SpectralVectorField::zeros(g);
        assert_eq!(p.project_shell(&zero, 2).unwrap(), zero);
    }

    #[test]
    fn reconstruction_and_orthogonality() {
        let g = Grid3::new(16).unwrap();
        let p = DyadicPartition::with_default_profile(g);
        let u = random_vector(g, 21);
        let d = p.decompose(&u).unwrap();
        let err = d.reconstruct().difference(&u).unwrap().l2_norm_spectral();
        assert!(err <= 1e-12 * u.l2_norm_spectral());
        for q in p.shells() {
            for r in p.shells() {
                if (q - r).abs() >= 2 {
                    let both = p.project_shell(d.shell(r).unwrap(), q).unwrap();
                    assert_eq!(both.coefficient_energy(), 0.0);
                }
            }
        }
    }
}
