use super::partition::{lambda, DyadicPartition};
use crate::spectral::{check_exponent, SpectralField};
use crate::{Error, Result};

/// `‖u_q‖_p` for every shell `q = -1 ..= q_max`.
pub fn shell_norms<F: SpectralField>(u: &F, p_exp: f64, part: &DyadicPartition) -> Result<Vec<f64>> {
    check_exponent(p_exp)?;
    part.shells()
        .map(|q| part.project_shell(u, q)?.lebesgue_norm(p_exp))
        .collect()
}

/// `‖u‖_{B^s_{p,∞}} = sup_q λ_q^s ‖u_q‖_p` over the representable shells.
pub fn besov_norm<F: SpectralField>(u: &F, s: f64, p_exp: f64, part: &DyadicPartition) -> Result<f64> {
    let norms = shell_norms(u, p_exp, part)?;
    Ok(part
        .shells()
        .zip(norms)
        .map(|(q, n)| lambda(q).powf(s) * n)
        .fold(0.0, f64::max))
}

/// Dyadic `H^s` norm `(Σ_q λ_q^{2s} ‖u_q‖₂²)^{1/2}`.
pub fn sobolev_norm<F: SpectralField>(u: &F, s: f64, part: &DyadicPartition) -> Result<f64> {
    let mut acc = 0.0;
    for q in part.shells() {
        let uq = part.project_shell(u, q)?;
        acc += lambda(q).powf(2.0 * s) * uq.l2_norm_spectral().powi(2);
    }
    Ok(acc.sqrt())
}

/// Measured Bernstein constant
/// `‖u_q‖_r / (λ_q^{3(1/s - 1/r)} ‖u_q‖_s)` for a field localized in shell `q`.
pub fn bernstein_ratio<F: SpectralField>(u_q: &F, q: i32, r: f64, s_exp: f64) -> Result<f64> {
    check_exponent(r)?;
    check_exponent(s_exp)?;
    if r < s_exp {
        return Err(Error::InvalidExponent(r));
    }
    let numerator = u_q.lebesgue_norm(r)?;
    let denominator = lambda(q).powf(3.0 * (1.0 / s_exp - 1.0 / r)) * u_q.lebesgue_norm(s_exp)?;
    if denominator == 0.0 {
        return Err(Error::UndefinedRatio);
    }
    Ok(numerator / denominator)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::{random_vector, Grid3, SpectralScalarField};
    use num_complex::Complex64;
    use std::f64::consts::PI;

    fn cos3x(g: Grid3) -> SpectralScalarField {
        SpectralScalarField::from_modes(g, &[([3, 0, 0], Complex64::new(0.5, 0.0))])
    }

    #[test]
    fn besov_of_single_shell_cosine() {
        let g = Grid3::new(16).unwrap();
        let part = DyadicPartition::with_default_profile(g);
        let f = cos3x(g);
        let expected = 2.0 * (2.0 * PI).powf(1.5) / 2f64.sqrt();
        let got = besov_norm(&f, 1.0, 2.0, &part).unwrap();
        assert!((got - expected).abs() <= 1e-12 * expected);
        let zero = SpectralScalarField::zeros(g);
        assert_eq!(besov_norm(&zero, 1.0, 2.0, &part).unwrap(), 0.0);
    }

    #[test]
    fn sobolev_examples() {
        let g = Grid3::new(16).unwrap();
        let part = DyadicPartition::with_default_profile(g);
        let f = cos3x(g);
        let e = f.lebesgue_norm(2.0).unwrap();
        for s in [0.5, 0.75, 1.0] {
            let got = sobolev_norm(&f, s, &part).unwrap();
            assert!((got - 2f64.powf(s) * e).abs() <= 1e-12 * got);
        }
        let zero = SpectralScalarField::zeros(g);
        assert_eq!(sobolev_norm(&zero, 0.7, &part).unwrap(), 0.0);
    }

    #[test]
    fn besov_bounded_by_sobolev_at_zero_smoothness() {
        let g = Grid3::new(16).unwrap();
        let part = DyadicPartition::with_default_profile(g);
        for seed in 0..5 {
            let u = random_vector(g, seed);
            assert!(besov_norm(&u, 0.0, 2.0, &part).unwrap() <= sobolev_norm(&u, 0.0, &part).unwrap());
        }
    }

    #[test]
    fn bernstein_examples() {
        let g = Grid3::new(16).unwrap();
        let f = cos3x(g);
        assert!((bernstein_ratio(&f, 1, 2.0, 2.0).unwrap() - 1.0).abs() < 1e-15);
        let expected = 1.0 / (2f64.powf(1.5) * 2.0 * PI * PI.sqrt());
        let got = bernstein_ratio(&f, 1, f64::INFINITY, 2.0).unwrap();
        assert!((got - expected).abs() <= 1e-12 * expected);
        assert!((expected - 0.03175).abs() < 1e-5);
        let zero = SpectralScalarField::zeros(g);
        assert!(matches!(
            bernstein_ratio(&zero, 1, 4.0, 2.0),
            Err(Error::UndefinedRatio)
        ));
        assert!(bernstein_ratio(&f, 1, 2.0, 4.0).is_err());
    }
}
