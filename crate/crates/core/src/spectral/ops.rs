use num_complex::Complex64;

use super::field::{SpectralField, SpectralScalarField, SpectralVectorField};
use super::grid::Grid3;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Leray projection onto divergence-free fields:
/// `v̂ ↦ v̂ - k (k·v̂)/|k|²` for `k ≠ 0`; the mean mode is left untouched.
pub fn leray_project(v: &SpectralVectorField) -> SpectralVectorField {
    let grid = v.grid();
    let [a, b, c] = v.components();
    let (a, b, c) = (a.coeffs(), b.coeffs(), c.coeffs());
    let mut out = [a.to_vec(), b.to_vec(), c.to_vec()];
    for f in 0..grid.len() {
        let k = grid.derivative_wavevector(f);
        let k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
        if k2 == 0.0 {
            continue;
        }
        let dot = (a[f] * k[0] + b[f] * k[1] + c[f] * k[2]) / k2;
        out[0][f] -= dot * k[0];
        out[1][f] -= dot * k[1];
        out[2][f] -= dot * k[2];
    }
    SpectralVectorField::from_coeffs(grid, out).expect("same grid")
}

/// `(∇×v)^(k) = i k × v̂(k)`.
pub fn curl(v: &SpectralVectorField) -> SpectralVectorField {
    let grid = v.grid();
    let [a, b, c] = v.components();
    let (a, b, c) = (a.coeffs(), b.coeffs(), c.coeffs());
    let mut out: [Vec<Complex64>; 3] = std::array::from_fn(|_| vec![Complex64::default(); grid.len()]);
    for f in 0..grid.len() {
        let k = grid.derivative_wavevector(f);
        out[0][f] = I * (c[f] * k[1] - b[f] * k[2]);
        out[1][f] = I * (a[f] * k[2] - c[f] * k[0]);
        out[2][f] = I * (b[f] * k[0] - a[f] * k[1]);
    }
    SpectralVectorField::from_coeffs(grid, out).expect("same grid")
}

/// `(∇g)^(k) = i k ĝ(k)`.
pub fn gradient(g: &SpectralScalarField) -> SpectralVectorField {
    let grid = g.grid();
    let gc = g.coeffs();
    let out: [Vec<Complex64>; 3] = std::array::from_fn(|d| {
        (0..grid.len())
            .map(|f| I * gc[f] * grid.derivative_wavevector(f)[d])
            .collect()
    });
    SpectralVectorField::from_coeffs(grid, out).expect("same grid")
}

/// `(∇·v)^(k) = i k·v̂(k)`.
pub fn divergence(v: &SpectralVectorField) -> SpectralScalarField {
    let grid = v.grid();
    let [a, b, c] = v.components();
    let (a, b, c) = (a.coeffs(), b.coeffs(), c.coeffs());
    let out = (0..grid.len())
        .map(|f| {
            let k = grid.derivative_wavevector(f);
            I * (a[f] * k[0] + b[f] * k[1] + c[f] * k[2])
        })
        .collect();
    SpectralScalarField::new(grid, out).expect("same grid")
}

/// Two-thirds rule mask: 1 where every `|k_i| <= n/3`, 0 otherwise.
pub fn dealias_mask(grid: Grid3) -> Vec<f64> {
    let cut = grid.n() as f64 / 3.0;
    (0..grid.len())
        .map(|f| {
            let k = grid.wavevector(f);
            if k.iter().all(|&c| (c.abs() as f64) <= cut) {
                1.0
            } else {
                0.0
            }
        })
        .collect()
}

/// Zeroes every coefficient with some `|k_i| > n/3`.
pub fn dealias<F: SpectralField>(v: &F) -> F {
    v.apply_multiplier(&dealias_mask(v.grid()))
}

/// `|k|²` multiplier (the negative Laplacian symbol).
pub fn laplacian_symbol(grid: Grid3) -> Vec<f64> {
    grid.k_squared_table()
}

/// `‖∇v‖₂² = (2π)³ Σ |k|² |v̂(k)|²`.
pub fn gradient_energy(v: &SpectralVectorField) -> f64 {
    let grid = v.grid();
    let vol = grid.box_length().powi(3);
    let s: f64 = v
        .components()
        .iter()
        .map(|c| {
            c.coeffs()
                .iter()
                .enumerate()
                .map(|(f, x)| grid.k_squared(f) * x.norm_sqr())
                .sum::<f64>()
        })
        .sum();
    vol * s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::random_vector;

    fn grid(n: usize) -> Grid3 {
        Grid3::new(n).unwrap()
    }

    #[test]
    fn leray_removes_longitudinal_part() {
        let g = grid(16);
        let one = Complex64::new(1.0, 0.0);
        let v = SpectralVectorField::new([
            SpectralScalarField::from_modes(g, &[([1, 0, 0], one)]),
            SpectralScalarField::from_modes(g, &[([1, 0, 0], one)]),
            SpectralScalarField::zeros(g),
        ])
        .unwrap();
        let p = leray_project(&v);
        let c = p.coeff([1, 0, 0]);
        assert!(c[0].norm() < 1e-15);
        assert!((c[1] - one).norm() < 1e-15);
        assert!(c[2].norm() < 1e-15);
    }

    #[test]
    fn leray_annihilates_gradients() {
        let g = grid(16);
        let s = random_vector(g, 3).component(0).clone();
        let p = leray_project(&gradient(&s));
        for c in p.components() {
            for (f, x) in c.coeffs().iter().enumerate() {
                if f != 0 {
                    assert!(x.norm() < 1e-14);
                }
            }
        }
    }

    #[test]
    fn leray_is_idempotent_and_self_adjoint() {
        let g = grid(16);
        let v = random_vector(g, 11);
        let w = random_vector(g, 12);
        let pv = leray_project(&v);
        let ppv = leray_project(&pv);
        let scale = pv.l2_norm_spectral();
        assert!(ppv.difference(&pv).unwrap().l2_norm_spectral() <= 1e-14 * scale);
        assert!(pv.is_solenoidal());
        let lhs = pv.inner(&w).unwrap();
        let rhs = v.inner(&leray_project(&w)).unwrap();
        assert!((lhs - rhs).abs() <= 1e-12 * lhs.abs().max(1.0));
    }

    #[test]
    fn curl_examples() {
        let g = grid(16);
        let half = Complex64::new(0.5, 0.0);
        let mut constant = SpectralVectorField::zeros(g);
        constant.component_mut(0).coeffs_mut()[0] = Complex64::new(2.0, 0.0);
        assert_eq!(curl(&constant).coefficient_energy(), 0.0);

        // u = (0, cos 3x, 0)
        let u = SpectralVectorField::new([
            SpectralScalarField::zeros(g),
            SpectralScalarField::from_modes(g, &[([3, 0, 0], half)]),
            SpectralScalarField::zeros(g),
        ])
        .unwrap();
        let w = curl(&u).to_physical().unwrap();
        for p in 0..g.len() {
            let x = g.coordinate(g.unflatten(p)[0]);
            assert!(w.component(0)[p].abs() < 1e-13);
            assert!(w.component(1)[p].abs() < 1e-13);
            assert!((w.component(2)[p] + 3.0 * (3.0 * x).sin()).abs() < 1e-13);
        }

        let s = random_vector(g, 5).component(1).clone();
        let grad = gradient(&s);
        assert!(curl(&grad).coefficient_energy() <= 1e-28 * grad.coefficient_energy());
        let v = leray_project(&random_vector(g, 6));
        let d = curl(&v).solenoidal_defect();
        assert!(d < 1e-12, "{d}");
    }

    #[test]
    fn dealias_rule() {
        let g = grid(16);
        let one = Complex64::new(1.0, 0.0);
        let f6 = SpectralScalarField::from_modes(g, &[([6, 0, 0], one)]);
        assert_eq!(dealias(&f6).coefficient_energy(), 0.0);
        let f5 = SpectralScalarField::from_modes(g, &[([5, 0, 0], one)]);
        assert_eq!(dealias(&f5), f5);
        let v = random_vector(g, 9);
        let once = dealias(&v);
        assert_eq!(dealias(&once), once);
    }
}
