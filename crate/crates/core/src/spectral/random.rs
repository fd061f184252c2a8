use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::field::{SpectralScalarField, SpectralVectorField};
use super::grid::Grid3;

/// Random real field with independent standard-normal coefficients (up to
/// Hermitian symmetrization). Nyquist planes are left at zero. The same
/// seed always yields bit-identical coefficients.
pub fn random_scalar(grid: Grid3, seed: u64) -> SpectralScalarField {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_scalar_with(grid, &mut rng, |_| 1.0)
}

/// Random real vector field; see [`random_scalar`].
pub fn random_vector(grid: Grid3, seed: u64) -> SpectralVectorField {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    SpectralVectorField::new(std::array::from_fn(|_| {
        random_scalar_with(grid, &mut rng, |_| 1.0)
    }))
    .expect("same grid")
}

/// Random real field whose coefficient at `k` has standard deviation
/// `envelope(|k|)`.
pub fn random_scalar_with(
    grid: Grid3,
    rng: &mut ChaCha8Rng,
    envelope: impl Fn(f64) -> f64,
) -> SpectralScalarField {
    let raw: Vec<Complex64> = (0..grid.len())
        .map(|_| {
            let re: f64 = StandardNormal.sample(rng);
            let im: f64 = StandardNormal.sample(rng);
            Complex64::new(re, im)
        })
        .collect();
    let coeffs = (0..grid.len())
        .map(|f| {
            if grid.is_nyquist(f) {
                return Complex64::default();
            }
            let c = 0.5 * (raw[f] + raw[grid.conjugate_index(f)].conj());
            c * envelope(grid.k_squared(f).sqrt())
        })
        .collect();
    SpectralScalarField::new(grid, coeffs).expect("length matches grid")
}
