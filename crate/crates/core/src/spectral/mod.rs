//! Fourier representation of real fields on the periodic box.

pub(crate) mod fft;
mod field;
mod grid;
mod ops;
mod padded;
mod random;

pub use field::{
    PhysicalScalarField, PhysicalVectorField, SpectralField, SpectralScalarField,
    SpectralVectorField, HERMITIAN_TOL, SOLENOIDAL_TOL,
};
pub use grid::Grid3;
pub use ops::{
    curl, dealias, dealias_mask, divergence, gradient, gradient_energy, laplacian_symbol,
    leray_project,
};
pub use padded::{advect, advect_samples, PaddedTransform};
pub use random::{random_scalar, random_scalar_with, random_vector};

pub(crate) use field::check_exponent;
pub(crate) use padded::add_samples;
