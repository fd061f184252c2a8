//! Pseudo-spectral Navier-Stokes/MHD solver on the periodic box `[0, 2π]³`
//! together with a Littlewood-Paley diagnostics engine.
//!
//! The crate is split into layers:
//!
//! * [`spectral`]: grids, Fourier transforms, calculus operators, Leray
//!   projection, dealiasing and Lebesgue norms.
//! * [`littlewood_paley`]: the dyadic partition of unity, shell projections,
//!   Besov/Sobolev norms, Bernstein ratios, Bony paraproducts and commutators.
//! * [`solver`]: integrating-factor time stepping of the MHD system.
//! * [`diagnostics`]: dissipation wavenumber, low-mode quantities, threshold
//!   times, regularity-criterion integrals and their verdicts.
//! * [`io`]: snapshot files, run configuration, CSV and report emission.
//! * [`verify`]: named identity/inequality suites used by the CLI.
//! * [`commands`]: the simulate/analyze/criteria batch commands.

pub mod commands;
pub mod diagnostics;
pub mod error;
pub mod io;
pub mod littlewood_paley;
pub mod solver;
pub mod spectral;
pub mod verify;

pub use error::{Error, Result};
pub use littlewood_paley::{CutoffProfile, DyadicPartition, ShellDecomposition};
pub use spectral::{
    Grid3, PhysicalScalarField, PhysicalVectorField, SpectralField, SpectralScalarField,
    SpectralVectorField,
};
