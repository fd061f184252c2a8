//! Littlewood-Paley analysis on the periodic grid: the dyadic partition of
//! unity, shell projections `Δ_q`, Besov/Sobolev norms, Bernstein ratios,
//! Bony paraproducts and the commutator `[Δ_q, u·∇]`.
//!
//! Projections are applied as Fourier multipliers. Shells run over
//! `q = -1 ..= q_max` with `λ_q = 2^q` (and `λ_{-1} = 1/2`).

mod norms;
mod paraproduct;
mod partition;
mod profile;

pub use norms::{bernstein_ratio, besov_norm, shell_norms, sobolev_norm};
pub use paraproduct::{
    bony_decompose, commutator, commutator_bound, BonyParts, CommutatorBound, Paraproduct,
};
pub use partition::{lambda, DyadicPartition, ShellDecomposition};
pub use profile::{CutoffProfile, INNER_RADIUS, OUTER_RADIUS};
