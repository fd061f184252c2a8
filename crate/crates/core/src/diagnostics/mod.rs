//! Regularity diagnostics on sampled trajectories: dissipation wavenumber,
//! the low-mode quantity `f(t)`, threshold times `𝒯_q`, the criterion
//! integrals, the eight alternative conditions, the inequality chain that
//! links them and an empirical growth monitor for the `H^s` energy.
//!
//! Integrals over time use trapezoid weights on the snapshot times; the
//! indicator `1_{q≤Q(τ)}` is read at the left end of each interval.
//! `limsup_{q→∞}` becomes a surrogate over the top four resolved shells.

mod config;
mod gronwall;
mod lemma;
mod quadrature;
mod record;
mod report;

pub use config::CriterionConfig;
pub use gronwall::{gronwall_monitor, GronwallRow, GronwallSeries};
pub use lemma::{lemma_chain_check, ChainRow, LemmaChain, CHAIN_TERMS, POINTWISE_STEPS};
pub use quadrature::{gated_weights, threshold_times, window_start};
pub use record::{
    compute_record, dissipation_wavenumber, f_from_norms, f_of_t, wavenumber_from_norms,
    DiagnosticRecord, TrajectoryDiagnostics, TIME_TOL,
};
pub use report::{
    criterion_integral, evaluate_conditions, ConditionResult, CriterionReport, LadderRung,
    LimsupSurrogate, OrderingRow, ShellIntegrals, Verdict,
};
