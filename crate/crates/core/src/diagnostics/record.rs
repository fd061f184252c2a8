use rayon::prelude::*;

use super::config::CriterionConfig;
use crate::littlewood_paley::{lambda, DyadicPartition};
use crate::solver::SolverState;
use crate::spectral::{curl, SpectralField, SpectralVectorField};
use crate::{Error, Result};

/// Shell-resolved quantities of one snapshot. Every per-shell vector is
/// indexed by `q + 1` for `q = -1 ..= q_max`.
#[derive(Clone, Debug, PartialEq)]
pub struct DiagnosticRecord {
    pub t: f64,
    /// `‖u_q‖_∞`
    pub shell_inf_norms: Vec<f64>,
    /// `‖u_q‖_r`
    pub shell_r_norms: Vec<f64>,
    /// `‖b_q‖_r`
    pub shell_r_norms_b: Vec<f64>,
    /// `‖Δ_q(∇×u)‖_∞`
    pub curl_inf_norms: Vec<f64>,
    /// `‖u_{≤Q}‖` in `B^{-1+2/l+3/r}_{r,∞}`
    pub low_besov: f64,
    /// `Λ_r = 2^Q`
    pub lambda: f64,
    pub q_index: i32,
    /// `Σ_{q=-1}^{Q} λ_q ‖u_q‖_∞`
    pub f_value: f64,
    /// `Σ_q λ_q^{2s}(‖u_q‖₂² + ‖b_q‖₂²)`
    pub hs_energy: f64,
}

impl DiagnosticRecord {
    pub fn q_max(&self) -> i32 {
        self.shell_inf_norms.len() as i32 - 2
    }

    /// Per-shell value at `q`, zero outside the stored range.
    pub fn at(values: &[f64], q: i32) -> f64 {
        if q < -1 {
            return 0.0;
        }
        values.get((q + 1) as usize).copied().unwrap_or(0.0)
    }
}

/// `(Λ_r, Q)` from per-shell `‖u_p‖_r`: `Q` is the largest `p >= 1` with
/// `λ_p^{-1+3/r} ‖u_p‖_r >= c_r min(ν, μ)`, or 0 when no such shell exists.
pub fn wavenumber_from_norms(r_norms: &[f64], cfg: &CriterionConfig, nu: f64, mu: f64) -> (f64, i32) {
    let threshold = cfg.c_r * nu.min(mu);
    let e = cfg.wave_exponent();
    let q_max = r_norms.len() as i32 - 2;
    let q = (1..=q_max)
        .rev()
        .find(|&p| lambda(p).powf(e) * DiagnosticRecord::at(r_norms, p) >= threshold)
        .unwrap_or(0);
    (lambda(q), q)
}

/// Dissipation wavenumber `Λ_r(t)` and its shell index `Q(t)`.
pub fn dissipation_wavenumber(
    u: &SpectralVectorField,
    cfg: &CriterionConfig,
    part: &DyadicPartition,
    nu: f64,
    mu: f64,
) -> Result<(f64, i32)> {
    let norms = part
        .shells()
        .map(|q| part.project_shell(u, q)?.lebesgue_norm(cfg.r))
        .collect::<Result<Vec<_>>>()?;
    Ok(wavenumber_from_norms(&norms, cfg, nu, mu))
}

/// `f = Σ_{q=-1}^{Q} λ_q ‖u_q‖_∞` from stored sup norms.
pub fn f_from_norms(inf_norms: &[f64], q_index: i32) -> f64 {
    (-1..=q_index)
        .map(|q| lambda(q) * DiagnosticRecord::at(inf_norms, q))
        .sum()
}

/// `f(t)` for a field and a given `Q`.
pub fn f_of_t(u: &SpectralVectorField, q_index: i32, part: &DyadicPartition) -> Result<f64> {
    let norms = part
        .shells()
        .map(|q| part.project_shell(u, q)?.lebesgue_norm(f64::INFINITY))
        .collect::<Result<Vec<_>>>()?;
    Ok(f_from_norms(&norms, q_index))
}

/// Computes the record of one snapshot.
pub fn compute_record(
    state: &SolverState,
    cfg: &CriterionConfig,
    part: &DyadicPartition,
    nu: f64,
    mu: f64,
) -> Result<DiagnosticRecord> {
    let (u, b) = (&state.u, &state.b);
    if u.grid() != part.grid() || b.grid() != part.grid() {
        return Err(Error::GridMismatch(part.grid().n(), u.grid().n()));
    }
    let shells: Vec<i32> = part.shells().collect();
    let mut inf = Vec::with_capacity(shells.len());
    let mut rn = Vec::with_capacity(shells.len());
    let mut rb = Vec::with_capacity(shells.len());
    let mut curl_inf = Vec::with_capacity(shells.len());
    let mut hs = 0.0;
    for &q in &shells {
        let uq = part.project_shell(u, q)?;
        let bq = part.project_shell(b, q)?;
        let phys = uq.to_physical_unchecked();
        inf.push(phys.lebesgue_norm(f64::INFINITY)?);
        rn.push(phys.lebesgue_norm(cfg.r)?);
        rb.push(if bq.coefficient_energy() == 0.0 {
            0.0
        } else {
            bq.lebesgue_norm(cfg.r)?
        });
        curl_inf.push(curl(&uq).to_physical_unchecked().lebesgue_norm(f64::INFINITY)?);
        hs += lambda(q).powf(2.0 * cfg.s) * (uq.l2_norm_spectral().powi(2) + bq.l2_norm_spectral().powi(2));
    }
    let (lam, q_index) = wavenumber_from_norms(&rn, cfg, nu, mu);
    let f_value = f_from_norms(&inf, q_index);
    let low_besov = low_besov_norm(u, q_index, &rn, cfg, part)?;
    Ok(DiagnosticRecord {
        t: state.t,
        shell_inf_norms: inf,
        shell_r_norms: rn,
        shell_r_norms_b: rb,
        curl_inf_norms: curl_inf,
        low_besov,
        lambda: lam,
        q_index,
        f_value,
        hs_energy: hs,
    })
}

// Δ_q u_{≤Q} = u_q for q < Q; only shells Q and Q+1 need a fresh projection.
fn low_besov_norm(
    u: &SpectralVectorField,
    q_index: i32,
    r_norms: &[f64],
    cfg: &CriterionConfig,
    part: &DyadicPartition,
) -> Result<f64> {
    let sigma = cfg.sigma();
    let mut best: f64 = (-1..q_index)
        .map(|q| lambda(q).powf(sigma) * DiagnosticRecord::at(r_norms, q))
        .fold(0.0, f64::max);
    let low = part.low_pass(u, q_index)?;
    for q in [q_index, q_index + 1] {
        if q > part.q_max() {
            continue;
        }
        let v = part.project_shell(&low, q)?.lebesgue_norm(cfg.r)?;
        best = best.max(lambda(q).powf(sigma) * v);
    }
    Ok(best)
}

/// Records of a trajectory together with the metadata the criteria need.
#[derive(Clone, Debug, PartialEq)]
pub struct TrajectoryDiagnostics {
    pub nu: f64,
    pub mu: f64,
    /// Final time `T` of the run (the window is `[T/2, T]`).
    pub t_end: f64,
    pub magnetic: bool,
    pub records: Vec<DiagnosticRecord>,
    /// `‖u(t) - u(T)‖` in `B^{-1+3/r}_{r,∞}` for every record (`u(T)` the
    /// final snapshot); `None` when the run stopped before `T`.
    pub final_distance: Option<Vec<f64>>,
}

/// Relative tolerance used when matching sample times to `T` and `T/2`.
pub const TIME_TOL: f64 = 1e-9;

impl TrajectoryDiagnostics {
    /// Evaluates every snapshot (in parallel) in time order.
    pub fn compute(
        snapshots: &[SolverState],
        nu: f64,
        mu: f64,
        t_end: f64,
        cfg: &CriterionConfig,
        part: &DyadicPartition,
    ) -> Result<Self> {
        if snapshots.is_empty() {
            return Err(Error::Window("no snapshots".into()));
        }
        if snapshots.windows(2).any(|w| w[1].t <= w[0].t) {
            return Err(Error::Window("snapshot times must increase".into()));
        }
        for s in snapshots {
            if s.grid() != part.grid() || s.b.grid() != part.grid() {
                return Err(Error::GridMismatch(part.grid().n(), s.grid().n()));
            }
            s.u.to_physical()?;
            s.b.to_physical()?;
        }
        let magnetic = snapshots.iter().any(|s| s.b.coefficient_energy() > 0.0);
        cfg.validate(magnetic)?;
        let records = snapshots
            .par_iter()
            .map(|s| compute_record(s, cfg, part, nu, mu))
            .collect::<Result<Vec<_>>>()?;
        let last = snapshots.last().expect("nonempty");
        let final_distance = if (last.t - t_end).abs() <= TIME_TOL * t_end.max(1.0) {
            let e = cfg.wave_exponent();
            let d = snapshots
                .par_iter()
                .map(|s| besov_distance(&s.u, &last.u, e, cfg.r, part))
                .collect::<Result<Vec<_>>>()?;
            Some(d)
        } else {
            None
        };
        Ok(Self {
            nu,
            mu,
            t_end,
            magnetic,
            records,
            final_distance,
        })
    }

    pub fn times(&self) -> Vec<f64> {
        self.records.iter().map(|r| r.t).collect()
    }

    pub fn q_max(&self) -> i32 {
        self.records[0].q_max()
    }

    /// Running supremum `Q̄(t)` of `Q` from `t = 0`.
    pub fn running_sup_q(&self) -> Vec<i32> {
        let mut acc = i32::MIN;
        self.records
            .iter()
            .map(|r| {
                acc = acc.max(r.q_index);
                acc
            })
            .collect()
    }
}

fn besov_distance(
    u: &SpectralVectorField,
    reference: &SpectralVectorField,
    s: f64,
    r: f64,
    part: &DyadicPartition,
) -> Result<f64> {
    let d = u.difference(reference)?;
    if d.coefficient_energy() == 0.0 {
        return Ok(0.0);
    }
    crate::littlewood_paley::besov_norm(&d, s, r, part)
}
