use super::config::CriterionConfig;
use super::gronwall::{gronwall_monitor, GronwallSeries};
use super::lemma::{lemma_chain, LemmaChain};
use super::quadrature::{first_at_or_after, gated_weights, threshold_times, weighted_sum, window_start};
use super::record::{DiagnosticRecord, TrajectoryDiagnostics};
use crate::littlewood_paley::lambda;
use crate::{Error, Result};

/// Finite-resolution stand-in for `limsup_{q→∞}`: the value at the largest
/// resolved shell plus the max and least-squares slope over the top four.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LimsupSurrogate {
    pub top_shell: i32,
    pub at_top: f64,
    pub max_top4: f64,
    pub slope_top4: f64,
}

impl LimsupSurrogate {
    /// `per_q` indexed by `q + 1`.
    pub fn of(per_q: &[f64]) -> Self {
        let top = per_q.len() as i32 - 2;
        let lo = (top - 3).max(-1);
        let pts: Vec<(f64, f64)> = (lo..=top).map(|q| (q as f64, per_q[(q + 1) as usize])).collect();
        let m = pts.len() as f64;
        let mx = pts.iter().map(|p| p.0).sum::<f64>() / m;
        let my = pts.iter().map(|p| p.1).sum::<f64>() / m;
        let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
        let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        Self {
            top_shell: top,
            at_top: per_q[(top + 1) as usize],
            max_top4: pts.iter().map(|p| p.1).fold(0.0, f64::max),
            slope_top4: if sxx > 0.0 { sxy / sxx } else { 0.0 },
        }
    }
}

/// Per-shell integrals with their surrogate.
#[derive(Clone, Debug, PartialEq)]
pub struct ShellIntegrals {
    pub per_q: Vec<f64>,
    pub surrogate: LimsupSurrogate,
}

impl ShellIntegrals {
    fn new(per_q: Vec<f64>) -> Self {
        let surrogate = LimsupSurrogate::of(&per_q);
        Self { per_q, surrogate }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LadderRung {
    pub eps: f64,
    pub integrals: ShellIntegrals,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Satisfied,
    Violated,
    Unavailable,
}

impl Verdict {
    fn from_bound(value: f64, threshold: f64) -> Self {
        if value <= threshold {
            Verdict::Satisfied
        } else {
            Verdict::Violated
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Verdict::Satisfied => "satisfied",
            Verdict::Violated => "violated",
            Verdict::Unavailable => "unavailable",
        }
    }
}

/// One of the eight alternative regularity conditions.
#[derive(Clone, Debug, PartialEq)]
pub struct ConditionResult {
    pub id: u8,
    pub description: &'static str,
    /// Compared value (surrogate or integral); `None` when unavailable.
    pub value: Option<f64>,
    /// Bound the value is compared to; `∞` for finiteness conditions.
    pub threshold: f64,
    pub verdict: Verdict,
    pub per_q: Option<ShellIntegrals>,
    pub ladder: Vec<LadderRung>,
}

/// Per-shell comparison of the three nested window integrals of
/// `λ_q ‖u_q‖_∞`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OrderingRow {
    pub q: i32,
    pub threshold_time: f64,
    /// `∫_{T/2}^T 1_{q≤Q} λ_q‖u_q‖_∞`
    pub gated: f64,
    /// `∫_{𝒯_q}^T λ_q‖u_q‖_∞`
    pub from_threshold_time: f64,
    /// `∫_{T-ε}^T λ_q‖u_q‖_∞` at the smallest ladder `ε`
    pub smallest_eps: f64,
    /// One snapshot interval times the largest integrand value.
    pub slack: f64,
    pub first_holds: bool,
    /// Only defined once `𝒯_q >= T - ε_min`.
    pub second_holds: Option<bool>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CriterionReport {
    pub config: CriterionConfig,
    pub nu: f64,
    pub mu: f64,
    pub t_end: f64,
    pub window_start: f64,
    pub q_max: i32,
    pub threshold_times: Vec<(i32, f64)>,
    pub eps_ladder: Vec<f64>,
    /// `∫_{T/2}^T 1_{q≤Q} λ_q ‖u_q‖_∞` per shell.
    pub criterion: ShellIntegrals,
    pub criterion_verdict: Verdict,
    pub conditions: Vec<ConditionResult>,
    pub ordering: Vec<OrderingRow>,
    pub lemma: LemmaChain,
    pub gronwall: GronwallSeries,
    /// `(t, Q(t), Q̄(t))` for every snapshot.
    pub q_series: Vec<(f64, i32, i32)>,
}

// shared view over the records used by every integral below
pub(crate) struct Samples<'a> {
    pub diag: &'a TrajectoryDiagnostics,
    pub times: Vec<f64>,
    pub start: usize,
    pub q_max: i32,
}

impl<'a> Samples<'a> {
    pub(crate) fn new(diag: &'a TrajectoryDiagnostics) -> Result<Self> {
        if diag.records.is_empty() {
            return Err(Error::Window("no diagnostic records".into()));
        }
        let times = diag.times();
        let start = window_start(&times, diag.t_end)?;
        Ok(Self {
            diag,
            q_max: diag.q_max(),
            times,
            start,
        })
    }

    pub(crate) fn rec(&self, i: usize) -> &DiagnosticRecord {
        &self.diag.records[i]
    }

    fn shells(&self) -> std::ops::RangeInclusive<i32> {
        -1..=self.q_max
    }

    pub(crate) fn gated(&self, q: i32, from: usize) -> Vec<f64> {
        gated_weights(&self.times, from, |i| q <= self.rec(i).q_index)
    }

    fn plain(&self, from: usize) -> Vec<f64> {
        gated_weights(&self.times, from, |_| true)
    }

    fn index_of(&self, t: f64) -> usize {
        first_at_or_after(&self.times, t, self.diag.t_end)
    }

    fn ladder(&self, depth: u32) -> Vec<f64> {
        let w = &self.times[self.start..];
        let dt = w.windows(2).map(|p| p[1] - p[0]).fold(0.0, f64::max);
        let half = 0.5 * self.diag.t_end;
        let mut out = vec![half];
        for j in 1..depth {
            let eps = half / 2f64.powi(j as i32);
            if eps < 4.0 * dt * (1.0 - 1e-9) {
                break;
            }
            out.push(eps);
        }
        out
    }

    fn threshold_table(&self) -> Result<Vec<(i32, f64)>> {
        let q: Vec<i32> = self.diag.records[self.start..].iter().map(|r| r.q_index).collect();
        threshold_times(&self.times[self.start..], &q, self.diag.t_end, self.q_max + 1)
    }
}

/// `∫_{T/2}^T 1_{q≤Q(τ)} λ_q ‖u_q‖_∞ dτ` by gated trapezoid quadrature.
pub fn criterion_integral(diag: &TrajectoryDiagnostics, q: i32) -> Result<f64> {
    let s = Samples::new(diag)?;
    let w = s.gated(q, s.start);
    Ok(weighted_sum(&w, |i| lambda(q) * DiagnosticRecord::at(&s.rec(i).shell_inf_norms, q)))
}

/// Full report: criterion integrals, threshold times, the eight conditions,
/// the ordering check, the inequality chain and the Grönwall series.
pub fn evaluate_conditions(diag: &TrajectoryDiagnostics, cfg: &CriterionConfig) -> Result<CriterionReport> {
    cfg.validate(diag.magnetic)?;
    let s = Samples::new(diag)?;
    let t_end = diag.t_end;
    let thresholds = s.threshold_table()?;
    let tq = |q: i32| thresholds[(q + 1) as usize].1;
    let ladder = s.ladder(cfg.eps_depth);
    let eps_min = *ladder.last().expect("ladder has T/2");
    let m = diag.nu.min(diag.mu);
    let l = cfg.l;
    let sigma = cfg.sigma();
    let n_rec = s.times.len();

    let inf_term = |q: i32, i: usize| lambda(q) * DiagnosticRecord::at(&s.rec(i).shell_inf_norms, q);
    let curl_term = |q: i32, i: usize| DiagnosticRecord::at(&s.rec(i).curl_inf_norms, q);
    let y_term = |q: i32, i: usize| (lambda(q).powf(sigma) * DiagnosticRecord::at(&s.rec(i).shell_r_norms, q)).powf(l);
    // ∫ from the first sample at or after `t0`, no gating
    let from_time = |t0: f64, g: &dyn Fn(usize) -> f64| {
        if t0 >= t_end {
            return 0.0;
        }
        let w = s.plain(s.index_of(t0).max(s.start));
        weighted_sum(&w, g)
    };
    let per_shell = |f: &dyn Fn(i32) -> f64| ShellIntegrals::new(s.shells().map(f).collect());
    let rungs = |term: &dyn Fn(i32, usize) -> f64| -> Vec<LadderRung> {
        ladder
            .iter()
            .map(|&eps| LadderRung {
                eps,
                integrals: per_shell(&|q| from_time(t_end - eps, &|i| term(q, i))),
            })
            .collect()
    };

    let criterion = per_shell(&|q| weighted_sum(&s.gated(q, s.start), |i| inf_term(q, i)));
    let criterion_verdict = Verdict::from_bound(criterion.surrogate.max_top4, cfg.c_r);

    let mut conditions = Vec::with_capacity(8);

    let c1 = per_shell(&|q| from_time(tq(q), &|i| curl_term(q, i)));
    conditions.push(ConditionResult {
        id: 1,
        description: "limsup_q int_{T_q}^T |Delta_q curl u|_inf dt <= c_r",
        value: Some(c1.surrogate.max_top4),
        threshold: cfg.c_r,
        verdict: Verdict::from_bound(c1.surrogate.max_top4, cfg.c_r),
        per_q: Some(c1),
        ladder: Vec::new(),
    });

    let c2 = rungs(&curl_term);
    let v2 = c2.last().expect("ladder").integrals.surrogate.max_top4;
    conditions.push(ConditionResult {
        id: 2,
        description: "lim_eps limsup_q int_{T-eps}^T |Delta_q curl u|_inf dt <= c_r",
        value: Some(v2),
        threshold: cfg.c_r,
        verdict: Verdict::from_bound(v2, cfg.c_r),
        per_q: None,
        ladder: c2,
    });

    let w_all = s.plain(0);
    let v3 = weighted_sum(&w_all, |i| {
        let r = s.rec(i);
        (-1..=r.q_index)
            .map(|q| DiagnosticRecord::at(&r.curl_inf_norms, q))
            .fold(0.0, f64::max)
    });
    conditions.push(ConditionResult {
        id: 3,
        description: "int_0^T sup_{q<=Q} |Delta_q curl u|_inf dt < inf",
        value: Some(v3),
        threshold: f64::INFINITY,
        verdict: Verdict::from_bound(v3, f64::MAX),
        per_q: None,
        ladder: Vec::new(),
    });

    let bound = cfg.c_r.powf(l) * m.powf(l - 1.0);
    let c4 = per_shell(&|q| weighted_sum(&s.gated(q, 0), |i| y_term(q, i)));
    conditions.push(ConditionResult {
        id: 4,
        description: "limsup_q int_0^T 1_{q<=Q} (lambda_q^sigma |u_q|_r)^l dt <= c_r^l min(nu,mu)^(l-1)",
        value: Some(c4.surrogate.max_top4),
        threshold: bound,
        verdict: Verdict::from_bound(c4.surrogate.max_top4, bound),
        per_q: Some(c4),
        ladder: Vec::new(),
    });

    let c5 = per_shell(&|q| from_time(tq(q), &|i| y_term(q, i)));
    conditions.push(ConditionResult {
        id: 5,
        description: "limsup_q int_{T_q}^T (lambda_q^sigma |u_q|_r)^l dt <= c_r^l min(nu,mu)^(l-1)",
        value: Some(c5.surrogate.max_top4),
        threshold: bound,
        verdict: Verdict::from_bound(c5.surrogate.max_top4, bound),
        per_q: Some(c5),
        ladder: Vec::new(),
    });

    let c6 = rungs(&y_term);
    let v6 = c6.last().expect("ladder").integrals.surrogate.max_top4;
    conditions.push(ConditionResult {
        id: 6,
        description: "lim_eps limsup_q int_{T-eps}^T (lambda_q^sigma |u_q|_r)^l dt <= c_r^l min(nu,mu)^(l-1)",
        value: Some(v6),
        threshold: bound,
        verdict: Verdict::from_bound(v6, bound),
        per_q: None,
        ladder: c6,
    });

    let v7 = weighted_sum(&w_all, |i| s.rec(i).low_besov.powf(l));
    conditions.push(ConditionResult {
        id: 7,
        description: "int_0^T |u_{<=Q}|_{B^sigma_{r,inf}}^l dt < inf",
        value: Some(v7),
        threshold: f64::INFINITY,
        verdict: Verdict::from_bound(v7, f64::MAX),
        per_q: None,
        ladder: Vec::new(),
    });

    let (v8, verdict8) = match &diag.final_distance {
        Some(d) => {
            let lo = s.index_of(t_end - eps_min);
            let v = (lo..n_rec.saturating_sub(1)).map(|i| d[i]).fold(0.0, f64::max);
            (Some(v), Verdict::from_bound(v, 0.5 * cfg.c_r))
        }
        None => (None, Verdict::Unavailable),
    };
    conditions.push(ConditionResult {
        id: 8,
        description: "limsup_{t->T} |u(t)-u(T)|_{B^{-1+3/r}_{r,inf}} <= c_r/2",
        value: v8,
        threshold: 0.5 * cfg.c_r,
        verdict: verdict8,
        per_q: None,
        ladder: Vec::new(),
    });

    // nested windows of the same integrand
    let dt_max = s.times[s.start..].windows(2).map(|p| p[1] - p[0]).fold(0.0, f64::max);
    let tol = 1e-12;
    let ordering = s
        .shells()
        .chain(std::iter::once(s.q_max + 1))
        .map(|q| {
            let gated = weighted_sum(&s.gated(q, s.start), |i| inf_term(q, i));
            let from_t = from_time(tq(q), &|i| inf_term(q, i));
            let small = from_time(t_end - eps_min, &|i| inf_term(q, i));
            let peak = (s.start..n_rec).map(|i| inf_term(q, i)).fold(0.0, f64::max);
            let slack = dt_max * peak + tol * peak.max(1.0);
            let second = if tq(q) >= t_end - eps_min - 1e-9 * t_end.max(1.0) {
                Some(from_t <= small + slack)
            } else {
                None
            };
            OrderingRow {
                q,
                threshold_time: tq(q),
                gated,
                from_threshold_time: from_t,
                smallest_eps: small,
                slack,
                first_holds: gated <= from_t + slack,
                second_holds: second,
            }
        })
        .collect();

    let lemma = lemma_chain(&s, cfg)?;
    let gronwall = gronwall_monitor(diag)?;
    let q_bar = diag.running_sup_q();
    let q_series = diag
        .records
        .iter()
        .zip(q_bar)
        .map(|(r, b)| (r.t, r.q_index, b))
        .collect();

    Ok(CriterionReport {
        config: cfg.clone(),
        nu: diag.nu,
        mu: diag.mu,
        t_end,
        window_start: s.times[s.start],
        q_max: s.q_max,
        threshold_times: thresholds,
        eps_ladder: ladder,
        criterion,
        criterion_verdict,
        conditions,
        ordering,
        lemma,
        gronwall,
        q_series,
    })
}
