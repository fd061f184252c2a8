use super::record::TrajectoryDiagnostics;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GronwallRow {
    pub t: f64,
    pub hs_energy: f64,
    /// Centered difference of the `H^s` energy.
    pub rate: f64,
    pub f_value: f64,
    /// `max(rate, 0) / (f · E_s)`, 0 for `0/0`, `∞` for a violation.
    pub c_emp: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GronwallSeries {
    pub rows: Vec<GronwallRow>,
    /// Times where the energy grows while `f · E_s = 0`.
    pub violations: Vec<f64>,
}

impl GronwallSeries {
    /// Largest finite constant in the series.
    pub fn max_constant(&self) -> f64 {
        self.rows
            .iter()
            .map(|r| r.c_emp)
            .filter(|c| c.is_finite())
            .fold(0.0, f64::max)
    }
}

/// Empirical constant of `d/dt E_s <= C f(t) E_s` at every interior snapshot.
pub fn gronwall_monitor(diag: &TrajectoryDiagnostics) -> Result<GronwallSeries> {
    let rec = &diag.records;
    if rec.len() < 3 {
        return Err(Error::Window(format!(
            "the growth monitor needs at least 3 snapshots, got {}",
            rec.len()
        )));
    }
    let mut violations = Vec::new();
    let rows = (1..rec.len() - 1)
        .map(|i| {
            let rate = (rec[i + 1].hs_energy - rec[i - 1].hs_energy) / (rec[i + 1].t - rec[i - 1].t);
            let denom = rec[i].f_value * rec[i].hs_energy;
            let grow = rate.max(0.0);
            let c_emp = if grow == 0.0 {
                0.0
            } else if denom == 0.0 {
                violations.push(rec[i].t);
                f64::INFINITY
            } else {
                grow / denom
            };
            GronwallRow {
                t: rec[i].t,
                hs_energy: rec[i].hs_energy,
                rate,
                f_value: rec[i].f_value,
                c_emp,
            }
        })
        .collect();
    Ok(GronwallSeries { rows, violations })
}
