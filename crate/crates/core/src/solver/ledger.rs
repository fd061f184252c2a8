use super::stepper::Raw;
use crate::spectral::Grid3;

/// One row of the energy budget.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LedgerRow {
    pub t: f64,
    pub kinetic: f64,
    pub magnetic: f64,
    /// `ν‖∇u‖₂²`
    pub diss_u: f64,
    /// `μ‖∇b‖₂²`
    pub diss_b: f64,
    /// `∫ u·b`
    pub cross_helicity: f64,
    /// `dE/dt + ν‖∇u‖₂² + μ‖∇b‖₂²` by finite differences; absent at the ends.
    pub residual: Option<f64>,
}

impl LedgerRow {
    pub fn total_energy(&self) -> f64 {
        self.kinetic + self.magnetic
    }

    pub fn dissipation(&self) -> f64 {
        self.diss_u + self.diss_b
    }
}

pub const LEDGER_COLUMNS: [&str; 7] = [
    "t",
    "E_kin",
    "E_mag",
    "diss_u",
    "diss_b",
    "cross_helicity",
    "residual",
];

/// Per-step energy budget of a run.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct EnergyLedger {
    rows: Vec<LedgerRow>,
}

impl EnergyLedger {
    pub fn rows(&self) -> &[LedgerRow] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub(crate) fn record(&mut self, grid: Grid3, x: &Raw, t: f64, nu: f64, mu: f64) {
        let vol = grid.box_length().powi(3);
        let n = grid.n();
        let (mut eu, mut eb, mut gu, mut gb, mut cross) = (0.0, 0.0, 0.0, 0.0, 0.0);
        let mut f = 0;
        for i in 0..n {
            let ki = grid.wavenumber(i) as f64;
            for j in 0..n {
                let kj = grid.wavenumber(j) as f64;
                for l in 0..n {
                    let kl = grid.wavenumber(l) as f64;
                    let k2 = ki * ki + kj * kj + kl * kl;
                    let (mut su, mut sb) = (0.0, 0.0);
                    for c in 0..3 {
                        su += x[c][f].norm_sqr();
                        sb += x[c + 3][f].norm_sqr();
                        cross += (x[c][f] * x[c + 3][f].conj()).re;
                    }
                    eu += su;
                    eb += sb;
                    gu += k2 * su;
                    gb += k2 * sb;
                    f += 1;
                }
            }
        }
        self.rows.push(LedgerRow {
            t,
            kinetic: 0.5 * vol * eu,
            magnetic: 0.5 * vol * eb,
            diss_u: nu * vol * gu,
            diss_b: mu * vol * gb,
            cross_helicity: vol * cross,
            residual: None,
        });
    }

    /// Fills the budget residual: five-point centered derivative of the
    /// total energy in the interior, three-point next to the ends. Rows must
    /// be equally spaced.
    pub(crate) fn close(&mut self) {
        let m = self.rows.len();
        if m < 3 {
            return;
        }
        let h = self.rows[1].t - self.rows[0].t;
        let e: Vec<f64> = self.rows.iter().map(|r| r.total_energy()).collect();
        for i in 1..m - 1 {
            let de = if i >= 2 && i + 2 < m {
                (-e[i + 2] + 8.0 * e[i + 1] - 8.0 * e[i - 1] + e[i - 2]) / (12.0 * h)
            } else {
                (e[i + 1] - e[i - 1]) / (2.0 * h)
            };
            self.rows[i].residual = Some(de + self.rows[i].dissipation());
        }
    }

    /// `max |residual| / E` over rows carrying a residual.
    pub fn max_relative_residual(&self) -> f64 {
        self.rows
            .iter()
            .filter_map(|r| r.residual.map(|x| x.abs() / r.total_energy().max(f64::MIN_POSITIVE)))
            .fold(0.0, f64::max)
    }

    /// True if total energy never increases between rows.
    pub fn energy_nonincreasing(&self) -> bool {
        self.rows
            .windows(2)
            .all(|w| w[1].total_energy() <= w[0].total_energy())
    }
}
