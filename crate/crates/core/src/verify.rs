//! Named identity and inequality suites: each check reports a measured value
//! against a tolerance. The `run_suite` entry uses the reference sizes; the
//! individual functions take their sizes as arguments.

use std::fmt;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::io::SnapshotFile;
use crate::littlewood_paley::{bernstein_ratio, commutator, commutator_bound, Paraproduct};
use crate::solver::{run, taylor_green, InitialData, SolverConfig, SolverState};
use crate::spectral::{random_vector, Grid3, SpectralField, SpectralVectorField};
use crate::{CutoffProfile, DyadicPartition, Error, Result};

pub const SUITES: [&str; 7] = [
    "partition",
    "reconstruction",
    "bony",
    "commutator",
    "bernstein",
    "taylor-green",
    "energy-budget",
];

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub measured: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl Check {
    /// Passes when `measured <= tolerance`; NaN fails.
    pub fn at_most(name: impl Into<String>, measured: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            measured,
            tolerance,
            passed: measured <= tolerance,
        }
    }

    /// Passes when `measured >= bound`.
    pub fn at_least(name: impl Into<String>, measured: f64, bound: f64) -> Self {
        Self {
            name: name.into(),
            measured,
            tolerance: bound,
            passed: measured >= bound,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    fn new(suite: &str) -> Self {
        Self {
            suite: suite.to_string(),
            checks: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(
                f,
                "{} {}: measured {:.6e}, tolerance {:.6e}",
                if c.passed { "PASS" } else { "FAIL" },
                c.name,
                c.measured,
                c.tolerance
            )?;
        }
        let failed = self.failures().count();
        write!(
            f,
            "suite {}: {} of {} checks passed",
            self.suite,
            self.checks.len() - failed,
            self.checks.len()
        )
    }
}

/// Runs a suite by name at its reference sizes.
pub fn run_suite(name: &str) -> Result<SuiteReport> {
    match name {
        "partition" => partition(&[8, 16, 32]),
        "reconstruction" => reconstruction(&[8, 16, 32], 20),
        "bony" => bony(32, 10),
        "commutator" => commutator_suite(32, 100),
        "bernstein" => bernstein(32, 4),
        "taylor-green" => taylor_green_suite(32, 0.1, 1e-3, 1.0),
        "energy-budget" => energy_budget(64, 0.05, 1e-3, 1.0),
        other => Err(Error::Unknown {
            kind: "suite",
            name: other.to_string(),
            available: SUITES.join(", "),
        }),
    }
}

fn linear_ramp() -> CutoffProfile {
    CutoffProfile::custom("linear", |rho| 4.0 * (1.0 - rho))
}

fn profiles() -> Result<[CutoffProfile; 3]> {
    Ok([
        CutoffProfile::smooth(),
        CutoffProfile::smooth_with_steepness(4.0)?,
        linear_ramp(),
    ])
}

/// Partition of unity on every wavevector plus the forced shell values.
pub fn partition(sizes: &[usize]) -> Result<SuiteReport> {
    let mut rep = partition_of_unity(sizes)?;
    rep.checks.extend(forced_shells(sizes)?.checks);
    Ok(rep)
}

/// `max_k |Σ_q φ_q(k) - 1|` for several cutoff profiles.
pub fn partition_of_unity(sizes: &[usize]) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("partition");
    for &n in sizes {
        let grid = Grid3::new(n)?;
        for profile in profiles()? {
            let label = profile.label();
            let part = DyadicPartition::build(grid, profile)?;
            rep.checks.push(Check::at_most(
                format!("n={n} {label} max |sum phi_q - 1|"),
                part.partition_defect(),
                1e-12,
            ));
        }
    }
    Ok(rep)
}

/// `φ₁ = 1` at `|k| = 3` and `φ₀ = 1` at `|k| = 1`, every other shell
/// exactly zero there, whatever the transition profile.
pub fn forced_shells(sizes: &[usize]) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("partition");
    for &n in sizes {
        let grid = Grid3::new(n)?;
        for profile in profiles()? {
            let label = profile.label();
            let part = DyadicPartition::build(grid, profile)?;
            let mut forced: f64 = 0.0;
            for (q, k) in [(1, [3, 0, 0]), (1, [0, 0, -3]), (0, [1, 0, 0]), (0, [0, -1, 0])] {
                let rest: f64 = part
                    .shells()
                    .filter(|&p| p != q)
                    .map(|p| part.value(p, k))
                    .sum::<Result<f64>>()?;
                forced = forced.max((part.value(q, k)? - 1.0).abs()).max(rest.abs());
            }
            rep.checks.push(Check::at_most(
                format!("n={n} {label} forced shells |k|=1 -> q=0, |k|=3 -> q=1"),
                forced,
                0.0,
            ));
        }
    }
    Ok(rep)
}

/// `‖Σ_q Δ_q u - u‖₂ / ‖u‖₂` on random Hermitian fields.
pub fn reconstruction(sizes: &[usize], fields: u64) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("reconstruction");
    for &n in sizes {
        let grid = Grid3::new(n)?;
        let part = DyadicPartition::with_default_profile(grid);
        let mut worst: f64 = 0.0;
        for seed in 0..fields {
            let u = random_vector(grid, 1000 + seed);
            let back = part.decompose(&u)?.reconstruct();
            worst = worst.max(back.difference(&u)?.l2_norm_spectral() / u.l2_norm_spectral());
        }
        rep.checks.push(Check::at_most(
            format!("n={n} max relative reconstruction error over {fields} fields"),
            worst,
            1e-12,
        ));
    }
    Ok(rep)
}

/// Low-high + high-low + high-high equals `Δ_q(u·∇v)` on zero-padded products.
pub fn bony(n: usize, pairs: u64) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("bony");
    let grid = Grid3::new(n)?;
    let part = DyadicPartition::with_default_profile(grid);
    let mut worst: f64 = 0.0;
    for i in 0..pairs {
        let u = random_vector(grid, 2000 + 2 * i);
        let v = random_vector(grid, 2001 + 2 * i);
        let ctx = Paraproduct::new(&u, &v, &part)?;
        for q in part.shells() {
            let direct = ctx.direct(q)?;
            let residual = ctx.decompose(q)?.sum().difference(&direct)?.l2_norm_spectral();
            let scale = direct.l2_norm_spectral();
            if scale > 0.0 {
                worst = worst.max(residual / scale);
            } else {
                worst = worst.max(residual);
            }
        }
    }
    rep.checks.push(Check::at_most(
        format!("n={n} max relative identity residual over {pairs} pairs, all q"),
        worst,
        1e-11,
    ));
    Ok(rep)
}

fn constant_field(grid: Grid3, c: [f64; 3]) -> SpectralVectorField {
    let mut u = SpectralVectorField::zeros(grid);
    for (i, &ci) in c.iter().enumerate() {
        u.component_mut(i).coeffs_mut()[0] = ci.into();
    }
    u
}

/// Constant advection commutes with `Δ_q`; the commutator estimate with
/// `(r₁, r₂, r₃) = (2, ∞, 2)` has a bounded measured constant for
/// `u_low = S_{q-2}u`, `v = Δ_q v`.
pub fn commutator_suite(n: usize, trials: u64) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("commutator");
    let grid = Grid3::new(n)?;
    let part = DyadicPartition::with_default_profile(grid);
    let mut rng = ChaCha8Rng::seed_from_u64(3000);

    let mut worst_const: f64 = 0.0;
    for i in 0..4 {
        let c = [rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0)];
        let v = random_vector(grid, 3100 + i);
        for q in part.shells() {
            let comm = commutator(&constant_field(grid, c), &v, q, &part)?;
            worst_const = worst_const.max(comm.l2_norm_spectral() / v.l2_norm_spectral());
        }
    }
    rep.checks.push(Check::at_most(
        format!("n={n} max ||[D_q, c.grad]v||_2 / ||v||_2, constant c"),
        worst_const,
        1e-13,
    ));

    let top = part.q_max();
    let mut worst: f64 = 0.0;
    for i in 0..trials {
        let q = rng.random_range((top - 2).max(1)..=top);
        let u_low = part.low_pass(&random_vector(grid, 4000 + 2 * i), q - 2)?;
        let v = part.project_shell(&random_vector(grid, 4001 + 2 * i), q)?;
        let b = commutator_bound(&u_low, &v, q, &part, (2.0, f64::INFINITY, 2.0))?;
        worst = worst.max(b.constant);
    }
    rep.checks.push(Check::at_most(
        format!("n={n} max commutator constant over {trials} trials"),
        worst,
        10.0,
    ));
    Ok(rep)
}

/// Random wave packet peaked at a random point: every coefficient carries
/// the phase `e^{-ik·x₀}` with a random positive amplitude, along a random
/// fixed direction. Random-phase fields would instead put `‖u‖_∞/‖u‖₂` near
/// its typical value, which decays with the number of modes in the shell.
pub fn coherent_packet(grid: Grid3, rng: &mut ChaCha8Rng) -> SpectralVectorField {
    let x0: [f64; 3] = std::array::from_fn(|_| rng.random_range(0.0..grid.box_length()));
    let dir: [f64; 3] = std::array::from_fn(|_| rng.random_range(-1.0..1.0));
    let raw: Vec<f64> = (0..grid.len()).map(|_| rng.random_range(0.5..1.5)).collect();
    let coeffs: [Vec<Complex64>; 3] = std::array::from_fn(|c| {
        (0..grid.len())
            .map(|f| {
                if grid.is_nyquist(f) {
                    return Complex64::default();
                }
                let k = grid.wavevector(f);
                let phase = -(k[0] as f64 * x0[0] + k[1] as f64 * x0[1] + k[2] as f64 * x0[2]);
                let a = 0.5 * (raw[f] + raw[grid.conjugate_index(f)]);
                Complex64::from_polar(a * dir[c], phase)
            })
            .collect()
    });
    SpectralVectorField::from_coeffs(grid, coeffs).expect("length matches grid")
}

/// Spread `max/min` of measured Bernstein constants across shells 1..=4 on
/// coherent single-shell packets.
pub fn bernstein_spread(n: usize, fields: u64, r: f64, s_exp: f64) -> Result<f64> {
    let grid = Grid3::new(n)?;
    let part = DyadicPartition::with_default_profile(grid);
    let mut rng = ChaCha8Rng::seed_from_u64(5000);
    let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
    for q in 1..=4 {
        for _ in 0..fields {
            let u_q = part.project_shell(&coherent_packet(grid, &mut rng), q)?;
            let c = bernstein_ratio(&u_q, q, r, s_exp)?;
            lo = lo.min(c);
            hi = hi.max(c);
        }
    }
    Ok(hi / lo)
}

pub fn bernstein(n: usize, fields: u64) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("bernstein");
    for (r, s) in [(f64::INFINITY, 2.0), (4.0, 2.0), (6.0, 2.0)] {
        rep.checks.push(Check::at_most(
            format!("n={n} (r, s) = ({r}, {s}) ratio spread over q = 1..4"),
            bernstein_spread(n, fields, r, s)?,
            10.0,
        ));
    }
    Ok(rep)
}

/// Relative `L²` distance between the computed Taylor–Green velocity at
/// `t_end` and `e^{-2νt}u₀`.
pub fn taylor_green_error(n: usize, nu: f64, dt: f64, t_end: f64) -> Result<f64> {
    let grid = Grid3::new(n)?;
    let u0 = taylor_green(grid, 1.0);
    let cfg = SolverConfig {
        nu,
        mu: nu,
        dt,
        t_end,
        snapshot_interval: t_end.max(dt),
        ..SolverConfig::default()
    };
    let traj = run(&u0, &SpectralVectorField::zeros(grid), &cfg)?;
    let last = traj.last();
    let exact = u0.scaled((-2.0 * nu * last.t).exp());
    Ok(last.u.difference(&exact)?.l2_norm_spectral() / exact.l2_norm_spectral())
}

fn final_state(u0: &SpectralVectorField, b0: &SpectralVectorField, cfg: &SolverConfig) -> Result<SolverState> {
    let traj = run(u0, b0, cfg)?;
    if let Some(e) = traj.abort {
        return Err(e);
    }
    Ok(traj.last().clone())
}

/// Observed temporal order `log2(e(2h)/e(h))` of the integrator on a
/// perturbed Taylor–Green flow, errors measured against a run at `h/8`.
/// The unperturbed flow is an exact steady-state of the nonlinear term, so
/// its error is pure round-off and carries no order information.
pub fn temporal_order(n: usize, nu: f64, h: f64, t_end: f64) -> Result<(f64, f64, f64)> {
    let grid = Grid3::new(n)?;
    let data = InitialData::TaylorGreen {
        amplitude: 1.0,
        perturbation_energy: 0.05,
        magnetic_energy: 0.0,
        peak_shell: 1,
    };
    let (u0, b0) = data.build(grid, 7)?;
    let cfg = |dt: f64| SolverConfig {
        nu,
        mu: nu,
        dt,
        t_end,
        snapshot_interval: t_end,
        ..SolverConfig::default()
    };
    let reference = final_state(&u0, &b0, &cfg(h / 8.0))?;
    let err = |dt: f64| -> Result<f64> {
        let s = final_state(&u0, &b0, &cfg(dt))?;
        Ok(s.u.difference(&reference.u)?.l2_norm_spectral() / reference.u.l2_norm_spectral())
    };
    let coarse = err(2.0 * h)?;
    let fine = err(h)?;
    Ok(((coarse / fine).log2(), coarse, fine))
}

pub fn taylor_green_suite(n: usize, nu: f64, dt: f64, t_end: f64) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("taylor-green");
    rep.checks.push(Check::at_most(
        format!("n={n} nu={nu} dt={dt} relative L2 error at t={t_end}"),
        taylor_green_error(n, nu, dt, t_end)?,
        1e-8,
    ));
    let (order, ..) = temporal_order(n, nu, 0.02, t_end)?;
    rep.checks.push(Check::at_least(
        format!("n={n} observed order, perturbed flow, dt 0.04 -> 0.02"),
        order,
        3.7,
    ));
    Ok(rep)
}

/// Checks a stored trajectory against the decay law `u(t) = e^{-2νt}u(0)`
/// of a Taylor–Green start: relative `L²` error of the last snapshot and a
/// magnetic field at round-off level.
pub fn taylor_green_snapshots(snaps: &[SnapshotFile]) -> Result<SuiteReport> {
    let (first, last) = match (snaps.first(), snaps.last()) {
        (Some(f), Some(l)) => (f, l),
        _ => return Err(Error::Window("no snapshots".into())),
    };
    let mut rep = SuiteReport::new("taylor-green");
    let exact = first.u.scaled((-2.0 * last.nu * (last.t - first.t)).exp());
    let err = last.u.difference(&exact)?.l2_norm_spectral() / exact.l2_norm_spectral();
    rep.checks.push(Check::at_most(
        format!("snapshot t={} relative L2 error against e^(-2 nu t) u(0)", last.t),
        err,
        1e-8,
    ));
    let b = last.b.as_ref().map_or(0.0, |b| b.l2_norm_spectral());
    rep.checks.push(Check::at_most(
        "magnetic to velocity L2 ratio",
        b / last.u.l2_norm_spectral(),
        1e-12,
    ));
    Ok(rep)
}

/// Orszag–Tang run: energy balance residual and monotone total energy.
pub fn energy_budget(n: usize, nu: f64, dt: f64, t_end: f64) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("energy-budget");
    let grid = Grid3::new(n)?;
    let (u0, b0) = InitialData::OrszagTang.build(grid, 0)?;
    let cfg = SolverConfig {
        nu,
        mu: nu,
        dt,
        t_end,
        snapshot_interval: t_end,
        ..SolverConfig::default()
    };
    let traj = run(&u0, &b0, &cfg)?;
    if let Some(e) = traj.abort {
        return Err(e);
    }
    rep.checks.push(Check::at_most(
        format!("n={n} max |dE/dt + dissipation| / E"),
        traj.ledger.max_relative_residual(),
        1e-6,
    ));
    let rows = traj.ledger.rows();
    let rise = rows
        .windows(2)
        .map(|w| w[1].total_energy() - w[0].total_energy())
        .fold(f64::NEG_INFINITY, f64::max);
    rep.checks.push(Check::at_most(format!("n={n} largest step increase of E"), rise, 0.0));
    Ok(rep)
}
