use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;

use super::config::{Scheme, SolverConfig, MAX_COURANT};
use crate::spectral::fft::{self, Fft3};
use crate::spectral::{dealias_mask, Grid3, SpectralField, SpectralVectorField};
use crate::{Error, Result};

/// Velocity and magnetic field at time `t`.
#[derive(Clone, Debug, PartialEq)]
pub struct SolverState {
    pub u: SpectralVectorField,
    pub b: SpectralVectorField,
    pub t: f64,
}

impl SolverState {
    pub fn new(u: SpectralVectorField, b: SpectralVectorField, t: f64) -> Result<Self> {
        if u.grid() != b.grid() {
            return Err(Error::GridMismatch(u.grid().n(), b.grid().n()));
        }
        Ok(Self { u, b, t })
    }

    pub fn grid(&self) -> Grid3 {
        self.u.grid()
    }

    /// `½(‖u‖₂² + ‖b‖₂²)`.
    pub fn total_energy(&self) -> f64 {
        let vol = self.grid().box_length().powi(3);
        0.5 * vol * (self.u.coefficient_energy() + self.b.coefficient_energy())
    }

    pub(crate) fn to_raw(&self) -> Raw {
        let [u0, u1, u2] = self.u.components();
        let [b0, b1, b2] = self.b.components();
        [u0, u1, u2, b0, b1, b2].map(|c| c.coeffs().to_vec())
    }

    pub(crate) fn from_raw(grid: Grid3, raw: &Raw, t: f64) -> Self {
        let u = SpectralVectorField::from_coeffs(grid, [raw[0].clone(), raw[1].clone(), raw[2].clone()])
            .expect("raw buffers match grid");
        let b = SpectralVectorField::from_coeffs(grid, [raw[3].clone(), raw[4].clone(), raw[5].clone()])
            .expect("raw buffers match grid");
        Self { u, b, t }
    }
}

/// `(u₀,u₁,u₂,b₀,b₁,b₂)` coefficient arrays.
pub(crate) type Raw = [Vec<Complex64>; 6];

/// Right-hand side of the quadratic terms plus the velocity sup-norm seen
/// on the collocation grid.
#[derive(Clone, Debug)]
pub struct NonlinearTerms {
    pub du: SpectralVectorField,
    pub db: SpectralVectorField,
    pub max_speed: f64,
}

/// Quadratic terms `du = -P[dealias(u·∇u - b·∇b)]`, `db = -dealias(u·∇b - b·∇u)`
/// (the latter re-projected), evaluated in divergence form on the
/// two-thirds dealiased inputs.
pub fn nonlinear_terms(state: &SolverState) -> Result<NonlinearTerms> {
    if !state.u.is_solenoidal() || !state.b.is_solenoidal() {
        return Err(Error::Inconsistency("nonlinear terms need solenoidal fields".into()));
    }
    let grid = state.grid();
    let mut ops = Operators::new(grid);
    let raw = state.to_raw();
    let mut out = zero_raw(grid);
    let max_speed = ops.nonlinear(&raw, &mut out);
    let s = SolverState::from_raw(grid, &out, state.t);
    Ok(NonlinearTerms {
        du: s.u,
        db: s.b,
        max_speed,
    })
}

pub(crate) fn zero_raw(grid: Grid3) -> Raw {
    std::array::from_fn(|_| vec![Complex64::default(); grid.len()])
}

/// Grid tables and scratch space for the pseudo-spectral products.
pub(crate) struct Operators {
    grid: Grid3,
    fft: Arc<Fft3>,
    kd: Vec<[f64; 3]>,
    keep: Vec<bool>,
    conj: Vec<usize>,
    phys: [Vec<Complex64>; 3],
    prod: [Vec<Complex64>; 5],
}

const I: Complex64 = Complex64::new(0.0, 1.0);

impl Operators {
    pub(crate) fn new(grid: Grid3) -> Self {
        let keep = dealias_mask(grid).into_iter().map(|m| m > 0.0).collect();
        let len = grid.len();
        Self {
            grid,
            fft: fft::plan(grid.n()),
            kd: (0..len).map(|f| grid.derivative_wavevector(f)).collect(),
            keep,
            conj: (0..len).map(|f| grid.conjugate_index(f)).collect(),
            phys: std::array::from_fn(|_| vec![Complex64::default(); len]),
            prod: std::array::from_fn(|_| vec![Complex64::default(); len]),
        }
    }

    /// Writes the quadratic terms of `x` into `out` and returns `max|u|`.
    ///
    /// Two real fields share each complex transform: `u_i + i b_i` going to
    /// physical space, and pairs of products coming back.
    pub(crate) fn nonlinear(&mut self, x: &Raw, out: &mut Raw) -> f64 {
        let len = self.grid.len();
        for c in 0..3 {
            let p = &mut self.phys[c];
            for f in 0..len {
                p[f] = if self.keep[f] {
                    x[c][f] + I * x[c + 3][f]
                } else {
                    Complex64::default()
                };
            }
            self.fft.inverse(p);
        }

        let mut max2: f64 = 0.0;
        {
            let [p0, p1, p2] = &self.phys;
            let [q0, q1, q2, q3, q4] = &mut self.prod;
            for f in 0..len {
                let (u0, b0) = (p0[f].re, p0[f].im);
                let (u1, b1) = (p1[f].re, p1[f].im);
                let (u2, b2) = (p2[f].re, p2[f].im);
                max2 = max2.max(u0 * u0 + u1 * u1 + u2 * u2);
                // T_ij = u_i u_j - b_i b_j, M_ij = b_i u_j - u_i b_j
                q0[f] = Complex64::new(u0 * u0 - b0 * b0, u1 * u1 - b1 * b1);
                q1[f] = Complex64::new(u2 * u2 - b2 * b2, u0 * u1 - b0 * b1);
                q2[f] = Complex64::new(u0 * u2 - b0 * b2, u1 * u2 - b1 * b2);
                q3[f] = Complex64::new(b0 * u1 - u0 * b1, b0 * u2 - u0 * b2);
                q4[f] = Complex64::new(b1 * u2 - u1 * b2, 0.0);
            }
        }
        for q in self.prod.iter_mut() {
            self.fft.forward(q);
        }

        let half = Complex64::new(0.5, 0.0);
        let half_i = Complex64::new(0.0, -0.5);
        let [q0, q1, q2, q3, q4] = &self.prod;
        for f in 0..len {
            if !self.keep[f] {
                for o in out.iter_mut() {
                    o[f] = Complex64::default();
                }
                continue;
            }
            let g = self.conj[f];
            let split = |q: &Vec<Complex64>| {
                let (a, b) = (q[f], q[g].conj());
                (half * (a + b), half_i * (a - b))
            };
            let (t00, t11) = split(q0);
            let (t22, t01) = split(q1);
            let (t02, t12) = split(q2);
            let (m01, m02) = split(q3);
            let (m12, _) = split(q4);
            let k = self.kd[f];
            let ik = [I * k[0], I * k[1], I * k[2]];

            let nu = [
                -(ik[0] * t00 + ik[1] * t01 + ik[2] * t02),
                -(ik[0] * t01 + ik[1] * t11 + ik[2] * t12),
                -(ik[0] * t02 + ik[1] * t12 + ik[2] * t22),
            ];
            let nb = [
                -(ik[1] * m01 + ik[2] * m02),
                -(-ik[0] * m01 + ik[2] * m12),
                -(-ik[0] * m02 - ik[1] * m12),
            ];
            let k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
            let project = |v: [Complex64; 3]| {
                if k2 == 0.0 {
                    return v;
                }
                let dot = (v[0] * k[0] + v[1] * k[1] + v[2] * k[2]) / k2;
                [v[0] - dot * k[0], v[1] - dot * k[1], v[2] - dot * k[2]]
            };
            let nu = project(nu);
            let nb = project(nb);
            for c in 0..3 {
                out[c][f] = nu[c];
                out[c + 3][f] = nb[c];
            }
        }
        max2.sqrt()
    }
}

/// Integrating-factor time stepper for a fixed grid and configuration.
pub struct Stepper {
    cfg: SolverConfig,
    grid: Grid3,
    ops: Operators,
    // e^{-ν|k|²h/2}, e^{-ν|k|²h}, then the same with μ
    decay: [Vec<f64>; 4],
    y: Raw,
    k: Raw,
    acc: Raw,
}

impl Stepper {
    pub fn new(grid: Grid3, cfg: &SolverConfig) -> Result<Self> {
        cfg.validate()?;
        let k2 = grid.k_squared_table();
        let h = cfg.dt;
        let table = |c: f64, tau: f64| k2.iter().map(|&s| (-c * s * tau).exp()).collect();
        Ok(Self {
            cfg: cfg.clone(),
            grid,
            ops: Operators::new(grid),
            decay: [
                table(cfg.nu, 0.5 * h),
                table(cfg.nu, h),
                table(cfg.mu, 0.5 * h),
                table(cfg.mu, h),
            ],
            y: zero_raw(grid),
            k: zero_raw(grid),
            acc: zero_raw(grid),
        })
    }

    pub fn config(&self) -> &SolverConfig {
        &self.cfg
    }

    pub fn grid(&self) -> Grid3 {
        self.grid
    }

    fn decay_index(c: usize) -> usize {
        if c < 3 {
            0
        } else {
            2
        }
    }

    // N(y) into `self.k`
    fn eval_stage(&mut self) {
        if self.cfg.nonlinear {
            self.ops.nonlinear(&self.y, &mut self.k);
        } else {
            self.k.iter_mut().for_each(|k| k.fill(Complex64::default()));
        }
    }

    /// Advances the raw state `x` at time `t` by one step. The state is left
    /// untouched when the Courant guard trips.
    pub(crate) fn step_raw(&mut self, x: &mut Raw, t: f64) -> Result<()> {
        let h = self.cfg.dt;
        let max_speed = if self.cfg.nonlinear {
            self.ops.nonlinear(x, &mut self.k)
        } else {
            self.k.iter_mut().for_each(|k| k.fill(Complex64::default()));
            max_speed_of(&mut self.ops, x)
        };
        let courant = h * max_speed * self.grid.n() as f64 / (2.0 * PI);
        if courant > MAX_COURANT {
            return Err(Error::Cfl { t, courant });
        }
        match self.cfg.scheme {
            Scheme::IfEuler => {
                for c in 0..6 {
                    let e = &self.decay[Self::decay_index(c) + 1];
                    for (f, v) in x[c].iter_mut().enumerate() {
                        *v = e[f] * (*v + h * self.k[c][f]);
                    }
                }
            }
            Scheme::IfRk4 => self.rk4_stages(x, h),
        }
        Ok(())
    }

    // Lawson integrating-factor RK4; `self.k` already holds N(x).
    fn rk4_stages(&mut self, x: &mut Raw, h: f64) {
        let len = self.grid.len();
        for c in 0..6 {
            let d = Self::decay_index(c);
            let (eh, ef) = (&self.decay[d], &self.decay[d + 1]);
            for f in 0..len {
                let a = self.k[c][f];
                self.acc[c][f] = ef[f] * (x[c][f] + h / 6.0 * a);
                self.y[c][f] = eh[f] * (x[c][f] + 0.5 * h * a);
            }
        }
        self.eval_stage();
        for c in 0..6 {
            let eh = &self.decay[Self::decay_index(c)];
            for f in 0..len {
                let b = self.k[c][f];
                self.acc[c][f] += h / 3.0 * eh[f] * b;
                self.y[c][f] = eh[f] * x[c][f] + 0.5 * h * b;
            }
        }
        self.eval_stage();
        for c in 0..6 {
            let d = Self::decay_index(c);
            let (eh, ef) = (&self.decay[d], &self.decay[d + 1]);
            for f in 0..len {
                let kc = self.k[c][f];
                self.acc[c][f] += h / 3.0 * eh[f] * kc;
                self.y[c][f] = ef[f] * x[c][f] + h * eh[f] * kc;
            }
        }
        self.eval_stage();
        for c in 0..6 {
            for f in 0..len {
                x[c][f] = self.acc[c][f] + h / 6.0 * self.k[c][f];
            }
        }
    }

    /// One step of `state`; errors on a Courant violation.
    pub fn step(&mut self, state: &SolverState) -> Result<SolverState> {
        if state.grid() != self.grid {
            return Err(Error::GridMismatch(self.grid.n(), state.grid().n()));
        }
        let mut raw = state.to_raw();
        self.step_raw(&mut raw, state.t)?;
        Ok(SolverState::from_raw(self.grid, &raw, state.t + self.cfg.dt))
    }
}

// max|u| on the collocation grid, for the linear runs that skip products
fn max_speed_of(ops: &mut Operators, x: &Raw) -> f64 {
    let len = ops.grid.len();
    let mut mag2 = vec![0.0; len];
    for c in 0..3 {
        let p = &mut ops.phys[c];
        p.copy_from_slice(&x[c]);
        ops.fft.inverse(p);
        for f in 0..len {
            mag2[f] += p[f].re * p[f].re;
        }
    }
    mag2.into_iter().fold(0.0, f64::max).sqrt()
}

/// Single step with a freshly built stepper.
pub fn step(state: &SolverState, cfg: &SolverConfig) -> Result<SolverState> {
    Stepper::new(state.grid(), cfg)?.step(state)
}
