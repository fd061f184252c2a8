use super::partition::{lambda, DyadicPartition};
use crate::spectral::{
    add_samples, advect_samples, check_exponent, PaddedTransform, SpectralField,
    SpectralVectorField,
};
use crate::{Error, Result};

/// The three paraproduct pieces of `Δ_q(u·∇v)`.
#[derive(Clone, Debug)]
pub struct BonyParts {
    /// `Σ_{|q-p|<=2} Δ_q(u_{<=p-2}·∇v_p)`
    pub low_high: SpectralVectorField,
    /// `Σ_{|q-p|<=2} Δ_q(u_p·∇v_{<=p-2})`
    pub high_low: SpectralVectorField,
    /// `Σ_{p>=q-2} Δ_q(u_p·∇ṽ_p)`
    pub high_high: SpectralVectorField,
}

impl BonyParts {
    pub fn sum(&self) -> SpectralVectorField {
        let mut s = self.low_high.clone();
        s.axpy(1.0, &self.high_low).expect("same grid");
        s.axpy(1.0, &self.high_high).expect("same grid");
        s
    }
}

type Samples = [Vec<f64>; 3];
type GradSamples = [[Vec<f64>; 3]; 3];

/// Zero-padded samples of the shells of `u` and of `∇v_p`, reused across
/// every `q` of a paraproduct evaluation.
pub struct Paraproduct<'a> {
    part: &'a DyadicPartition,
    pad: PaddedTransform,
    u_shells: Vec<Samples>,
    grad_v_shells: Vec<GradSamples>,
}

impl<'a> Paraproduct<'a> {
    pub fn new(u: &SpectralVectorField, v: &SpectralVectorField, part: &'a DyadicPartition) -> Result<Self> {
        for g in [u.grid(), v.grid()] {
            if g != part.grid() {
                return Err(Error::GridMismatch(g.n(), part.grid().n()));
            }
        }
        let pad = PaddedTransform::new(part.grid());
        let mut u_shells = Vec::new();
        let mut grad_v_shells = Vec::new();
        for q in part.shells() {
            u_shells.push(pad.vector_to_physical(&part.project_shell(u, q)?));
            grad_v_shells.push(pad.gradient_to_physical(&part.project_shell(v, q)?));
        }
        Ok(Self {
            part,
            pad,
            u_shells,
            grad_v_shells,
        })
    }

    fn in_range(&self, p: i32) -> bool {
        p >= -1 && p <= self.part.q_max()
    }

    fn zero(&self) -> Samples {
        std::array::from_fn(|_| vec![0.0; self.pad.len()])
    }

    fn u_sum(&self, lo: i32, hi: i32) -> Samples {
        let mut acc = self.zero();
        for p in lo.max(-1)..=hi.min(self.part.q_max()) {
            add_samples(&mut acc, &self.u_shells[(p + 1) as usize]);
        }
        acc
    }

    fn grad_v_sum(&self, lo: i32, hi: i32) -> GradSamples {
        let mut acc: GradSamples = std::array::from_fn(|_| self.zero());
        for p in lo.max(-1)..=hi.min(self.part.q_max()) {
            for (a, b) in acc.iter_mut().zip(&self.grad_v_shells[(p + 1) as usize]) {
                add_samples(a, b);
            }
        }
        acc
    }

    fn finish(&self, samples: &Samples, q: i32) -> Result<SpectralVectorField> {
        self.part.project_shell(&self.pad.vector_to_spectral(samples), q)
    }

    /// `Δ_q(u·∇v)` evaluated directly.
    pub fn direct(&self, q: i32) -> Result<SpectralVectorField> {
        let q_max = self.part.q_max();
        let prod = advect_samples(&self.u_sum(-1, q_max), &self.grad_v_sum(-1, q_max));
        self.finish(&prod, q)
    }

    pub fn decompose(&self, q: i32) -> Result<BonyParts> {
        self.part.multiplier(q)?;
        let mut low_high = self.zero();
        let mut high_low = self.zero();
        for p in (q - 2)..=(q + 2) {
            if !self.in_range(p) {
                continue;
            }
            let idx = (p + 1) as usize;
            add_samples(
                &mut low_high,
                &advect_samples(&self.u_sum(-1, p - 2), &self.grad_v_shells[idx]),
            );
            add_samples(
                &mut high_low,
                &advect_samples(&self.u_shells[idx], &self.grad_v_sum(-1, p - 2)),
            );
        }
        let mut high_high = self.zero();
        for p in (q - 2).max(-1)..=self.part.q_max() {
            let idx = (p + 1) as usize;
            add_samples(
                &mut high_high,
                &advect_samples(&self.u_shells[idx], &self.grad_v_sum(p - 1, p + 1)),
            );
        }
        Ok(BonyParts {
            low_high: self.finish(&low_high, q)?,
            high_low: self.finish(&high_low, q)?,
            high_high: self.finish(&high_high, q)?,
        })
    }
}

/// Bony decomposition of `Δ_q(u·∇v)` for a single shell.
pub fn bony_decompose(
    u: &SpectralVectorField,
    v: &SpectralVectorField,
    q: i32,
    part: &DyadicPartition,
) -> Result<BonyParts> {
    Paraproduct::new(u, v, part)?.decompose(q)
}

/// `[Δ_q, u_low·∇]v = Δ_q(u_low·∇v) - u_low·∇(Δ_q v)`, both products
/// zero-padded.
pub fn commutator(
    u_low: &SpectralVectorField,
    v: &SpectralVectorField,
    q: i32,
    part: &DyadicPartition,
) -> Result<SpectralVectorField> {
    for g in [u_low.grid(), v.grid()] {
        if g != part.grid() {
            return Err(Error::GridMismatch(g.n(), part.grid().n()));
        }
    }
    let pad = PaddedTransform::new(part.grid());
    let us = pad.vector_to_physical(u_low);
    let whole = pad.vector_to_spectral(&advect_samples(&us, &pad.gradient_to_physical(v)));
    let mut out = part.project_shell(&whole, q)?;
    let vq = part.project_shell(v, q)?;
    let inner = pad.vector_to_spectral(&advect_samples(&us, &pad.gradient_to_physical(&vq)));
    out.axpy(-1.0, &inner)?;
    Ok(out)
}

/// Measured form of the commutator estimate
/// `‖[Δ_q, u·∇]v‖_{r₁} <= C ‖v‖_{r₃} Σ_{p'} λ_{p'} ‖u_{p'}‖_{r₂}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CommutatorBound {
    pub lhs: f64,
    pub v_norm: f64,
    pub low_sum: f64,
    /// `lhs / (v_norm · low_sum)`, zero when both sides vanish.
    pub constant: f64,
}

pub fn commutator_bound(
    u_low: &SpectralVectorField,
    v: &SpectralVectorField,
    q: i32,
    part: &DyadicPartition,
    (r1, r2, r3): (f64, f64, f64),
) -> Result<CommutatorBound> {
    for r in [r1, r2, r3] {
        check_exponent(r)?;
    }
    if (1.0 / r2 + 1.0 / r3 - 1.0 / r1).abs() > 1e-12 {
        return Err(Error::Config(format!(
            "exponents must satisfy 1/r2 + 1/r3 = 1/r1, got ({r1}, {r2}, {r3})"
        )));
    }
    let lhs = commutator(u_low, v, q, part)?.lebesgue_norm(r1)?;
    let v_norm = v.lebesgue_norm(r3)?;
    let mut low_sum = 0.0;
    for p in part.shells() {
        low_sum += lambda(p) * part.project_shell(u_low, p)?.lebesgue_norm(r2)?;
    }
    let denom = v_norm * low_sum;
    let constant = if denom > 0.0 {
        lhs / denom
    } else if lhs == 0.0 {
        0.0
    } else {
        return Err(Error::UndefinedRatio);
    };
    Ok(CommutatorBound {
        lhs,
        v_norm,
        low_sum,
        constant,
    })
}
