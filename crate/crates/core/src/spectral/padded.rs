use num_complex::Complex64;

use super::field::{SpectralField, SpectralScalarField, SpectralVectorField};
use super::fft;
use super::grid::Grid3;
use crate::{Error, Result};

/// Transforms between an `n`-grid spectrum and samples on the `3n/2`
/// zero-padded collocation grid, so that quadratic products of fields
/// resolved on the `n` grid are computed without aliasing. Modes on the
/// Nyquist planes are dropped on the way in and on the way out.
#[derive(Clone, Copy, Debug)]
pub struct PaddedTransform {
    grid: Grid3,
    m: usize,
}

impl PaddedTransform {
    pub fn new(grid: Grid3) -> Self {
        Self {
            grid,
            m: 3 * grid.n() / 2,
        }
    }

    pub fn grid(&self) -> Grid3 {
        self.grid
    }

    /// Side of the padded grid.
    pub fn size(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.m * self.m * self.m
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    fn padded_index(&self, k: [i64; 3]) -> usize {
        let m = self.m as i64;
        let idx = |c: i64| c.rem_euclid(m) as usize;
        (idx(k[0]) * self.m + idx(k[1])) * self.m + idx(k[2])
    }

    fn embed(&self, coeffs: impl Fn(usize) -> Complex64) -> Vec<Complex64> {
        let mut out = vec![Complex64::default(); self.len()];
        for f in 0..self.grid.len() {
            if self.grid.is_nyquist(f) {
                continue;
            }
            out[self.padded_index(self.grid.wavevector(f))] = coeffs(f);
        }
        out
    }

    fn inverse(&self, mut data: Vec<Complex64>) -> Vec<f64> {
        fft::plan(self.m).inverse(&mut data);
        data.into_iter().map(|c| c.re).collect()
    }

    pub fn scalar_to_physical(&self, f: &SpectralScalarField) -> Vec<f64> {
        let c = f.coeffs();
        self.inverse(self.embed(|i| c[i]))
    }

    pub fn vector_to_physical(&self, v: &SpectralVectorField) -> [Vec<f64>; 3] {
        std::array::from_fn(|c| self.scalar_to_physical(v.component(c)))
    }

    /// Samples of `∂_j v_i`, indexed `[i][j]`.
    pub fn gradient_to_physical(&self, v: &SpectralVectorField) -> [[Vec<f64>; 3]; 3] {
        let grid = self.grid;
        std::array::from_fn(|i| {
            let c = v.component(i).coeffs();
            std::array::from_fn(|j| {
                self.inverse(self.embed(|f| {
                    Complex64::new(0.0, grid.derivative_wavevector(f)[j]) * c[f]
                }))
            })
        })
    }

    /// Forward transform of padded samples truncated back to the `n` grid.
    pub fn scalar_to_spectral(&self, values: &[f64]) -> SpectralScalarField {
        let mut data: Vec<Complex64> = values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        fft::plan(self.m).forward(&mut data);
        let coeffs = (0..self.grid.len())
            .map(|f| {
                if self.grid.is_nyquist(f) {
                    Complex64::default()
                } else {
                    data[self.padded_index(self.grid.wavevector(f))]
                }
            })
            .collect();
        SpectralScalarField::new(self.grid, coeffs).expect("length matches grid")
    }

    pub fn vector_to_spectral(&self, comps: &[Vec<f64>; 3]) -> SpectralVectorField {
        SpectralVectorField::new(std::array::from_fn(|c| self.scalar_to_spectral(&comps[c])))
            .expect("same grid")
    }
}

/// Pointwise `(u·∇)v` from samples of `u` and of `∂_j v_i`.
pub fn advect_samples(u: &[Vec<f64>; 3], grad_v: &[[Vec<f64>; 3]; 3]) -> [Vec<f64>; 3] {
    std::array::from_fn(|i| {
        let g = &grad_v[i];
        (0..u[0].len())
            .map(|p| u[0][p] * g[0][p] + u[1][p] * g[1][p] + u[2][p] * g[2][p])
            .collect()
    })
}

pub(crate) fn add_samples(acc: &mut [Vec<f64>; 3], other: &[Vec<f64>; 3]) {
    for (a, b) in acc.iter_mut().zip(other) {
        for (x, y) in a.iter_mut().zip(b) {
            *x += y;
        }
    }
}

/// `(u·∇)v` evaluated on the zero-padded grid and truncated to the `n` grid.
pub fn advect(u: &SpectralVectorField, v: &SpectralVectorField) -> Result<SpectralVectorField> {
    if u.grid() != v.grid() {
        return Err(Error::GridMismatch(u.grid().n(), v.grid().n()));
    }
    let pad = PaddedTransform::new(u.grid());
    let us = pad.vector_to_physical(u);
    let gv = pad.gradient_to_physical(v);
    Ok(pad.vector_to_spectral(&advect_samples(&us, &gv)))
}
