use num_complex::Complex64;

use super::fft;
use super::grid::Grid3;
use crate::{Error, Result};

/// Relative Hermitian defect tolerated by the checked transforms.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Tolerance of the solenoidal invariant `|k·v̂(k)| <= tol · ‖v̂(k)‖`.
pub const SOLENOIDAL_TOL: f64 = 1e-12;

/// Operations shared by scalar and vector spectral fields.
pub trait SpectralField: Clone + Send + Sync {
    fn grid(&self) -> Grid3;

    fn zeros_like(&self) -> Self;

    /// Coefficientwise multiplication by a real Fourier multiplier.
    fn apply_multiplier(&self, multiplier: &[f64]) -> Self;

    /// `self += a · other`.
    fn axpy(&mut self, a: f64, other: &Self) -> Result<()>;

    /// `Σ_k |f̂(k)|²` summed over components.
    fn coefficient_energy(&self) -> f64;

    /// `L^r` norm over the collocation grid (vector fields use the pointwise
    /// Euclidean magnitude).
    fn lebesgue_norm(&self, r: f64) -> Result<f64>;

    fn scaled(&self, a: f64) -> Self {
        let mut out = self.zeros_like();
        out.axpy(a, self).expect("same grid");
        out
    }

    fn difference(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        out.axpy(-1.0, other)?;
        Ok(out)
    }

    /// `L²` norm from the coefficients, `((2π)³ Σ|f̂|²)^{1/2}`.
    fn l2_norm_spectral(&self) -> f64 {
        let vol = self.grid().box_length().powi(3);
        (vol * self.coefficient_energy()).sqrt()
    }
}

pub(crate) fn check_exponent(r: f64) -> Result<()> {
    if r.is_nan() || r < 1.0 {
        return Err(Error::InvalidExponent(r));
    }
    Ok(())
}

fn check_grid(a: Grid3, b: Grid3) -> Result<()> {
    if a != b {
        return Err(Error::GridMismatch(a.n(), b.n()));
    }
    Ok(())
}

/// Real scalar sampled on the `n³` collocation grid, row-major `(x, y, z)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PhysicalScalarField {
    grid: Grid3,
    values: Vec<f64>,
}

impl PhysicalScalarField {
    pub fn new(grid: Grid3, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::Length {
                expected: grid.len(),
                got: values.len(),
            });
        }
        Ok(Self { grid, values })
    }

    pub fn from_fn(grid: Grid3, f: impl Fn(f64, f64, f64) -> f64) -> Self {
        let values = (0..grid.len())
            .map(|p| {
                let [i, j, l] = grid.unflatten(p);
                f(grid.coordinate(i), grid.coordinate(j), grid.coordinate(l))
            })
            .collect();
        Self { grid, values }
    }

    pub fn grid(&self) -> Grid3 {
        self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn lebesgue_norm(&self, r: f64) -> Result<f64> {
        check_exponent(r)?;
        Ok(norm_of_magnitudes(
            self.values.iter().map(|v| v.abs()),
            r,
            self.grid.cell_volume(),
        ))
    }

    pub fn to_spectral(&self) -> SpectralScalarField {
        let mut data: Vec<Complex64> = self.values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        fft::plan(self.grid.n()).forward(&mut data);
        SpectralScalarField {
            grid: self.grid,
            coeffs: data,
        }
    }
}

/// Real vector field sampled on the collocation grid.
#[derive(Clone, Debug, PartialEq)]
pub struct PhysicalVectorField {
    grid: Grid3,
    components: [Vec<f64>; 3],
}

impl PhysicalVectorField {
    pub fn new(grid: Grid3, components: [Vec<f64>; 3]) -> Result<Self> {
        for c in &components {
            if c.len() != grid.len() {
                return Err(Error::Length {
                    expected: grid.len(),
                    got: c.len(),
                });
            }
        }
        Ok(Self { grid, components })
    }

    pub fn from_fn(grid: Grid3, f: impl Fn(f64, f64, f64) -> [f64; 3]) -> Self {
        let mut components = [
            vec![0.0; grid.len()],
            vec![0.0; grid.len()],
            vec![0.0; grid.len()],
        ];
        for p in 0..grid.len() {
            let [i, j, l] = grid.unflatten(p);
            let v = f(grid.coordinate(i), grid.coordinate(j), grid.coordinate(l));
            for c in 0..3 {
                components[c][p] = v[c];
            }
        }
        Self { grid, components }
    }

    pub fn grid(&self) -> Grid3 {
        self.grid
    }

    pub fn component(&self, c: usize) -> &[f64] {
        &self.components[c]
    }

    pub fn components(&self) -> &[Vec<f64>; 3] {
        &self.components
    }

    /// Largest pointwise Euclidean magnitude.
    pub fn max_magnitude(&self) -> f64 {
        self.magnitudes().fold(0.0, f64::max)
    }

    fn magnitudes(&self) -> impl Iterator<Item = f64> + '_ {
        let [a, b, c] = &self.components;
        a.iter()
            .zip(b)
            .zip(c)
            .map(|((x, y), z)| (x * x + y * y + z * z).sqrt())
    }

    pub fn lebesgue_norm(&self, r: f64) -> Result<f64> {
        check_exponent(r)?;
        Ok(norm_of_magnitudes(self.magnitudes(), r, self.grid.cell_volume()))
    }

    pub fn to_spectral(&self) -> SpectralVectorField {
        let comps = self.components.clone().map(|c| {
            PhysicalScalarField {
                grid: self.grid,
                values: c,
            }
            .to_spectral()
        });
        SpectralVectorField {
            grid: self.grid,
            components: comps,
        }
    }
}

fn norm_of_magnitudes(mags: impl Iterator<Item = f64>, r: f64, cell: f64) -> f64 {
    if r.is_infinite() {
        return mags.fold(0.0, f64::max);
    }
    let sum: f64 = if r == 2.0 {
        mags.map(|m| m * m).sum()
    } else {
        mags.map(|m| m.powf(r)).sum()
    };
    (cell * sum).powf(1.0 / r)
}

/// Fourier coefficients of a real scalar on the periodic box.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralScalarField {
    grid: Grid3,
    coeffs: Vec<Complex64>,
}

impl SpectralScalarField {
    pub fn new(grid: Grid3, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() != grid.len() {
            return Err(Error::Length {
                expected: grid.len(),
                got: coeffs.len(),
            });
        }
        Ok(Self { grid, coeffs })
    }

    pub fn zeros(grid: Grid3) -> Self {
        Self {
            grid,
            coeffs: vec![Complex64::default(); grid.len()],
        }
    }

    /// Field built from `(k, c)` pairs; each sets `c` at `k` and `conj(c)` at
    /// `-k`. Contributions at the same mode accumulate.
    pub fn from_modes(grid: Grid3, modes: &[([i64; 3], Complex64)]) -> Self {
        let mut f = Self::zeros(grid);
        for &(k, c) in modes {
            let a = grid.flat_of(k);
            let b = grid.conjugate_index(a);
            if a == b {
                f.coeffs[a] += Complex64::new(c.re, 0.0);
            } else {
                f.coeffs[a] += c;
                f.coeffs[b] += c.conj();
            }
        }
        f
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [Complex64] {
        &mut self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    pub fn coeff(&self, k: [i64; 3]) -> Complex64 {
        self.coeffs[self.grid.flat_of(k)]
    }

    /// `max_k |c(-k) - conj(c(k))|`.
    pub fn hermitian_defect(&self) -> f64 {
        let n = self.grid.n();
        let mut worst: f64 = 0.0;
        for i in 0..n {
            let ci = (n - i) % n;
            for j in 0..n {
                let cj = (n - j) % n;
                let row = (i * n + j) * n;
                let crow = (ci * n + cj) * n;
                for l in 0..n {
                    let cl = (n - l) % n;
                    let d = self.coeffs[crow + cl] - self.coeffs[row + l].conj();
                    worst = worst.max(d.norm());
                }
            }
        }
        worst
    }

    pub(crate) fn check_hermitian(&self) -> Result<()> {
        let scale = self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        let defect = self.hermitian_defect();
        if defect > HERMITIAN_TOL * scale.max(f64::MIN_POSITIVE) && defect > 0.0 {
            return Err(Error::SymmetryViolation(defect));
        }
        Ok(())
    }

    /// Inverse transform to the collocation grid. A coefficient `A` at `k`
    /// with its conjugate partner yields `2 Re(A e^{ik·x})`.
    pub fn to_physical(&self) -> Result<PhysicalScalarField> {
        self.check_hermitian()?;
        Ok(self.to_physical_unchecked())
    }

    pub(crate) fn to_physical_unchecked(&self) -> PhysicalScalarField {
        let mut data = self.coeffs.clone();
        fft::plan(self.grid.n()).inverse(&mut data);
        PhysicalScalarField {
            grid: self.grid,
            values: data.into_iter().map(|c| c.re).collect(),
        }
    }

    /// Mean value (the `k = 0` coefficient).
    pub fn mean(&self) -> f64 {
        self.coeffs[0].re
    }
}

impl SpectralField for SpectralScalarField {
    fn grid(&self) -> Grid3 {
        self.grid
    }

    fn zeros_like(&self) -> Self {
        Self::zeros(self.grid)
    }

    fn apply_multiplier(&self, multiplier: &[f64]) -> Self {
        Self {
            grid: self.grid,
            coeffs: self.coeffs.iter().zip(multiplier).map(|(c, m)| c * m).collect(),
        }
    }

    fn axpy(&mut self, a: f64, other: &Self) -> Result<()> {
        check_grid(self.grid, other.grid)?;
        for (x, y) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *x += y * a;
        }
        Ok(())
    }

    fn coefficient_energy(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    fn lebesgue_norm(&self, r: f64) -> Result<f64> {
        check_exponent(r)?;
        self.to_physical()?.lebesgue_norm(r)
    }
}

/// Three scalar spectral fields sharing one grid.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralVectorField {
    grid: Grid3,
    components: [SpectralScalarField; 3],
}

impl SpectralVectorField {
    pub fn new(components: [SpectralScalarField; 3]) -> Result<Self> {
        let grid = components[0].grid;
        for c in &components[1..] {
            check_grid(grid, c.grid)?;
        }
        Ok(Self { grid, components })
    }

    pub fn zeros(grid: Grid3) -> Self {
        Self {
            grid,
            components: std::array::from_fn(|_| SpectralScalarField::zeros(grid)),
        }
    }

    pub fn from_coeffs(grid: Grid3, coeffs: [Vec<Complex64>; 3]) -> Result<Self> {
        let [a, b, c] = coeffs;
        Self::new([
            SpectralScalarField::new(grid, a)?,
            SpectralScalarField::new(grid, b)?,
            SpectralScalarField::new(grid, c)?,
        ])
    }

    pub fn component(&self, c: usize) -> &SpectralScalarField {
        &self.components[c]
    }

    pub fn component_mut(&mut self, c: usize) -> &mut SpectralScalarField {
        &mut self.components[c]
    }

    pub fn components(&self) -> &[SpectralScalarField; 3] {
        &self.components
    }

    pub fn into_components(self) -> [SpectralScalarField; 3] {
        self.components
    }

    /// The vector coefficient `v̂(k)`.
    pub fn coeff(&self, k: [i64; 3]) -> [Complex64; 3] {
        let f = self.grid.flat_of(k);
        [
            self.components[0].coeffs[f],
            self.components[1].coeffs[f],
            self.components[2].coeffs[f],
        ]
    }

    pub fn hermitian_defect(&self) -> f64 {
        self.components
            .iter()
            .map(|c| c.hermitian_defect())
            .fold(0.0, f64::max)
    }

    pub fn to_physical(&self) -> Result<PhysicalVectorField> {
        for c in &self.components {
            c.check_hermitian()?;
        }
        Ok(self.to_physical_unchecked())
    }

    pub(crate) fn to_physical_unchecked(&self) -> PhysicalVectorField {
        PhysicalVectorField {
            grid: self.grid,
            components: std::array::from_fn(|c| self.components[c].to_physical_unchecked().values),
        }
    }

    /// `max_k |k·v̂(k)| / ‖v̂(k)‖` over modes with nonzero amplitude, using the
    /// derivative wavevector.
    pub fn solenoidal_defect(&self) -> f64 {
        let [a, b, c] = &self.components;
        (0..self.grid.len())
            .filter_map(|f| {
                let v = [a.coeffs[f], b.coeffs[f], c.coeffs[f]];
                let norm = (v[0].norm_sqr() + v[1].norm_sqr() + v[2].norm_sqr()).sqrt();
                if norm == 0.0 {
                    return None;
                }
                let k = self.grid.derivative_wavevector(f);
                Some((v[0] * k[0] + v[1] * k[1] + v[2] * k[2]).norm() / norm)
            })
            .fold(0.0, f64::max)
    }

    pub fn is_solenoidal(&self) -> bool {
        self.solenoidal_defect() <= SOLENOIDAL_TOL
    }

    /// Spectral inner product `(2π)³ Σ_k v̂(k)·conj(ŵ(k))` (real part).
    pub fn inner(&self, other: &Self) -> Result<f64> {
        check_grid(self.grid, other.grid)?;
        let vol = self.grid.box_length().powi(3);
        let s: f64 = (0..3)
            .map(|c| {
                self.components[c]
                    .coeffs
                    .iter()
                    .zip(&other.components[c].coeffs)
                    .map(|(x, y)| (x * y.conj()).re)
                    .sum::<f64>()
            })
            .sum();
        Ok(vol * s)
    }

    /// Mean vector (the `k = 0` coefficients).
    pub fn mean(&self) -> [f64; 3] {
        [
            self.components[0].mean(),
            self.components[1].mean(),
            self.components[2].mean(),
        ]
    }
}

impl SpectralField for SpectralVectorField {
    fn grid(&self) -> Grid3 {
        self.grid
    }

    fn zeros_like(&self) -> Self {
        Self::zeros(self.grid)
    }

    fn apply_multiplier(&self, multiplier: &[f64]) -> Self {
        Self {
            grid: self.grid,
            components: std::array::from_fn(|c| self.components[c].apply_multiplier(multiplier)),
        }
    }

    fn axpy(&mut self, a: f64, other: &Self) -> Result<()> {
        check_grid(self.grid, other.grid)?;
        for (x, y) in self.components.iter_mut().zip(&other.components) {
            x.axpy(a, y)?;
        }
        Ok(())
    }

    fn coefficient_energy(&self) -> f64 {
        self.components.iter().map(|c| c.coefficient_energy()).sum()
    }

    fn lebesgue_norm(&self, r: f64) -> Result<f64> {
        check_exponent(r)?;
        self.to_physical()?.lebesgue_norm(r)
    }
}
