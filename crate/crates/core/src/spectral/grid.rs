use std::f64::consts::PI;

use crate::{Error, Result};

/// Uniform collocation grid on the periodic box `[0, 2π]³`.
///
/// Coefficients are stored row-major over `(k₁, k₂, k₃)`, each axis in FFT
/// index order `0..n`, where index `j` carries the integer wavenumber `j` for
/// `j <= n/2` and `j - n` otherwise. The Nyquist index `n/2` therefore carries
/// `+n/2`, so wavevectors range over `{-n/2+1, …, n/2}³`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Grid3 {
    n: usize,
}

impl Grid3 {
    pub fn new(n: usize) -> Result<Self> {
        if n < 8 || !n.is_power_of_two() {
            return Err(Error::InvalidGrid(n));
        }
        Ok(Self { n })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of modes (and collocation points), `n³`.
    #[inline]
    pub fn len(&self) -> usize {
        self.n * self.n * self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn box_length(&self) -> f64 {
        2.0 * PI
    }

    /// Nyquist index `n/2`.
    pub fn k_max(&self) -> usize {
        self.n / 2
    }

    /// Largest dyadic shell index whose annulus meets the grid,
    /// `floor(log2(k_max)) + 1`. Shell `q_max` reaches up to `4 k_max`, which
    /// covers the corner wavevectors of length `√3 k_max`.
    pub fn q_max(&self) -> i32 {
        self.k_max().ilog2() as i32 + 1
    }

    /// Volume element of the collocation quadrature, `(2π/n)³`.
    pub fn cell_volume(&self) -> f64 {
        let h = self.box_length() / self.n as f64;
        h * h * h
    }

    /// Physical coordinate of collocation index `i` along any axis.
    #[inline]
    pub fn coordinate(&self, i: usize) -> f64 {
        self.box_length() * i as f64 / self.n as f64
    }

    /// Integer wavenumber carried by FFT index `j`.
    #[inline]
    pub fn wavenumber(&self, j: usize) -> i64 {
        if j <= self.n / 2 {
            j as i64
        } else {
            j as i64 - self.n as i64
        }
    }

    /// FFT index holding wavenumber `k` (taken modulo `n`).
    #[inline]
    pub fn index_of(&self, k: i64) -> usize {
        k.rem_euclid(self.n as i64) as usize
    }

    #[inline]
    pub fn flat(&self, i: usize, j: usize, l: usize) -> usize {
        (i * self.n + j) * self.n + l
    }

    #[inline]
    pub fn unflatten(&self, flat: usize) -> [usize; 3] {
        let n = self.n;
        [flat / (n * n), (flat / n) % n, flat % n]
    }

    /// Flat index of the mode with wavevector `k`.
    pub fn flat_of(&self, k: [i64; 3]) -> usize {
        self.flat(self.index_of(k[0]), self.index_of(k[1]), self.index_of(k[2]))
    }

    /// Integer wavevector stored at flat index `flat`.
    #[inline]
    pub fn wavevector(&self, flat: usize) -> [i64; 3] {
        let [i, j, l] = self.unflatten(flat);
        [self.wavenumber(i), self.wavenumber(j), self.wavenumber(l)]
    }

    /// Flat index of `-k`.
    #[inline]
    pub fn conjugate_index(&self, flat: usize) -> usize {
        let n = self.n;
        let [i, j, l] = self.unflatten(flat);
        self.flat((n - i) % n, (n - j) % n, (n - l) % n)
    }

    /// `|k|²` of the mode at `flat`.
    #[inline]
    pub fn k_squared(&self, flat: usize) -> f64 {
        let k = self.wavevector(flat);
        (k[0] * k[0] + k[1] * k[1] + k[2] * k[2]) as f64
    }

    /// Wavevector used by odd-order derivatives: components sitting on the
    /// Nyquist index are zeroed so that derivatives of real fields stay real.
    #[inline]
    pub fn derivative_wavevector(&self, flat: usize) -> [f64; 3] {
        let k = self.wavevector(flat);
        let nyq = (self.n / 2) as i64;
        let d = |c: i64| if c == nyq { 0.0 } else { c as f64 };
        [d(k[0]), d(k[1]), d(k[2])]
    }

    /// True if any component of the mode sits on the Nyquist index.
    #[inline]
    pub fn is_nyquist(&self, flat: usize) -> bool {
        let nyq = self.n / 2;
        let [i, j, l] = self.unflatten(flat);
        i == nyq || j == nyq || l == nyq
    }

    /// Table of `|k|²` for every mode.
    pub fn k_squared_table(&self) -> Vec<f64> {
        (0..self.len()).map(|f| self.k_squared(f)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_sizes() {
        assert!(Grid3::new(4).is_err());
        assert!(Grid3::new(12).is_err());
        assert!(Grid3::new(16).is_ok());
    }

    #[test]
    fn shell_range() {
        assert_eq!(Grid3::new(8).unwrap().q_max(), 3);
        assert_eq!(Grid3::new(16).unwrap().q_max(), 4);
        assert_eq!(Grid3::new(32).unwrap().q_max(), 5);
    }

    #[test]
    fn wavevectors_enumerate_each_mode_once() {
        let g = Grid3::new(8).unwrap();
        let mut seen = std::collections::HashSet::new();
        for f in 0..g.len() {
            let k = g.wavevector(f);
            for c in k {
                assert!((-3..=4).contains(&c));
            }
            assert!(seen.insert(k));
            assert_eq!(g.flat_of(k), f);
            assert_eq!(g.conjugate_index(g.conjugate_index(f)), f);
        }
        assert_eq!(seen.len(), 512);
    }
}
