use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::{Fft, FftPlanner};

/// Cubic 3D complex FFT of side `m`, built from 1D plans applied along each
/// axis. `m` need not be a power of two (zero-padded grids use `3n/2`).
pub(crate) struct Fft3 {
    m: usize,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

static PLANS: OnceLock<Mutex<HashMap<usize, Arc<Fft3>>>> = OnceLock::new();

/// Shared plan for side `m`.
pub(crate) fn plan(m: usize) -> Arc<Fft3> {
    let cache = PLANS.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("fft plan cache poisoned");
    guard
        .entry(m)
        .or_insert_with(|| {
            let mut planner = FftPlanner::new();
            Arc::new(Fft3 {
                m,
                forward: planner.plan_fft_forward(m),
                inverse: planner.plan_fft_inverse(m),
            })
        })
        .clone()
}

impl Fft3 {
    /// Forward transform including the `1/m³` normalization.
    pub(crate) fn forward(&self, data: &mut [Complex64]) {
        self.transform(data, &self.forward);
        let scale = 1.0 / (self.m * self.m * self.m) as f64;
        data.par_iter_mut().for_each(|c| *c *= scale);
    }

    /// Unnormalized inverse transform: `f(x) = Σ_k c_k e^{ik·x}`.
    pub(crate) fn inverse(&self, data: &mut [Complex64]) {
        self.transform(data, &self.inverse);
    }

    fn transform(&self, data: &mut [Complex64], fft: &Arc<dyn Fft<f64>>) {
        let m = self.m;
        let plane = m * m;
        assert_eq!(data.len(), plane * m);
        let scratch_len = fft.get_inplace_scratch_len();

        // axis 2 (contiguous rows)
        data.par_chunks_mut(plane).for_each_init(
            || vec![Complex64::default(); scratch_len],
            |scratch, p| fft.process_with_scratch(p, scratch),
        );

        // axis 1: transpose each plane, transform rows, transpose back
        data.par_chunks_mut(plane).for_each_init(
            || vec![Complex64::default(); scratch_len],
            |scratch, p| {
                transpose_square(p, m);
                fft.process_with_scratch(p, scratch);
                transpose_square(p, m);
            },
        );

        // axis 0: one (i, l) slab per j, gathered transposed into a buffer
        let mut buf = vec![Complex64::default(); plane];
        let mut scratch = vec![Complex64::default(); scratch_len];
        for j in 0..m {
            for i in 0..m {
                let row = &data[i * plane + j * m..i * plane + j * m + m];
                for (l, v) in row.iter().enumerate() {
                    buf[l * m + i] = *v;
                }
            }
            fft.process_with_scratch(&mut buf, &mut scratch);
            for i in 0..m {
                let row = &mut data[i * plane + j * m..i * plane + j * m + m];
                for (l, v) in row.iter_mut().enumerate() {
                    *v = buf[l * m + i];
                }
            }
        }
    }
}

fn transpose_square(p: &mut [Complex64], m: usize) {
    for a in 0..m {
        for b in (a + 1)..m {
            p.swap(a * m + b, b * m + a);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    // direct O(m⁶) DFT used as the reference
    fn naive_inverse(c: &[Complex64], m: usize) -> Vec<Complex64> {
        let mut out = vec![Complex64::default(); c.len()];
        for x in 0..m {
            for y in 0..m {
                for z in 0..m {
                    let mut s = Complex64::default();
                    for a in 0..m {
                        for b in 0..m {
                            for d in 0..m {
                                let ph = 2.0 * PI * ((a * x + b * y + d * z) as f64) / m as f64;
                                s += c[(a * m + b) * m + d] * Complex64::from_polar(1.0, ph);
                            }
                        }
                    }
                    out[(x * m + y) * m + z] = s;
                }
            }
        }
        out
    }

    #[test]
    fn matches_direct_summation() {
        for m in [6usize, 8] {
            let c: Vec<Complex64> = (0..m * m * m)
                .map(|i| Complex64::new((i as f64 * 0.37).sin(), (i as f64 * 0.11).cos()))
                .collect();
            let expect = naive_inverse(&c, m);
            let mut got = c.clone();
            plan(m).inverse(&mut got);
            for (g, e) in got.iter().zip(&expect) {
                assert!((g - e).norm() < 1e-10);
            }
            plan(m).forward(&mut got);
            for (g, e) in got.iter().zip(&c) {
                assert!((g - e).norm() < 1e-13);
            }
        }
    }
}
