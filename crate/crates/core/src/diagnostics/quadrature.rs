use super::record::TIME_TOL;
use crate::{Error, Result};

/// Index of the first sample at or after `T/2`; at least two samples must
/// fall in `[T/2, T]`.
pub fn window_start(times: &[f64], t_end: f64) -> Result<usize> {
    let half = 0.5 * t_end;
    let tol = TIME_TOL * t_end.max(1.0);
    let start = times.iter().position(|&t| t >= half - tol);
    match start {
        Some(s) if times.len() - s >= 2 => Ok(s),
        _ => Err(Error::Window(format!(
            "criteria need at least two snapshots in [T/2, T] = [{half}, {t_end}]"
        ))),
    }
}

/// First sample index at or after `t`, or `times.len()` if none.
pub fn first_at_or_after(times: &[f64], t: f64, scale: f64) -> usize {
    let tol = TIME_TOL * scale.max(1.0);
    times.iter().position(|&s| s >= t - tol).unwrap_or(times.len())
}

/// Trapezoid weights for `∫ 1 · g` over the samples from `from` on, where
/// interval `[t_i, t_{i+1}]` counts only if `on(i)` (indicator taken at the
/// left endpoint). `Σ w_i g_i` is the gated integral.
pub fn gated_weights(times: &[f64], from: usize, on: impl Fn(usize) -> bool) -> Vec<f64> {
    let mut w = vec![0.0; times.len()];
    for i in from..times.len().saturating_sub(1) {
        if on(i) {
            let h = 0.5 * (times[i + 1] - times[i]);
            w[i] += h;
            w[i + 1] += h;
        }
    }
    w
}

pub fn weighted_sum(w: &[f64], g: impl Fn(usize) -> f64) -> f64 {
    w.iter()
        .enumerate()
        .filter(|(_, &wi)| wi != 0.0)
        .map(|(i, &wi)| wi * g(i))
        .sum()
}

/// Table of `𝒯_q` for `q = -1 ..= q_hi` from window samples: `times[0]`
/// stands for `T/2`. `𝒯_q` is the first sample time with `Q >= q`
/// (`T/2` if the first sample already qualifies) and `T` when none does.
pub fn threshold_times(times: &[f64], q_series: &[i32], t_end: f64, q_hi: i32) -> Result<Vec<(i32, f64)>> {
    if times.is_empty() || times.len() != q_series.len() {
        return Err(Error::Window("threshold times need a nonempty window".into()));
    }
    Ok((-1..=q_hi)
        .map(|q| {
            let t = match q_series.iter().position(|&x| x >= q) {
                Some(0) => 0.5 * t_end,
                Some(i) => times[i],
                None => t_end,
            };
            (q, t)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(t_end: f64, m: usize) -> Vec<f64> {
        (0..=m).map(|i| 0.5 * t_end + 0.5 * t_end * i as f64 / m as f64).collect()
    }

    #[test]
    fn constant_series() {
        let t = grid(2.0, 8);
        let q = vec![3; t.len()];
        let table = threshold_times(&t, &q, 2.0, 6).unwrap();
        for (qq, tq) in table {
            assert_eq!(tq, if qq <= 3 { 1.0 } else { 2.0 });
        }
    }

    #[test]
    fn step_series() {
        let t = grid(4.0, 8); // 2.0, 2.25, ..., 4.0
        let q: Vec<i32> = t.iter().map(|&x| if x < 3.0 { 3 } else { 5 }).collect();
        let table = threshold_times(&t, &q, 4.0, 7).unwrap();
        let get = |k: i32| table.iter().find(|e| e.0 == k).unwrap().1;
        assert_eq!(get(3), 2.0);
        assert_eq!(get(4), 3.0);
        assert_eq!(get(5), 3.0);
        assert_eq!(get(6), 4.0);
        assert!(table.windows(2).all(|w| w[0].1 <= w[1].1));
    }

    #[test]
    fn gating() {
        let t = [0.0, 1.0, 2.0, 3.0];
        let w = gated_weights(&t, 0, |_| true);
        assert_eq!(w, vec![0.5, 1.0, 1.0, 0.5]);
        let w = gated_weights(&t, 1, |i| i != 2);
        assert_eq!(w, vec![0.0, 0.5, 0.5, 0.0]);
        assert!(window_start(&[0.0, 0.4, 0.9], 1.0).is_err());
        assert_eq!(window_start(&[0.0, 0.5, 1.0], 1.0).unwrap(), 1);
    }
}
