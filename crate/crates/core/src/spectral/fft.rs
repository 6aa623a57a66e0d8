//! Multidimensional FFTs over the grid layout, with per-thread plan caches.

use std::cell::RefCell;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

fn plan(m: usize, inverse: bool) -> Arc<dyn Fft<f64>> {
    PLANNER.with(|p| {
        let mut p = p.borrow_mut();
        if inverse {
            p.plan_fft_inverse(m)
        } else {
            p.plan_fft_forward(m)
        }
    })
}

/// Unnormalized in-place DFT of an `m^n` row-major array along every axis.
/// The inverse direction uses `e^{+2 pi i jk/m}`.
pub(crate) fn fft_nd(data: &mut [Complex64], n: usize, m: usize, inverse: bool) {
    debug_assert_eq!(data.len(), m.pow(n as u32));
    let fft = plan(m, inverse);
    let mut scratch = vec![Complex64::new(0.0, 0.0); fft.get_inplace_scratch_len()];
    // Last axis: contiguous lines.
    fft.process_with_scratch(data, &mut scratch);
    if n == 1 {
        return;
    }
    let mut line = vec![Complex64::new(0.0, 0.0); m];
    for axis in 0..n - 1 {
        let stride = m.pow((n - 1 - axis) as u32);
        let block = stride * m;
        for outer in (0..data.len()).step_by(block) {
            for inner in 0..stride {
                let base = outer + inner;
                for (i, v) in line.iter_mut().enumerate() {
                    *v = data[base + i * stride];
                }
                fft.process_with_scratch(&mut line, &mut scratch);
                for (i, v) in line.iter().enumerate() {
                    data[base + i * stride] = *v;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::TAU;

    fn naive(data: &[Complex64], n: usize, m: usize) -> Vec<Complex64> {
        let len = data.len();
        let idx = |mut f: usize| {
            let mut v = vec![0; n];
            for a in (0..n).rev() {
                v[a] = f % m;
                f /= m;
            }
            v
        };
        (0..len)
            .map(|k| {
                let kv = idx(k);
                (0..len)
                    .map(|j| {
                        let jv = idx(j);
                        let phase: usize = kv.iter().zip(&jv).map(|(a, b)| a * b).sum();
                        data[j] * Complex64::from_polar(1.0, -TAU * (phase % m) as f64 / m as f64)
                    })
                    .sum()
            })
            .collect()
    }

    #[test]
    fn matches_naive_dft() {
        for (n, m) in [(1, 8), (2, 4), (3, 4)] {
            let len = m * usize::pow(m, n as u32 - 1);
            let data: Vec<Complex64> = (0..len)
                .map(|i| Complex64::new((i as f64 * 0.37).sin(), (i as f64 * 1.3).cos()))
                .collect();
            let mut fast = data.clone();
            fft_nd(&mut fast, n, m, false);
            for (a, b) in fast.iter().zip(naive(&data, n, m)) {
                assert!((a - b).norm() < 1e-12);
            }
        }
    }
}
