//! Multi-dimensional DFT on `(Z_K)^d` grids stored row-major.
//!
//! Forward transform convention: `f̂[ξ] = Σ_x f(x) e^{-2πi x·ξ/K}`, so a shift
//! `f(· + g)` has symbol `e^{2πi g·ξ/K}`. Inverses are normalized.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex;
use rustfft::{Fft, FftPlanner};

use crate::scalar::Real;

#[derive(Clone)]
pub struct GridFft<T: Real> {
    k: usize,
    d: usize,
    forward: Arc<dyn Fft<T>>,
    inverse: Arc<dyn Fft<T>>,
}

impl<T: Real> fmt::Debug for GridFft<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GridFft")
            .field("k", &self.k)
            .field("d", &self.d)
            .finish()
    }
}

impl<T: Real> GridFft<T> {
    pub fn new(k: usize, d: usize) -> Self {
        let mut planner = FftPlanner::new();
        Self {
            k,
            d,
            forward: planner.plan_fft_forward(k),
            inverse: planner.plan_fft_inverse(k),
        }
    }

    pub fn forward(&self, data: &mut [Complex<T>]) {
        for axis in 0..self.d {
            self.transform_axis(data, axis, &*self.forward);
        }
    }

    pub fn inverse(&self, data: &mut [Complex<T>]) {
        for axis in 0..self.d {
            self.transform_axis(data, axis, &*self.inverse);
        }
        let scale = T::one() / T::from_count(data.len());
        data.iter_mut().for_each(|z| *z *= scale);
    }

    pub fn forward_axis(&self, data: &mut [Complex<T>], axis: usize) {
        self.transform_axis(data, axis, &*self.forward);
    }

    pub fn inverse_axis(&self, data: &mut [Complex<T>], axis: usize) {
        self.transform_axis(data, axis, &*self.inverse);
        let scale = T::one() / T::from_count(self.k);
        data.iter_mut().for_each(|z| *z *= scale);
    }

    /// Stride of `axis` in the row-major layout.
    pub fn stride(&self, axis: usize) -> usize {
        self.k.pow((self.d - 1 - axis) as u32)
    }

    fn transform_axis(&self, data: &mut [Complex<T>], axis: usize, fft: &dyn Fft<T>) {
        let k = self.k;
        let stride = self.stride(axis);
        if stride == 1 {
            // Contiguous lines: rustfft processes consecutive chunks in one call.
            fft.process(data);
            return;
        }
        // Gather up to LINES neighbouring lines at once so the strided reads
        // are contiguous runs, and let rustfft batch them.
        // The width is a power of K, so it divides the stride.
        const LINES: usize = 64;
        let mut width = 1;
        while width * k <= LINES.min(stride) {
            width *= k;
        }
        let mut buf = vec![Complex::new(T::zero(), T::zero()); k * width];
        let mut scratch = vec![Complex::new(T::zero(), T::zero()); fft.get_inplace_scratch_len()];
        let block = k * stride;
        for outer in (0..data.len()).step_by(block) {
            for inner in (0..stride).step_by(width) {
                let base = outer + inner;
                for j in 0..k {
                    let src = &data[base + j * stride..base + j * stride + width];
                    for (b, &z) in src.iter().enumerate() {
                        buf[b * k + j] = z;
                    }
                }
                fft.process_with_scratch(&mut buf, &mut scratch);
                for j in 0..k {
                    let dst = &mut data[base + j * stride..base + j * stride + width];
                    for (b, z) in dst.iter_mut().enumerate() {
                        *z = buf[b * k + j];
                    }
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::index;

    fn naive_dft(data: &[Complex<f64>], k: usize, d: usize) -> Vec<Complex<f64>> {
        let shape = vec![k; d];
        let n = data.len();
        let mut xi = vec![0; d];
        let mut x = vec![0; d];
        (0..n)
            .map(|a| {
                index::unravel(a, &shape, &mut xi);
                (0..n)
                    .map(|b| {
                        index::unravel(b, &shape, &mut x);
                        let dot: usize = xi.iter().zip(&x).map(|(u, v)| u * v).sum();
                        let angle = -2.0 * std::f64::consts::PI * (dot % k) as f64 / k as f64;
                        data[b] * Complex::from_polar(1.0, angle)
                    })
                    .sum()
            })
            .collect()
    }

    #[test]
    fn matches_naive_dft_and_round_trips() {
        // the larger cases cover batched lines narrower than the stride
        for (k, d) in [
            (2usize, 3usize),
            (3, 2),
            (4, 2),
            (5, 1),
            (3, 3),
            (3, 5),
            (5, 4),
            (2, 8),
            (8, 3),
        ] {
            let n = k.pow(d as u32);
            let data: Vec<_> = (0..n)
                .map(|i| Complex::new((i as f64 * 0.37).sin(), (i as f64 * 1.3).cos()))
                .collect();
            let fft = GridFft::new(k, d);
            let mut hat = data.clone();
            fft.forward(&mut hat);
            let naive = naive_dft(&data, k, d);
            for (a, b) in hat.iter().zip(&naive) {
                assert!((a - b).norm() < 1e-12);
            }
            fft.inverse(&mut hat);
            for (a, b) in hat.iter().zip(&data) {
                assert!((a - b).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn parseval() {
        let (k, d) = (8, 3);
        let n = k * k * k;
        let data: Vec<_> = (0..n)
            .map(|i| Complex::new(((i * 7919) % 101) as f64 / 50.0 - 1.0, (i % 13) as f64))
            .collect();
        let fft = GridFft::new(k, d);
        let mut hat = data.clone();
        fft.forward(&mut hat);
        let e0: f64 = data.iter().map(|z| z.norm_sqr()).sum();
        let e1: f64 = hat.iter().map(|z| z.norm_sqr()).sum::<f64>() / n as f64;
        assert!((e0 - e1).abs() <= 1e-13 * e0);
    }
}
