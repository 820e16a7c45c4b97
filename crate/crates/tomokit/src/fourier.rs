//! Scaled Fourier sums on midpoint grids.
//!
//! Everything here evaluates oscillatory quadratures of the form
//! `out_k = sum_j f_j exp(-i s x_k x_j) dx` with input and output on the
//! same uniform grid. The full-row variant runs as a Bluestein chirp
//! convolution (three FFTs); the single-point variant is a direct sum.

use std::sync::{Mutex, OnceLock};

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::grid::Grid1D;

fn planner() -> &'static Mutex<FftPlanner<f64>> {
    static PLANNER: OnceLock<Mutex<FftPlanner<f64>>> = OnceLock::new();
    PLANNER.get_or_init(|| Mutex::new(FftPlanner::new()))
}

pub fn fft_in_place(buf: &mut [Complex64]) {
    let fft = planner().lock().unwrap().plan_fft_forward(buf.len());
    fft.process(buf);
}

pub fn ifft_in_place(buf: &mut [Complex64]) {
    let fft = planner().lock().unwrap().plan_fft_inverse(buf.len());
    fft.process(buf);
    let scale = 1.0 / buf.len() as f64;
    for v in buf.iter_mut() {
        *v *= scale;
    }
}

fn phase(theta: f64) -> Complex64 {
    Complex64::new(theta.cos(), theta.sin())
}

/// Reusable plan for scaled Fourier sums
/// `out_k = sum_j f_j exp(-i s X_k y_j) dy` with `y` on `in_grid` and `X` on
/// `out_grid`: Bluestein chirp convolution with the kernel spectrum and both
/// chirps precomputed, O((n+m) log(n+m)) per application.
pub struct CrossCzt {
    n: usize,
    m: usize,
    len: usize,
    pre: Vec<Complex64>,
    post: Vec<Complex64>,
    kernel_spectrum: Vec<Complex64>,
}

impl CrossCzt {
    pub fn new(in_grid: &Grid1D, out_grid: &Grid1D, s: f64) -> Self {
        let n = in_grid.count();
        let m = out_grid.count();
        let dy = in_grid.spacing();
        let dx = out_grid.spacing();
        let y0 = in_grid.point(0);
        let x0 = out_grid.point(0);
        let w = s * dx * dy;

        let len = (n + m - 1).next_power_of_two();
        let pre: Vec<Complex64> = (0..n)
            .map(|j| {
                let jf = j as f64;
                phase(-s * x0 * dy * jf - 0.5 * w * jf * jf)
            })
            .collect();
        let front = phase(-s * x0 * y0);
        let post: Vec<Complex64> = (0..m)
            .map(|k| {
                let kf = k as f64;
                front * phase(-s * y0 * dx * kf - 0.5 * w * kf * kf) * dy
            })
            .collect();
        // Chirp kernel at signed lags -(n-1)..=(m-1), stored circularly.
        let mut kernel = vec![Complex64::ZERO; len];
        for lag in -(n as isize - 1)..=(m as isize - 1) {
            let lf = lag as f64;
            kernel[lag.rem_euclid(len as isize) as usize] = phase(0.5 * w * lf * lf);
        }
        fft_in_place(&mut kernel);
        CrossCzt {
            n,
            m,
            len,
            pre,
            post,
            kernel_spectrum: kernel,
        }
    }

    pub fn apply(&self, f: &[Complex64]) -> Vec<Complex64> {
        debug_assert_eq!(f.len(), self.n);
        let mut a = vec![Complex64::ZERO; self.len];
        for j in 0..self.n {
            a[j] = f[j] * self.pre[j];
        }
        fft_in_place(&mut a);
        for (av, kv) in a.iter_mut().zip(self.kernel_spectrum.iter()) {
            *av *= kv;
        }
        ifft_in_place(&mut a);
        (0..self.m).map(|k| a[k] * self.post[k]).collect()
    }
}

/// One-shot scaled Fourier sum onto an arbitrary output grid.
pub fn scaled_fourier_cross(
    f: &[Complex64],
    in_grid: &Grid1D,
    out_grid: &Grid1D,
    s: f64,
) -> Vec<Complex64> {
    CrossCzt::new(in_grid, out_grid, s).apply(f)
}

/// Full-row scaled Fourier sum: `out_k = sum_j f_j exp(-i s x_k x_j) dx`
/// for every grid point `x_k`, `s` any nonzero real.
pub fn scaled_fourier_row(f: &[Complex64], grid: &Grid1D, s: f64) -> Vec<Complex64> {
    scaled_fourier_cross(f, grid, grid, s)
}

/// Single-point scaled Fourier sum: `sum_j f_j exp(-i s x_out x_j) dx`.
pub fn scaled_fourier_point(f: &[Complex64], grid: &Grid1D, s: f64, x_out: f64) -> Complex64 {
    let dx = grid.spacing();
    let step = phase(-s * x_out * dx);
    let mut rot = phase(-s * x_out * grid.point(0));
    let mut acc = Complex64::ZERO;
    for &fj in f {
        acc += fj * rot;
        rot *= step;
    }
    acc * dx
}

/// Unitary continuum Fourier transform evaluated back on the same grid:
/// `(1/sqrt(2 pi)) * integral psi(x) exp(-i p x) dx` at `p` = grid points.
pub fn unitary_fourier_row(psi: &[Complex64], grid: &Grid1D) -> Vec<Complex64> {
    let norm = 1.0 / (std::f64::consts::TAU).sqrt();
    let mut out = scaled_fourier_row(psi, grid, 1.0);
    for v in out.iter_mut() {
        *v *= norm;
    }
    out
}

/// One Strang step of the harmonic-oscillator flow exp(-i eps (p^2+q^2)/2),
/// valid for |eps| << 1 (splitting error is O(eps^3)).
pub fn oscillator_small_step(psi: &mut [Complex64], grid: &Grid1D, eps: f64) {
    let n = grid.count();
    debug_assert_eq!(psi.len(), n);
    for (j, v) in psi.iter_mut().enumerate() {
        let x = grid.point(j);
        *v *= phase(-0.25 * eps * x * x);
    }
    fft_in_place(psi);
    let dk = std::f64::consts::TAU / (n as f64 * grid.spacing());
    for (m, v) in psi.iter_mut().enumerate() {
        let k = if m <= n / 2 {
            m as f64 * dk
        } else {
            (m as f64 - n as f64) * dk
        };
        *v *= phase(-0.5 * eps * k * k);
    }
    ifft_in_place(psi);
    for (j, v) in psi.iter_mut().enumerate() {
        let x = grid.point(j);
        *v *= phase(-0.25 * eps * x * x);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn naive_row(f: &[Complex64], grid: &Grid1D, s: f64) -> Vec<Complex64> {
        let dx = grid.spacing();
        (0..grid.count())
            .map(|k| {
                let xk = grid.point(k);
                f.iter()
                    .enumerate()
                    .map(|(j, &fj)| fj * phase(-s * xk * grid.point(j)))
                    .sum::<Complex64>()
                    * dx
            })
            .collect()
    }

    #[test]
    fn bluestein_matches_naive_sum() {
        let grid = Grid1D::new(-3.0, 5.0, 48).unwrap();
        let f: Vec<Complex64> = grid
            .points()
            .iter()
            .enumerate()
            .map(|(j, &x)| Complex64::new((-0.3 * x * x).exp(), (0.1 * j as f64).sin()))
            .collect();
        for &s in &[1.0, -0.7, 1.4142135623730951] {
            let fast = scaled_fourier_row(&f, &grid, s);
            let slow = naive_row(&f, &grid, s);
            for (a, b) in fast.iter().zip(slow.iter()) {
                assert_abs_diff_eq!(a.re, b.re, epsilon = 1e-10);
                assert_abs_diff_eq!(a.im, b.im, epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn cross_grid_transform_matches_naive_sum() {
        let in_grid = Grid1D::new(-4.0, 4.0, 40).unwrap();
        let out_grid = Grid1D::new(-11.0, 7.0, 24).unwrap();
        let f: Vec<Complex64> = in_grid
            .points()
            .iter()
            .map(|&y| Complex64::new((-0.4 * y * y).exp(), 0.3 * y))
            .collect();
        let s = -0.83;
        let fast = scaled_fourier_cross(&f, &in_grid, &out_grid, s);
        for (k, got) in fast.iter().enumerate() {
            let x = out_grid.point(k);
            let want = f
                .iter()
                .enumerate()
                .map(|(j, &fj)| fj * phase(-s * x * in_grid.point(j)))
                .sum::<Complex64>()
                * in_grid.spacing();
            assert_abs_diff_eq!(got.re, want.re, epsilon = 1e-11);
            assert_abs_diff_eq!(got.im, want.im, epsilon = 1e-11);
        }
    }

    #[test]
    fn point_sum_matches_row() {
        let grid = Grid1D::new(-8.0, 8.0, 128).unwrap();
        let f: Vec<Complex64> = grid
            .points()
            .iter()
            .map(|&x| Complex64::new((-0.5 * x * x).exp(), 0.0))
            .collect();
        let row = scaled_fourier_row(&f, &grid, 1.0);
        for k in [0, 17, 100] {
            let p = scaled_fourier_point(&f, &grid, 1.0, grid.point(k));
            assert_abs_diff_eq!(p.re, row[k].re, epsilon = 1e-11);
            assert_abs_diff_eq!(p.im, row[k].im, epsilon = 1e-11);
        }
    }

    #[test]
    fn gaussian_is_fourier_self_conjugate() {
        let grid = Grid1D::new(-8.0, 8.0, 1024).unwrap();
        let psi: Vec<Complex64> = grid
            .points()
            .iter()
            .map(|&x| Complex64::new(std::f64::consts::PI.powf(-0.25) * (-0.5 * x * x).exp(), 0.0))
            .collect();
        let out = unitary_fourier_row(&psi, &grid);
        for (a, b) in out.iter().zip(psi.iter()) {
            assert_abs_diff_eq!(a.re, b.re, epsilon = 1e-10);
            assert_abs_diff_eq!(a.im, 0.0, epsilon = 1e-10);
        }
    }

    #[test]
    fn small_step_adds_oscillator_phase_to_vacuum() {
        let grid = Grid1D::new(-8.0, 8.0, 1024).unwrap();
        let mut psi: Vec<Complex64> = grid
            .points()
            .iter()
            .map(|&x| Complex64::new(std::f64::consts::PI.powf(-0.25) * (-0.5 * x * x).exp(), 0.0))
            .collect();
        let orig = psi.clone();
        let eps = 8e-4;
        oscillator_small_step(&mut psi, &grid, eps);
        // vacuum picks up exp(-i eps / 2)
        let expected = phase(-0.5 * eps);
        for (a, b) in psi.iter().zip(orig.iter()) {
            let want = b * expected;
            assert_abs_diff_eq!(a.re, want.re, epsilon = 1e-9);
            assert_abs_diff_eq!(a.im, want.im, epsilon = 1e-9);
        }
    }
}
