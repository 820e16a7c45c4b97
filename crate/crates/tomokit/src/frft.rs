//! Fractional Fourier transform of grid wavefunctions.
//!
//! The transform is the harmonic-oscillator flow at angle theta, evaluated
//! through the chirp factorization of its integral kernel: chirp-multiply,
//! scaled Fourier sum, chirp-multiply. A single chirp step is only
//! well-conditioned when |sin theta| is order one, so every angle is reduced
//! to `theta = theta' + j * pi/2` with `theta'` in `[pi/4, 3pi/4)`; the
//! quarter turns are exact grid operations (plain Fourier transform and
//! parity). Angles within 1e-3 of a multiple of pi skip the chirp entirely:
//! the exact identity/parity limit composed with one small split-step
//! absorbs the residual rotation.
//!
//! Phase convention: the vacuum acquires exp(-i theta / 2), so the flow is
//! exactly additive (4 pi periodic).

use num_complex::Complex64;

use crate::fourier::{
    oscillator_small_step, scaled_fourier_point, scaled_fourier_row, unitary_fourier_row,
};
use crate::grid::Grid1D;
use crate::states::WaveFunction;

const DEGENERATE_SIN: f64 = 1e-3;

fn phase(theta: f64) -> Complex64 {
    Complex64::new(theta.cos(), theta.sin())
}

/// Kernel prefactor `(2 pi i sin t)^(-1/2)` on the branch that makes the
/// flow additive: `exp(-i t / 2) sqrt((1 - i cot t) / (2 pi))`.
fn kernel_prefactor(t: f64) -> Complex64 {
    let cot = t.cos() / t.sin();
    phase(-0.5 * t) * (Complex64::new(1.0, -cot) / std::f64::consts::TAU).sqrt()
}

/// Decomposition of an arbitrary angle into quarter turns plus a chirp step.
#[derive(Debug, Clone, Copy)]
pub(crate) struct AngleSplit {
    /// Number of plain Fourier quarter turns to apply first (0..=3).
    pub fourier_turns: usize,
    /// Residual chirp-step angle in [pi/4, 3pi/4), or None when the total
    /// angle sits within the degenerate window around a multiple of pi.
    pub step: Option<f64>,
    /// Small residual for the degenerate path, paired with the number of
    /// exact parity applications.
    pub parity_then_eps: Option<(usize, f64)>,
    /// Global phase carried by the exact quarter-turn factors.
    pub phase: Complex64,
}

pub(crate) fn split_angle(theta: f64) -> AngleSplit {
    let t = theta.rem_euclid(2.0 * std::f64::consts::TAU); // mod 4 pi
    let sin_t = t.sin();
    if sin_t.abs() < DEGENERATE_SIN {
        let m = (t / std::f64::consts::PI).round();
        let eps = t - m * std::f64::consts::PI;
        let m = m as usize; // 0..=4
        return AngleSplit {
            fourier_turns: 0,
            step: None,
            parity_then_eps: Some((m % 2, eps)),
            phase: phase(-0.5 * std::f64::consts::PI * m as f64),
        };
    }
    let j = ((t - std::f64::consts::FRAC_PI_4) / std::f64::consts::FRAC_PI_2).floor();
    let step = t - j * std::f64::consts::FRAC_PI_2;
    let turns = (j as i64).rem_euclid(4) as usize;
    AngleSplit {
        fourier_turns: turns,
        step: Some(step),
        parity_then_eps: None,
        phase: phase(-std::f64::consts::FRAC_PI_4 * j),
    }
}

fn reverse_in_place(samples: &mut [Complex64]) {
    samples.reverse();
}

/// Apply `F^turns` on the grid, where F is the unitary Fourier transform:
/// F^2 is parity, so at most one scaled Fourier pass is needed.
fn apply_fourier_turns(samples: &mut Vec<Complex64>, grid: &Grid1D, turns: usize) {
    match turns % 4 {
        0 => {}
        1 => *samples = unitary_fourier_row(samples, grid),
        2 => reverse_in_place(samples),
        3 => {
            *samples = unitary_fourier_row(samples, grid);
            reverse_in_place(samples);
        }
        _ => unreachable!(),
    }
}

fn chirp_step_row(samples: &[Complex64], grid: &Grid1D, t: f64) -> Vec<Complex64> {
    let s = t.sin();
    let cot = t.cos() / s;
    let pre = kernel_prefactor(t);
    let chirped: Vec<Complex64> = samples
        .iter()
        .enumerate()
        .map(|(j, &v)| {
            let y = grid.point(j);
            v * phase(0.5 * cot * y * y)
        })
        .collect();
    let mut out = scaled_fourier_row(&chirped, grid, 1.0 / s);
    for (k, v) in out.iter_mut().enumerate() {
        let x = grid.point(k);
        *v *= pre * phase(0.5 * cot * x * x);
    }
    out
}

pub(crate) fn chirp_step_point(samples: &[Complex64], grid: &Grid1D, t: f64, x: f64) -> Complex64 {
    let s = t.sin();
    let cot = t.cos() / s;
    let chirped: Vec<Complex64> = samples
        .iter()
        .enumerate()
        .map(|(j, &v)| {
            let y = grid.point(j);
            v * phase(0.5 * cot * y * y)
        })
        .collect();
    scaled_fourier_point(&chirped, grid, 1.0 / s, x)
        * kernel_prefactor(t)
        * phase(0.5 * cot * x * x)
}

/// Fractional Fourier transform of `psi` at angle `theta` (radians).
pub fn fractional_fourier(psi: &WaveFunction, theta: f64) -> WaveFunction {
    let grid = *psi.grid();
    let split = split_angle(theta);
    let mut samples: Vec<Complex64> = psi.samples().to_vec();
    if let Some((parities, eps)) = split.parity_then_eps {
        if parities == 1 {
            reverse_in_place(&mut samples);
        }
        if eps != 0.0 {
            oscillator_small_step(&mut samples, &grid, eps);
        }
        for v in samples.iter_mut() {
            *v *= split.phase;
        }
        return WaveFunction::new_unchecked(grid, samples);
    }
    apply_fourier_turns(&mut samples, &grid, split.fourier_turns);
    let mut out = chirp_step_row(&samples, &grid, split.step.expect("non-degenerate"));
    for v in out.iter_mut() {
        *v *= split.phase;
    }
    WaveFunction::new_unchecked(grid, out)
}

/// Momentum-representation wavefunction
/// `(1/sqrt(2 pi)) integral psi(x) exp(-i p x) dx`, sampled on the same
/// numeric grid reinterpreted as momentum.
pub fn fourier_momentum(psi: &WaveFunction) -> WaveFunction {
    let out = unitary_fourier_row(psi.samples(), psi.grid());
    WaveFunction::new_unchecked(*psi.grid(), out)
}
