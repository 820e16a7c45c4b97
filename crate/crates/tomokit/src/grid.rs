//! Uniform midpoint-sampled grids used for every quadrature in the crate.

use crate::error::{Error, Result};

/// Uniform 1-D grid over `[lower, upper)` with samples at cell midpoints:
/// `x_i = lower + (i + 1/2) * spacing`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid1D {
    lower: f64,
    upper: f64,
    count: usize,
}

pub const MIN_GRID_COUNT: usize = 8;

impl Grid1D {
    pub fn new(lower: f64, upper: f64, count: usize) -> Result<Self> {
        if !lower.is_finite() || !upper.is_finite() || lower >= upper {
            return Err(Error::InvalidBounds { lower, upper });
        }
        if count < MIN_GRID_COUNT {
            return Err(Error::InvalidCount {
                count,
                min: MIN_GRID_COUNT,
            });
        }
        Ok(Grid1D {
            lower,
            upper,
            count,
        })
    }

    /// Default quadrature grid X in [-8, 8] with 1024 points. Holds Fock
    /// states up to n = 10 and coherent states up to |alpha| = 2 with tail
    /// mass below 1e-12.
    pub fn default_position() -> Self {
        Grid1D {
            lower: -8.0,
            upper: 8.0,
            count: 1024,
        }
    }

    /// Default local-oscillator phase grid, theta in [0, 2*pi) with 256 points.
    pub fn default_angles() -> Self {
        Grid1D {
            lower: 0.0,
            upper: std::f64::consts::TAU,
            count: 256,
        }
    }

    pub fn lower(&self) -> f64 {
        self.lower
    }

    pub fn upper(&self) -> f64 {
        self.upper
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn spacing(&self) -> f64 {
        (self.upper - self.lower) / self.count as f64
    }

    pub fn point(&self, i: usize) -> f64 {
        self.lower + (i as f64 + 0.5) * self.spacing()
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.count).map(|i| self.point(i)).collect()
    }

    pub fn contains(&self, x: f64) -> bool {
        x >= self.lower && x <= self.upper
    }

    /// Grid covering `s * [lower, upper]`, same count. For negative `s` the
    /// interval is flipped so bounds stay ordered.
    pub fn scaled(&self, s: f64) -> Self {
        let (a, b) = (self.lower * s, self.upper * s);
        Grid1D {
            lower: a.min(b),
            upper: a.max(b),
            count: self.count,
        }
    }

    /// Fractional index of `x` relative to the midpoint samples; used by
    /// interpolation routines.
    pub fn frac_index(&self, x: f64) -> f64 {
        (x - self.lower) / self.spacing() - 0.5
    }
}

/// Midpoint-rule integral of sampled values.
pub fn integrate(values: &[f64], spacing: f64) -> f64 {
    values.iter().sum::<f64>() * spacing
}

/// Catmull-Rom cubic interpolation of uniformly sampled data; clamps to the
/// sampled range and returns 0 outside it (tails are assumed negligible).
pub fn interp_cubic(values: &[f64], grid: &Grid1D, x: f64) -> f64 {
    let n = values.len();
    debug_assert_eq!(n, grid.count());
    let t = grid.frac_index(x);
    if t < -0.5 || t > n as f64 - 0.5 {
        return 0.0;
    }
    let i1 = (t.floor() as isize).clamp(0, n as isize - 1) as usize;
    let f = t - i1 as f64;
    let at = |i: isize| -> f64 {
        if i < 0 || i >= n as isize {
            0.0
        } else {
            values[i as usize]
        }
    };
    let (p0, p1, p2, p3) = (
        at(i1 as isize - 1),
        at(i1 as isize),
        at(i1 as isize + 1),
        at(i1 as isize + 2),
    );
    p1 + 0.5
        * f
        * (p2 - p0 + f * (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3 + f * (3.0 * (p1 - p2) + p3 - p0)))
}

/// Linear interpolation with zero extension outside the sampled range.
pub fn interp_linear(values: &[f64], grid: &Grid1D, x: f64) -> f64 {
    let n = values.len();
    let t = grid.frac_index(x);
    if t < -1.0 || t > n as f64 {
        return 0.0;
    }
    let i0 = t.floor() as isize;
    let f = t - i0 as f64;
    let at = |i: isize| -> f64 {
        if i < 0 || i >= n as isize {
            0.0
        } else {
            values[i as usize]
        }
    };
    at(i0) * (1.0 - f) + at(i0 + 1) * f
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn default_grid_spacing() {
        let g = Grid1D::new(-8.0, 8.0, 1024).unwrap();
        assert_abs_diff_eq!(g.spacing(), 0.015625);
        let a = Grid1D::new(0.0, std::f64::consts::TAU, 256).unwrap();
        assert_abs_diff_eq!(a.spacing(), std::f64::consts::PI / 128.0, epsilon = 1e-15);
    }

    #[test]
    fn degenerate_bounds_rejected() {
        assert!(matches!(
            Grid1D::new(1.0, 1.0, 16),
            Err(Error::InvalidBounds { .. })
        ));
        assert!(matches!(
            Grid1D::new(0.0, 1.0, 4),
            Err(Error::InvalidCount { .. })
        ));
    }

    #[test]
    fn midpoints_are_symmetric() {
        let g = Grid1D::new(-8.0, 8.0, 64).unwrap();
        for i in 0..64 {
            assert_abs_diff_eq!(g.point(i), -g.point(63 - i), epsilon = 1e-14);
        }
    }

    #[test]
    fn cubic_interp_reproduces_smooth_function() {
        let g = Grid1D::new(-4.0, 4.0, 256).unwrap();
        let vals: Vec<f64> = g.points().iter().map(|&x| (-x * x).exp()).collect();
        for &x in &[-1.3, 0.017, 2.4] {
            assert_abs_diff_eq!(interp_cubic(&vals, &g, x), (-x * x).exp(), epsilon = 1e-6);
        }
        assert_eq!(interp_cubic(&vals, &g, 9.0), 0.0);
    }
}
