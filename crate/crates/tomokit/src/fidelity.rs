//! State overlap directly from two optical tomograms.
//!
//! The pipeline materializes the phase-averaged joint quadrature
//! distribution P12(x, y), takes the rotated-difference marginal P(b) with
//! b = (x - y)/sqrt(2), and integrates the marginal's characteristic
//! function: F = (1/2) integral_0^infinity lambda xi(lambda) dlambda. The
//! imaginary part of that integral must vanish for genuine tomogram pairs
//! and is reported as a consistency residual.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::{interp_cubic, Grid1D};
use crate::tomo::OpticalTomogram;

/// Phase-averaged joint probability density of two quadratures.
#[derive(Debug, Clone)]
pub struct JointDistribution {
    xgrid: Grid1D,
    ygrid: Grid1D,
    /// Row-major values[ix * ny + iy].
    values: Vec<f64>,
}

impl JointDistribution {
    pub fn xgrid(&self) -> &Grid1D {
        &self.xgrid
    }

    pub fn ygrid(&self) -> &Grid1D {
        &self.ygrid
    }

    pub fn value(&self, ix: usize, iy: usize) -> f64 {
        self.values[ix * self.ygrid.count() + iy]
    }

    pub fn total_mass(&self) -> f64 {
        self.values.iter().sum::<f64>() * self.xgrid.spacing() * self.ygrid.spacing()
    }

    /// Bicubic interpolation, zero outside the grids.
    pub fn interp(&self, x: f64, y: f64) -> f64 {
        let nx = self.xgrid.count();
        let ny = self.ygrid.count();
        let t = self.xgrid.frac_index(x);
        if t < -0.5 || t > nx as f64 - 0.5 {
            return 0.0;
        }
        let ix = (t.floor() as isize).clamp(0, nx as isize - 1);
        let f = t - ix as f64;
        let mut rows = [0.0; 4];
        for (slot, off) in (-1..3).enumerate() {
            let i = ix + off;
            rows[slot] = if i < 0 || i >= nx as isize {
                0.0
            } else {
                let base = i as usize * ny;
                interp_cubic(&self.values[base..base + ny], &self.ygrid, y)
            };
        }
        let (p0, p1, p2, p3) = (rows[0], rows[1], rows[2], rows[3]);
        p1 + 0.5
            * f
            * (p2 - p0
                + f * (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3 + f * (3.0 * (p1 - p2) + p3 - p0)))
    }
}

fn check_theta_coverage(w: &OpticalTomogram) -> Result<()> {
    let g = w.thetagrid();
    if g.lower().abs() > 1e-9 || (g.upper() - std::f64::consts::TAU).abs() > 1e-9 {
        return Err(Error::GridMismatch(
            "theta grid must cover [0, 2 pi)".into(),
        ));
    }
    Ok(())
}

/// P12(x, y) = (1/2 pi) integral w1(x, theta) w2(y, theta) dtheta.
pub fn joint_distribution(w1: &OpticalTomogram, w2: &OpticalTomogram) -> Result<JointDistribution> {
    check_theta_coverage(w1)?;
    check_theta_coverage(w2)?;
    if w1.thetagrid() != w2.thetagrid() {
        return Err(Error::GridMismatch(
            "optical tomograms have different theta grids".into(),
        ));
    }
    let xgrid = *w1.xgrid();
    let ygrid = *w2.xgrid();
    let nx = xgrid.count();
    let ny = ygrid.count();
    let weight = w1.thetagrid().spacing() / std::f64::consts::TAU;
    let mut values = vec![0.0; nx * ny];
    for it in 0..w1.thetagrid().count() {
        let row1 = w1.row(it);
        let row2 = w2.row(it);
        for (ix, &a) in row1.iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            let base = ix * ny;
            let aw = a * weight;
            for (iy, &b) in row2.iter().enumerate() {
                values[base + iy] += aw * b;
            }
        }
    }
    Ok(JointDistribution {
        xgrid,
        ygrid,
        values,
    })
}

/// Marginal of the rotated difference quadrature b = (x - y)/sqrt(2),
/// with its characteristic function.
#[derive(Debug, Clone)]
pub struct RotatedMarginal {
    bgrid: Grid1D,
    values: Vec<f64>,
}

impl RotatedMarginal {
    pub fn bgrid(&self) -> &Grid1D {
        &self.bgrid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn total_mass(&self) -> f64 {
        self.values.iter().sum::<f64>() * self.bgrid.spacing()
    }

    /// xi(lambda) = integral exp(i lambda b) P(b) db.
    pub fn characteristic(&self, lambda: f64) -> Complex64 {
        self.values
            .iter()
            .enumerate()
            .map(|(i, &v)| v * Complex64::new(0.0, lambda * self.bgrid.point(i)).exp())
            .sum::<Complex64>()
            * self.bgrid.spacing()
    }
}

/// P(b) = integral P12((a + b)/sqrt 2, (a - b)/sqrt 2) da.
pub fn rotated_marginal(p12: &JointDistribution) -> RotatedMarginal {
    let reach = p12
        .xgrid
        .upper()
        .abs()
        .max(p12.xgrid.lower().abs())
        .max(p12.ygrid.upper().abs())
        .max(p12.ygrid.lower().abs());
    let span = reach * std::f64::consts::SQRT_2;
    let n = p12.xgrid.count().max(p12.ygrid.count());
    let agrid = Grid1D::new(-span, span, n).expect("marginal grid");
    let bgrid = Grid1D::new(-span, span, n).expect("marginal grid");
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let values = (0..n)
        .map(|ib| {
            let b = bgrid.point(ib);
            let mut acc = 0.0;
            for ia in 0..n {
                let a = agrid.point(ia);
                acc += p12.interp((a + b) * s, (a - b) * s);
            }
            (acc * agrid.spacing()).max(0.0)
        })
        .collect();
    RotatedMarginal { bgrid, values }
}

#[derive(Debug, Clone, Copy)]
pub struct FidelityResult {
    /// Tr(rho1 rho2) extracted from the lambda integral.
    pub fidelity: f64,
    /// Modulus of the imaginary part of the lambda integral; vanishes for
    /// consistent tomogram pairs.
    pub im_residual: f64,
    /// Whether 0 <= F <= 1 within 1e-3.
    pub bounds_ok: bool,
}

pub const DEFAULT_LAMBDA_MAX: f64 = 40.0;

/// Fidelity between the states behind two optical tomograms:
/// F = (1/2) integral_0^lambda_max lambda xi(lambda) dlambda.
pub fn fidelity_from_tomograms(
    w1: &OpticalTomogram,
    w2: &OpticalTomogram,
    lambda_max: f64,
) -> Result<FidelityResult> {
    let p12 = joint_distribution(w1, w2)?;
    let marginal = rotated_marginal(&p12);
    let edge = marginal.characteristic(lambda_max).norm() * lambda_max;
    if edge > 1e-8 {
        return Err(Error::NonDecaying(format!(
            "|lambda xi(lambda)| = {edge:.3e} at lambda_max = {lambda_max}"
        )));
    }
    let lgrid = Grid1D::new(0.0, lambda_max, 320)?;
    let mut acc = Complex64::ZERO;
    for i in 0..lgrid.count() {
        let l = lgrid.point(i);
        acc += l * marginal.characteristic(l);
    }
    acc *= 0.5 * lgrid.spacing();
    let fidelity = acc.re;
    let im_residual = acc.im.abs();
    let bounds_ok = (-1e-3..=1.0 + 1e-3).contains(&fidelity);
    if !bounds_ok {
        return Err(Error::NumericalFailure(format!(
            "fidelity {fidelity} outside [0, 1]; corrupt input tomograms"
        )));
    }
    Ok(FidelityResult {
        fidelity,
        im_residual,
        bounds_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{coherent_state, fock_state};
    use crate::tomo::SymplecticTomogram;
    use approx::assert_abs_diff_eq;

    fn optical_of(psi: &crate::states::WaveFunction) -> OpticalTomogram {
        SymplecticTomogram::from_wavefunction(psi)
            .optical(Grid1D::default_angles())
            .unwrap()
    }

    #[test]
    fn vacuum_pair_joint_is_a_product_gaussian() {
        let w = optical_of(&fock_state(0).unwrap());
        let p12 = joint_distribution(&w, &w).unwrap();
        assert_abs_diff_eq!(p12.total_mass(), 1.0, epsilon = 1e-4);
        for ix in (0..1024).step_by(211) {
            for iy in (0..1024).step_by(223) {
                let x = p12.xgrid().point(ix);
                let y = p12.ygrid().point(iy);
                let expect = (-x * x - y * y).exp() / std::f64::consts::PI;
                assert_abs_diff_eq!(p12.value(ix, iy), expect, epsilon = 1e-5);
            }
        }
    }

    #[test]
    fn joint_normalization_and_swap_symmetry() {
        let w1 = optical_of(&fock_state(1).unwrap());
        let w2 = optical_of(&coherent_state(num_complex::Complex64::new(1.0, 0.0)).unwrap());
        let p = joint_distribution(&w1, &w2).unwrap();
        assert_abs_diff_eq!(p.total_mass(), 1.0, epsilon = 1e-4);
        let q = joint_distribution(&w2, &w1).unwrap();
        for ix in (0..1024).step_by(173) {
            for iy in (0..1024).step_by(181) {
                assert_eq!(p.value(ix, iy), q.value(iy, ix));
            }
        }
    }

    #[test]
    fn rotated_marginal_of_vacuum_pair() {
        let w = optical_of(&fock_state(0).unwrap());
        let p12 = joint_distribution(&w, &w).unwrap();
        let m = rotated_marginal(&p12);
        assert_abs_diff_eq!(m.total_mass(), 1.0, epsilon = 1e-4);
        // b is a difference of two independent variance-1/2 gaussians,
        // rescaled by 1/sqrt 2: variance 1/2
        let mean: f64 = m
            .values()
            .iter()
            .enumerate()
            .map(|(i, &v)| m.bgrid().point(i) * v)
            .sum::<f64>()
            * m.bgrid().spacing();
        let var: f64 = m
            .values()
            .iter()
            .enumerate()
            .map(|(i, &v)| m.bgrid().point(i).powi(2) * v)
            .sum::<f64>()
            * m.bgrid().spacing()
            - mean * mean;
        assert_abs_diff_eq!(var, 0.5, epsilon = 1e-4);
        // characteristic function sanity
        assert_abs_diff_eq!(m.characteristic(0.0).re, 1.0, epsilon = 1e-5);
        let a = m.characteristic(1.7);
        let b = m.characteristic(-1.7);
        assert_abs_diff_eq!(a.re, b.re, epsilon = 1e-10);
        assert_abs_diff_eq!(a.im, -b.im, epsilon = 1e-10);
    }

    #[test]
    fn fidelities_of_standard_pairs() {
        let vac = optical_of(&fock_state(0).unwrap());
        let coh = optical_of(&coherent_state(num_complex::Complex64::new(1.0, 0.0)).unwrap());

        let same = fidelity_from_tomograms(&vac, &vac, DEFAULT_LAMBDA_MAX).unwrap();
        assert_abs_diff_eq!(same.fidelity, 1.0, epsilon = 1e-3);
        assert!(same.im_residual <= 1e-3);
        assert!(same.bounds_ok);

        let cross = fidelity_from_tomograms(&vac, &coh, DEFAULT_LAMBDA_MAX).unwrap();
        assert_abs_diff_eq!(cross.fidelity, (-1.0f64).exp(), epsilon = 1e-3);
        assert!(cross.im_residual <= 1e-3);

        // symmetric in its arguments
        let back = fidelity_from_tomograms(&coh, &vac, DEFAULT_LAMBDA_MAX).unwrap();
        assert_abs_diff_eq!(back.fidelity, cross.fidelity, epsilon = 1e-4);
    }

    #[test]
    fn fidelity_route_agrees_with_symbol_trace() {
        use crate::symbol::{symbol_pair_trace, OperatorSymbol};
        let vac_psi = fock_state(0).unwrap();
        let coh_psi = coherent_state(num_complex::Complex64::new(1.0, 0.0)).unwrap();
        let pipeline = fidelity_from_tomograms(
            &optical_of(&vac_psi),
            &optical_of(&coh_psi),
            DEFAULT_LAMBDA_MAX,
        )
        .unwrap();
        let sym_a = OperatorSymbol::rank_one(&vac_psi, &vac_psi);
        let sym_b = OperatorSymbol::rank_one(&coh_psi, &coh_psi);
        let trace = symbol_pair_trace(&sym_a, &sym_b).unwrap();
        assert_abs_diff_eq!(pipeline.fidelity, trace.re, epsilon = 2e-3);
    }

    #[test]
    fn mismatched_theta_grids_are_rejected() {
        let vac = fock_state(0).unwrap();
        let m = SymplecticTomogram::from_wavefunction(&vac);
        let w1 = m.optical(Grid1D::default_angles()).unwrap();
        let w2 = m
            .optical(Grid1D::new(0.0, std::f64::consts::TAU, 128).unwrap())
            .unwrap();
        assert!(matches!(
            joint_distribution(&w1, &w2),
            Err(Error::GridMismatch(_))
        ));
    }
}
