//! Tomographic symbols of operators and trace formulas.
//!
//! The symbol of a rank-one operator |psi1><psi2| factorizes into a product
//! of two fractional-Fourier amplitudes of the same chirp kernel, so the
//! trace formulas reduce to one-dimensional quadratures per direction. The
//! pair trace Tr(A B) is assembled direction by direction from the cosine
//! and sine correlations of the two symbols.

use num_complex::Complex64;

use crate::displacement::weyl_characteristic_pure;
use crate::error::{Error, Result};
use crate::grid::Grid1D;
use crate::states::{DensityMatrix, WaveFunction};
use crate::tomo::{AmplitudeEvaluator, SymplecticTomogram};

enum SymbolKind {
    /// |psi1><psi2|
    RankOne {
        ket: AmplitudeEvaluator,
        bra: AmplitudeEvaluator,
    },
    /// Hermitian state operator; its symbol is the (real) tomogram.
    State(SymplecticTomogram),
}

/// Evaluator of the tomographic symbol M_A(X, mu, nu) of an operator.
pub struct OperatorSymbol {
    kind: SymbolKind,
}

impl OperatorSymbol {
    /// Symbol of |psi1><psi2|.
    pub fn rank_one(psi1: &WaveFunction, psi2: &WaveFunction) -> Self {
        OperatorSymbol {
            kind: SymbolKind::RankOne {
                ket: AmplitudeEvaluator::new(psi1),
                bra: AmplitudeEvaluator::new(psi2),
            },
        }
    }

    /// Symbol of a density operator (equals its tomogram).
    pub fn from_density_matrix(rho: &DensityMatrix) -> Self {
        OperatorSymbol {
            kind: SymbolKind::State(SymplecticTomogram::from_density_matrix(rho)),
        }
    }

    pub fn from_tomogram(m: SymplecticTomogram) -> Self {
        OperatorSymbol {
            kind: SymbolKind::State(m),
        }
    }

    pub fn evaluate(&self, x: f64, mu: f64, nu: f64) -> Result<Complex64> {
        match &self.kind {
            SymbolKind::RankOne { ket, bra } => {
                let r = mu.hypot(nu);
                if r < crate::tomo::UNDEFINED_DIRECTION_EPS {
                    return Err(Error::UndefinedDirection { mu, nu });
                }
                let phi = nu.atan2(mu);
                let a = ket.amplitude(phi, x / r);
                let b = bra.amplitude(phi, x / r);
                Ok(a * b.conj() / r)
            }
            SymbolKind::State(m) => Ok(Complex64::new(m.evaluate(x, mu, nu)?, 0.0)),
        }
    }

    /// Complex symbol values along X for one direction, on the natural
    /// scaled grid.
    pub fn direction_row(&self, mu: f64, nu: f64) -> Result<(Grid1D, Vec<Complex64>)> {
        match &self.kind {
            SymbolKind::RankOne { ket, bra } => {
                let r = mu.hypot(nu);
                if r < crate::tomo::UNDEFINED_DIRECTION_EPS {
                    return Err(Error::UndefinedDirection { mu, nu });
                }
                let phi = nu.atan2(mu);
                let grid = ket.grid().scaled(r);
                let ka = ket.amplitude_row(phi);
                let ba = bra.amplitude_row(phi);
                let row = ka
                    .iter()
                    .zip(ba.iter())
                    .map(|(a, b)| a * b.conj() / r)
                    .collect();
                Ok((grid, row))
            }
            SymbolKind::State(m) => {
                let (grid, row) = m.direction_row(mu, nu)?;
                Ok((
                    grid,
                    row.into_iter().map(|v| Complex64::new(v, 0.0)).collect(),
                ))
            }
        }
    }

    /// `integral M_A(X, mu, nu) exp(i k X) dX` by row quadrature.
    pub fn xi_quadrature(&self, k: f64, mu: f64, nu: f64) -> Result<Complex64> {
        let (grid, row) = self.direction_row(mu, nu)?;
        Ok(row
            .iter()
            .enumerate()
            .map(|(i, v)| v * Complex64::new(0.0, k * grid.point(i)).exp())
            .sum::<Complex64>()
            * grid.spacing())
    }

    /// Same integral through the Weyl/Fock fastpath where the backend has
    /// one.
    pub fn xi_fast(&self, k: f64, mu: f64, nu: f64) -> Result<Complex64> {
        match &self.kind {
            SymbolKind::RankOne { ket, bra } => {
                let cb = bra.fock_coefficients();
                let ck = ket.fock_coefficients();
                Ok(weyl_characteristic_pure(&cb, &ck, k, mu, nu))
            }
            SymbolKind::State(m) => m.weyl_characteristic(k, mu, nu),
        }
    }
}

/// Result of the two trace formulas for one symbol.
#[derive(Debug, Clone, Copy)]
pub struct SymbolTrace {
    /// X-quadrature of the symbol at the reference direction (1, 0).
    pub reference_direction: Complex64,
    /// Delta-collapsed form: the limit of the k = 1 characteristic value as
    /// the direction shrinks to zero, Richardson-extrapolated.
    pub delta_collapsed: Complex64,
    pub agreement: f64,
}

/// Trace of the operator behind a symbol, computed by both formulas.
/// Errors when they disagree beyond 1e-3 (a broken symbol).
pub fn symbol_trace(sym: &OperatorSymbol) -> Result<SymbolTrace> {
    let (grid, row) = sym.direction_row(1.0, 0.0)?;
    let reference: Complex64 = row.iter().sum::<Complex64>() * grid.spacing();
    // g(eps) = trace + a eps + b eps^2 + O(eps^3); three evaluations along
    // the shrinking direction eliminate both low-order terms.
    let eps = 0.08;
    let g1 = sym.xi_fast(1.0, eps, 0.0)?;
    let g2 = sym.xi_fast(1.0, 0.5 * eps, 0.0)?;
    let g4 = sym.xi_fast(1.0, 0.25 * eps, 0.0)?;
    let delta = (8.0 * g4 - 6.0 * g2 + g1) / 3.0;
    let agreement = (delta - reference).norm();
    if agreement > 1e-3 {
        return Err(Error::NumericalFailure(format!(
            "trace formulas disagree by {agreement:.3e}"
        )));
    }
    Ok(SymbolTrace {
        reference_direction: reference,
        delta_collapsed: delta,
        agreement,
    })
}

fn pair_trace_grid() -> Grid1D {
    Grid1D::new(-8.0, 8.0, 48).expect("static grid")
}

/// `Tr(A B)` from two symbols: for each direction on a (mu, nu) quadrature
/// grid the cosine and sine correlations of the two rows collapse to
/// `xi_A(1) * xi_B(-1)`; the imaginary part of the result is the sine
/// integral, which vanishes for pairs of state tomograms.
pub fn symbol_pair_trace(a: &OperatorSymbol, b: &OperatorSymbol) -> Result<Complex64> {
    let grid = pair_trace_grid();
    let mut acc = Complex64::ZERO;
    for i in 0..grid.count() {
        let mu = grid.point(i);
        for j in 0..grid.count() {
            let nu = grid.point(j);
            let xa = match &a.kind {
                SymbolKind::RankOne { .. } => a.xi_quadrature(1.0, mu, nu)?,
                SymbolKind::State(_) => a.xi_fast(1.0, mu, nu)?,
            };
            let xb = match &b.kind {
                SymbolKind::RankOne { .. } => b.xi_quadrature(-1.0, mu, nu)?,
                SymbolKind::State(_) => b.xi_fast(-1.0, mu, nu)?,
            };
            acc += xa * xb;
        }
    }
    Ok(acc * grid.spacing() * grid.spacing() / std::f64::consts::TAU)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{coherent_state, fock_state, thermal_state};
    use approx::assert_abs_diff_eq;

    #[test]
    fn vacuum_projector_symbol_is_the_vacuum_tomogram() {
        let vac = fock_state(0).unwrap();
        let sym = OperatorSymbol::rank_one(&vac, &vac);
        for &(x, mu, nu) in &[(0.0, 1.0, 0.0), (0.7, 0.6, -0.8), (1.3, 1.5, 0.5)] {
            let r2: f64 = mu * mu + nu * nu;
            let expect = (-x * x / r2).exp() / (std::f64::consts::PI * r2).sqrt();
            let got = sym.evaluate(x, mu, nu).unwrap();
            assert_abs_diff_eq!(got.re, expect, epsilon = 1e-5);
            assert_abs_diff_eq!(got.im, 0.0, epsilon = 1e-8);
        }
    }

    #[test]
    fn rank_one_row_integral_is_the_overlap() {
        // integral M_12 dX = <psi2|psi1>
        let f0 = fock_state(0).unwrap();
        let f1 = fock_state(1).unwrap();
        let sym = OperatorSymbol::rank_one(&f0, &f1);
        let (grid, row) = sym.direction_row(0.8, 0.6).unwrap();
        let integral: Complex64 = row.iter().sum::<Complex64>() * grid.spacing();
        assert_abs_diff_eq!(integral.norm(), 0.0, epsilon = 1e-5);

        // <0|alpha> = exp(-|alpha|^2/2) at alpha = 1
        let alpha = coherent_state(num_complex::Complex64::new(1.0, 0.0)).unwrap();
        let sym = OperatorSymbol::rank_one(&alpha, &f0);
        let (grid, row) = sym.direction_row(1.0, -0.3).unwrap();
        let integral: Complex64 = row.iter().sum::<Complex64>() * grid.spacing();
        assert_abs_diff_eq!(integral.re, (-0.5f64).exp(), epsilon = 1e-4);
        assert_abs_diff_eq!(integral.im, 0.0, epsilon = 1e-4);
    }

    #[test]
    fn trace_formulas_agree() {
        let vac = fock_state(0).unwrap();
        let sym = OperatorSymbol::rank_one(&vac, &vac);
        let tr = symbol_trace(&sym).unwrap();
        assert_abs_diff_eq!(tr.reference_direction.re, 1.0, epsilon = 1e-5);
        assert_abs_diff_eq!(tr.delta_collapsed.re, 1.0, epsilon = 1e-5);

        let f1 = fock_state(1).unwrap();
        let off = OperatorSymbol::rank_one(&vac, &f1);
        let tr = symbol_trace(&off).unwrap();
        assert_abs_diff_eq!(tr.reference_direction.norm(), 0.0, epsilon = 1e-5);

        let rho = thermal_state(0.5, 32).unwrap();
        let sym = OperatorSymbol::from_density_matrix(&rho);
        let tr = symbol_trace(&sym).unwrap();
        assert_abs_diff_eq!(tr.reference_direction.re, 1.0, epsilon = 1e-5);
        assert_abs_diff_eq!(tr.delta_collapsed.re, 1.0, epsilon = 1e-5);
    }

    #[test]
    fn pair_traces_of_standard_states() {
        let vac = fock_state(0).unwrap();
        let f1 = fock_state(1).unwrap();
        let sym_vac = OperatorSymbol::rank_one(&vac, &vac);
        let sym_f1 = OperatorSymbol::rank_one(&f1, &f1);

        let purity = symbol_pair_trace(&sym_vac, &sym_vac).unwrap();
        assert_abs_diff_eq!(purity.re, 1.0, epsilon = 1e-3);
        assert_abs_diff_eq!(purity.im, 0.0, epsilon = 1e-3);

        let cross = symbol_pair_trace(&sym_vac, &sym_f1).unwrap();
        assert_abs_diff_eq!(cross.re, 0.0, epsilon = 1e-3);
        assert_abs_diff_eq!(cross.im, 0.0, epsilon = 1e-3);
    }

    #[test]
    fn thermal_pair_trace_is_the_purity() {
        let rho = thermal_state(0.5, 32).unwrap();
        let sym = OperatorSymbol::from_density_matrix(&rho);
        let tr = symbol_pair_trace(&sym, &sym).unwrap();
        // purity of a thermal state: 1/(1 + 2 nbar)
        assert_abs_diff_eq!(tr.re, 0.5, epsilon = 1e-3);
        assert_abs_diff_eq!(tr.im, 0.0, epsilon = 1e-3);
    }
}
