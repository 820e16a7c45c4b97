//! Differential Shannon and Renyi entropies, tomographic entropies,
//! dispersion matrices, and the continuous-variable entropic uncertainty
//! checks.
//!
//! Conventions: natural logarithm everywhere; 0 ln 0 = 0 with integrands
//! clipped below 1e-300. The quantum bound for a conjugate pair of
//! quadrature entropies is ln(pi e); classical densities are free to
//! violate it.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fourier::{scaled_fourier_row, unitary_fourier_row};
use crate::frft::fourier_momentum;
use crate::linalg::{min_eigenvalue, CMatrix};
use crate::states::{DensityMatrix, PhaseSpaceDensity, WaveFunction};
use crate::tomo::SymplecticTomogram;

pub const LN_PI_E: f64 = 2.144_729_885_849_400_2; // ln(pi) + 1

const DENSITY_FLOOR: f64 = 1e-300;

/// Shannon entropy -integral p ln p of a sampled density.
pub fn differential_entropy(density: &[f64], spacing: f64) -> Result<f64> {
    let mass: f64 = density.iter().sum::<f64>() * spacing;
    if (mass - 1.0).abs() > 1e-4 {
        return Err(Error::OutOfRange(format!(
            "density integrates to {mass}, not 1"
        )));
    }
    Ok(-density
        .iter()
        .filter(|&&p| p > DENSITY_FLOOR)
        .map(|&p| p * p.ln())
        .sum::<f64>()
        * spacing)
}

/// Renyi entropy (1/(1-q)) ln integral p^q.
pub fn renyi_differential_entropy(density: &[f64], spacing: f64, q: f64) -> Result<f64> {
    if q <= 0.0 {
        return Err(Error::OutOfRange(format!("Renyi order {q} must be > 0")));
    }
    if (q - 1.0).abs() < 1e-12 {
        return Err(Error::OutOfRange(
            "Renyi order q = 1 is the Shannon limit".into(),
        ));
    }
    let integral: f64 = density
        .iter()
        .filter(|&&p| p > DENSITY_FLOOR)
        .map(|&p| p.powf(q))
        .sum::<f64>()
        * spacing;
    Ok(integral.ln() / (1.0 - q))
}

/// Position and momentum entropies of a pure state.
pub fn position_momentum_entropies(psi: &WaveFunction) -> Result<(f64, f64)> {
    let sx = differential_entropy(&psi.density(), psi.grid().spacing())?;
    let tilde = fourier_momentum(psi);
    let sp = differential_entropy(&tilde.density(), tilde.grid().spacing())?;
    Ok((sx, sp))
}

/// Symplectic tomographic entropy S(mu, nu) = -integral M ln M dX; the
/// optical entropy S(theta) is the unit-circle special case.
pub fn tomographic_entropy(m: &SymplecticTomogram, mu: f64, nu: f64) -> Result<f64> {
    let (grid, row) = m.direction_row(mu, nu)?;
    differential_entropy(&row, grid.spacing())
}

pub fn optical_entropy(m: &SymplecticTomogram, theta: f64) -> Result<f64> {
    tomographic_entropy(m, theta.cos(), theta.sin())
}

/// One angle of the Shannon entropic uncertainty check
/// S(theta) + S(theta + pi/2) >= ln(pi e).
#[derive(Debug, Clone, Copy)]
pub struct UrEntry {
    pub theta: f64,
    pub entropy: f64,
    pub entropy_conjugate: f64,
    pub residual: f64,
}

/// Evaluates the pairwise entropy sum against the quantum bound at each
/// angle. Violations are reported, not raised: classical inputs have no
/// bound to respect.
pub fn entropic_ur_check(m: &SymplecticTomogram, thetas: &[f64]) -> Result<Vec<UrEntry>> {
    thetas
        .iter()
        .map(|&theta| {
            let s = optical_entropy(m, theta)?;
            let sc = optical_entropy(m, theta + std::f64::consts::FRAC_PI_2)?;
            Ok(UrEntry {
                theta,
                entropy: s,
                entropy_conjugate: sc,
                residual: s + sc - LN_PI_E,
            })
        })
        .collect()
}

/// One Renyi order of the conjugate-pair check.
#[derive(Debug, Clone, Copy)]
pub struct RenyiUrEntry {
    pub q: f64,
    pub residual: f64,
}

/// Left minus right side of the Renyi uncertainty relation for the optical
/// tomogram at angle theta, parametrized by q in (0, 1):
///
/// (q-1) ln integral w(theta + pi/2)^(1/(1-q))
///   + (q+1) ln integral w(theta)^(1/(1+q))
///   >= (1/2) [ (q-1) ln(pi (1-q)) + (q+1) ln(pi (1+q)) ].
pub fn renyi_ur_residual(m: &SymplecticTomogram, theta: f64, q: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&q) || q == 0.0 {
        return Err(Error::OutOfRange(format!(
            "Renyi parameter q = {q} outside (0, 1)"
        )));
    }
    let (grid_c, row_c) = m.direction_row(
        (theta + std::f64::consts::FRAC_PI_2).cos(),
        (theta + std::f64::consts::FRAC_PI_2).sin(),
    )?;
    let (grid, row) = m.direction_row(theta.cos(), theta.sin())?;
    let int_pow = |row: &[f64], spacing: f64, e: f64| -> f64 {
        row.iter()
            .filter(|&&p| p > DENSITY_FLOOR)
            .map(|&p| p.powf(e))
            .sum::<f64>()
            * spacing
    };
    let lhs = (q - 1.0) * int_pow(&row_c, grid_c.spacing(), 1.0 / (1.0 - q)).ln()
        + (q + 1.0) * int_pow(&row, grid.spacing(), 1.0 / (1.0 + q)).ln();
    let rhs = 0.5
        * ((q - 1.0) * (std::f64::consts::PI * (1.0 - q)).ln()
            + (q + 1.0) * (std::f64::consts::PI * (1.0 + q)).ln());
    Ok(lhs - rhs)
}

pub fn renyi_ur_check(m: &SymplecticTomogram, theta: f64, qs: &[f64]) -> Result<Vec<RenyiUrEntry>> {
    qs.iter()
        .map(|&q| {
            Ok(RenyiUrEntry {
                q,
                residual: renyi_ur_residual(m, theta, q)?,
            })
        })
        .collect()
}

/// Marginals of a phase-space density with their Shannon entropies.
#[derive(Debug, Clone)]
pub struct PhaseSpaceMarginals {
    pub position: Vec<f64>,
    pub momentum: Vec<f64>,
    pub position_entropy: f64,
    pub momentum_entropy: f64,
}

pub fn phase_space_marginals(f: &PhaseSpaceDensity) -> Result<PhaseSpaceMarginals> {
    let nq = f.qgrid().count();
    let np = f.pgrid().count();
    let mut pq = vec![0.0; nq];
    let mut pp = vec![0.0; np];
    for (iq, pq_val) in pq.iter_mut().enumerate() {
        for (ip, pp_val) in pp.iter_mut().enumerate() {
            let v = f.value(iq, ip);
            *pq_val += v * f.pgrid().spacing();
            *pp_val += v * f.qgrid().spacing();
        }
    }
    let sq = differential_entropy(&pq, f.qgrid().spacing())?;
    let sp = differential_entropy(&pp, f.pgrid().spacing())?;
    Ok(PhaseSpaceMarginals {
        position: pq,
        momentum: pp,
        position_entropy: sq,
        momentum_entropy: sp,
    })
}

/// Symmetric matrix of second moments, ordered (p1, q1[, p2, q2]).
#[derive(Debug, Clone)]
pub struct DispersionMatrix {
    /// 2 for one mode, 4 for two modes.
    pub dim: usize,
    /// Row-major entries.
    pub entries: Vec<f64>,
}

impl DispersionMatrix {
    pub fn at(&self, r: usize, c: usize) -> f64 {
        self.entries[r * self.dim + c]
    }

    pub fn sigma_pp(&self) -> f64 {
        self.at(0, 0)
    }

    pub fn sigma_qq(&self) -> f64 {
        self.at(1, 1)
    }

    pub fn sigma_qp(&self) -> f64 {
        self.at(0, 1)
    }
}

/// Moments of a classical phase-space density by grid quadrature.
pub fn dispersion_from_classical(f: &PhaseSpaceDensity) -> DispersionMatrix {
    let (mut m0, mut mq, mut mp, mut mqq, mut mqp, mut mpp) = (0.0, 0.0, 0.0, 0.0, 0.0, 0.0);
    let cell = f.qgrid().spacing() * f.pgrid().spacing();
    for iq in 0..f.qgrid().count() {
        let q = f.qgrid().point(iq);
        for ip in 0..f.pgrid().count() {
            let p = f.pgrid().point(ip);
            let v = f.value(iq, ip) * cell;
            m0 += v;
            mq += v * q;
            mp += v * p;
            mqq += v * q * q;
            mqp += v * q * p;
            mpp += v * p * p;
        }
    }
    let (mq, mp) = (mq / m0, mp / m0);
    let s_qq = mqq / m0 - mq * mq;
    let s_pp = mpp / m0 - mp * mp;
    let s_qp = mqp / m0 - mq * mp;
    DispersionMatrix {
        dim: 2,
        entries: vec![s_pp, s_qp, s_qp, s_qq],
    }
}

/// Quadrature moments of a pure state; the symmetrized covariance uses the
/// spectral derivative of the wavefunction.
pub fn dispersion_from_wavefunction(psi: &WaveFunction) -> DispersionMatrix {
    let grid = psi.grid();
    let dx = grid.spacing();
    let q1 = psi.position_moment(1);
    let q2 = psi.position_moment(2);
    let tilde = fourier_momentum(psi);
    let p1 = tilde.position_moment(1);
    let p2 = tilde.position_moment(2);
    // psi'(x) from the momentum representation
    let spectrum = unitary_fourier_row(psi.samples(), grid);
    let ip_spectrum: Vec<Complex64> = spectrum
        .iter()
        .enumerate()
        .map(|(i, &v)| Complex64::new(0.0, grid.point(i)) * v)
        .collect();
    let derivative: Vec<Complex64> = scaled_fourier_row(&ip_spectrum, grid, -1.0)
        .into_iter()
        .map(|v| v / (std::f64::consts::TAU).sqrt())
        .collect();
    // <q p>_sym = Re integral psi* x (-i psi') dx
    let qp: f64 = psi
        .samples()
        .iter()
        .zip(derivative.iter())
        .enumerate()
        .map(|(i, (s, d))| (s.conj() * Complex64::new(0.0, -1.0) * d * grid.point(i)).re)
        .sum::<f64>()
        * dx;
    let s_qp = qp - q1 * p1;
    DispersionMatrix {
        dim: 2,
        entries: vec![p2 - p1 * p1, s_qp, s_qp, q2 - q1 * q1],
    }
}

/// Operator moments of a Fock-basis density matrix (exact ladder algebra).
pub fn dispersion_from_density(rho: &DensityMatrix) -> DispersionMatrix {
    let n = rho.cutoff();
    let mut q = CMatrix::zeros(n, n);
    let mut p = CMatrix::zeros(n, n);
    for k in 0..n - 1 {
        let ladder = ((k + 1) as f64).sqrt() / std::f64::consts::SQRT_2;
        q[(k, k + 1)] = Complex64::new(ladder, 0.0);
        q[(k + 1, k)] = Complex64::new(ladder, 0.0);
        p[(k, k + 1)] = Complex64::new(0.0, -ladder);
        p[(k + 1, k)] = Complex64::new(0.0, ladder);
    }
    let expect = |op: &CMatrix| (rho.entries() * op).trace().re;
    let q1 = expect(&q);
    let p1 = expect(&p);
    let qq = expect(&(&q * &q));
    let pp = expect(&(&p * &p));
    let qp_sym = 0.5 * ((rho.entries() * (&q * &p + &p * &q)).trace().re);
    let s_qp = qp_sym - q1 * p1;
    DispersionMatrix {
        dim: 2,
        entries: vec![pp - p1 * p1, s_qp, s_qp, qq - q1 * q1],
    }
}

/// Block-diagonal two-mode dispersion matrix of a product state, ordered
/// (p1, q1, p2, q2).
pub fn dispersion_two_mode_product(a: &DispersionMatrix, b: &DispersionMatrix) -> DispersionMatrix {
    assert_eq!(a.dim, 2);
    assert_eq!(b.dim, 2);
    let mut entries = vec![0.0; 16];
    for r in 0..2 {
        for c in 0..2 {
            entries[r * 4 + c] = a.at(r, c);
            entries[(r + 2) * 4 + (c + 2)] = b.at(r, c);
        }
    }
    DispersionMatrix { dim: 4, entries }
}

#[derive(Debug, Clone)]
pub struct UncertaintyCheck {
    pub name: &'static str,
    pub value: f64,
    pub pass: bool,
}

#[derive(Debug, Clone)]
pub struct UncertaintyReport {
    pub checks: Vec<UncertaintyCheck>,
}

impl UncertaintyReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UncertaintyMode {
    Classical,
    Quantum,
}

const EIG_TOL: f64 = 1e-9;

fn det2(a: f64, b: f64, c: f64, d: f64) -> f64 {
    a * d - b * c
}

fn det_f64(m: &[f64], dim: usize) -> f64 {
    // Gaussian elimination with partial pivoting; dims here are 3 or 4.
    let mut a = m.to_vec();
    let mut det = 1.0;
    for col in 0..dim {
        let pivot = (col..dim)
            .max_by(|&r1, &r2| {
                a[r1 * dim + col]
                    .abs()
                    .partial_cmp(&a[r2 * dim + col].abs())
                    .unwrap()
            })
            .unwrap();
        if a[pivot * dim + col] == 0.0 {
            return 0.0;
        }
        if pivot != col {
            for c in 0..dim {
                a.swap(pivot * dim + c, col * dim + c);
            }
            det = -det;
        }
        det *= a[col * dim + col];
        for r in col + 1..dim {
            let factor = a[r * dim + col] / a[col * dim + col];
            for c in col..dim {
                a[r * dim + c] -= factor * a[col * dim + c];
            }
        }
    }
    det
}

/// Classical nonnegativity conditions or quantum uncertainty bounds on a
/// dispersion matrix. The report carries every per-condition verdict.
pub fn uncertainty_tests(sigma: &DispersionMatrix, mode: UncertaintyMode) -> UncertaintyReport {
    let mut checks = Vec::new();
    match (mode, sigma.dim) {
        (UncertaintyMode::Classical, 2) => {
            classical_single_mode_checks(sigma, 0, &mut checks);
        }
        (UncertaintyMode::Classical, 4) => {
            classical_single_mode_checks(sigma, 0, &mut checks);
            classical_single_mode_checks(sigma, 2, &mut checks);
            let det4 = det_f64(&sigma.entries, 4);
            checks.push(UncertaintyCheck {
                name: "det_sigma_4x4",
                value: det4,
                pass: det4 >= -EIG_TOL,
            });
            let mut minor = [0.0; 9];
            for r in 0..3 {
                for c in 0..3 {
                    minor[r * 3 + c] = sigma.at(r, c);
                }
            }
            let det3 = det_f64(&minor, 3);
            checks.push(UncertaintyCheck {
                name: "leading_minor_3x3",
                value: det3,
                pass: det3 >= -EIG_TOL,
            });
        }
        (UncertaintyMode::Quantum, 2) => {
            let lhs = det2(
                sigma.sigma_qq(),
                sigma.sigma_qp(),
                sigma.sigma_qp(),
                sigma.sigma_pp(),
            );
            checks.push(UncertaintyCheck {
                name: "schroedinger_robertson",
                value: lhs - 0.25,
                pass: lhs >= 0.25 - EIG_TOL,
            });
        }
        (UncertaintyMode::Quantum, 4) => {
            // sigma + (i/2) Omega must be positive semidefinite; Omega pairs
            // (p_k, q_k) with -i/2 above the diagonal.
            let mut m = CMatrix::zeros(4, 4);
            for r in 0..4 {
                for c in 0..4 {
                    m[(r, c)] = Complex64::new(sigma.at(r, c), 0.0);
                }
            }
            for k in 0..2 {
                m[(2 * k, 2 * k + 1)] += Complex64::new(0.0, -0.5);
                m[(2 * k + 1, 2 * k)] += Complex64::new(0.0, 0.5);
            }
            let min_eig = min_eigenvalue(&m);
            checks.push(UncertaintyCheck {
                name: "augmented_matrix_min_eigenvalue",
                value: min_eig,
                pass: min_eig >= -EIG_TOL,
            });
        }
        _ => checks.push(UncertaintyCheck {
            name: "dimension_supported",
            value: sigma.dim as f64,
            pass: false,
        }),
    }
    UncertaintyReport { checks }
}

fn classical_single_mode_checks(
    sigma: &DispersionMatrix,
    offset: usize,
    checks: &mut Vec<UncertaintyCheck>,
) {
    let pp = sigma.at(offset, offset);
    let qq = sigma.at(offset + 1, offset + 1);
    let pq = sigma.at(offset, offset + 1);
    checks.push(UncertaintyCheck {
        name: "sigma_qq_nonnegative",
        value: qq,
        pass: qq >= -EIG_TOL,
    });
    checks.push(UncertaintyCheck {
        name: "sigma_pp_nonnegative",
        value: pp,
        pass: pp >= -EIG_TOL,
    });
    let det = qq * pp - pq * pq;
    checks.push(UncertaintyCheck {
        name: "det_sigma_nonnegative",
        value: det,
        pass: det >= -EIG_TOL,
    });
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Grid1D;
    use crate::states::{classical_gaussian_density, coherent_state, fock_state, thermal_state};
    use approx::assert_abs_diff_eq;

    fn gaussian_density(grid: &Grid1D, var: f64) -> Vec<f64> {
        grid.points()
            .iter()
            .map(|&x| (-0.5 * x * x / var).exp() / (std::f64::consts::TAU * var).sqrt())
            .collect()
    }

    #[test]
    fn shannon_entropy_of_reference_densities() {
        let grid = Grid1D::new(-10.0, 10.0, 1024).unwrap();
        let half = gaussian_density(&grid, 0.5);
        assert_abs_diff_eq!(
            differential_entropy(&half, grid.spacing()).unwrap(),
            0.5 * LN_PI_E,
            epsilon = 1e-4
        );
        let two = gaussian_density(&grid, 2.0);
        assert_abs_diff_eq!(
            differential_entropy(&two, grid.spacing()).unwrap(),
            0.5 * (std::f64::consts::TAU * std::f64::consts::E * 2.0).ln(),
            epsilon = 1e-4
        );
        let ugrid = Grid1D::new(0.0, 1.0, 256).unwrap();
        let uniform = vec![1.0; 256];
        assert_abs_diff_eq!(
            differential_entropy(&uniform, ugrid.spacing()).unwrap(),
            0.0,
            epsilon = 1e-6
        );
        assert!(differential_entropy(&vec![2.0; 256], ugrid.spacing()).is_err());
    }

    #[test]
    fn renyi_entropy_limits_and_ground_state() {
        let grid = Grid1D::new(-10.0, 10.0, 1024).unwrap();
        let dens = gaussian_density(&grid, 0.8);
        let shannon = differential_entropy(&dens, grid.spacing()).unwrap();
        for q in [1.0 - 1e-4, 1.0 + 1e-4] {
            let r = renyi_differential_entropy(&dens, grid.spacing(), q).unwrap();
            assert_abs_diff_eq!(r, shannon, epsilon = 1e-3);
        }
        // oscillator ground-state position density at alpha = 2
        let vac = fock_state(0).unwrap();
        let alpha = 2.0;
        let r = renyi_differential_entropy(&vac.density(), vac.grid().spacing(), alpha).unwrap();
        let expect = 0.5 * std::f64::consts::PI.ln() - 0.5 * alpha.ln() / (1.0 - alpha);
        assert_abs_diff_eq!(r, expect, epsilon = 1e-3);
        // uniform density is q-independent
        let ugrid = Grid1D::new(0.0, 1.0, 256).unwrap();
        for q in [0.3, 2.0, 5.0] {
            assert_abs_diff_eq!(
                renyi_differential_entropy(&vec![1.0; 256], ugrid.spacing(), q).unwrap(),
                0.0,
                epsilon = 1e-9
            );
        }
        assert!(renyi_differential_entropy(&dens, grid.spacing(), -0.5).is_err());
    }

    #[test]
    fn position_momentum_entropies_of_states() {
        let (sx, sp) = position_momentum_entropies(&fock_state(0).unwrap()).unwrap();
        assert_abs_diff_eq!(sx, 0.5 * LN_PI_E, epsilon = 1e-4);
        assert_abs_diff_eq!(sp, 0.5 * LN_PI_E, epsilon = 1e-4);
        assert_abs_diff_eq!(sx + sp, LN_PI_E, epsilon = 1e-4);

        let coh = coherent_state(num_complex::Complex64::new(1.0, 0.0)).unwrap();
        let (cx, cp) = position_momentum_entropies(&coh).unwrap();
        assert_abs_diff_eq!(cx, sx, epsilon = 1e-4);
        assert_abs_diff_eq!(cp, sp, epsilon = 1e-4);

        let (fx, fp) = position_momentum_entropies(&fock_state(1).unwrap()).unwrap();
        assert!(fx + fp > LN_PI_E + 0.1);
    }

    #[test]
    fn tomographic_entropy_properties() {
        let m = SymplecticTomogram::from_wavefunction(&fock_state(0).unwrap());
        for theta in [0.0, 0.7, 2.1, 4.4] {
            assert_abs_diff_eq!(
                optical_entropy(&m, theta).unwrap(),
                0.5 * LN_PI_E,
                epsilon = 1e-4
            );
        }
        // additivity under direction scaling
        let lam = 3.0;
        let base = tomographic_entropy(&m, 0.6, 0.8).unwrap();
        let scaled = tomographic_entropy(&m, lam * 0.6, lam * 0.8).unwrap();
        assert_abs_diff_eq!(scaled, base + lam.ln(), epsilon = 1e-4);
        // S(1, 0) is the position entropy
        let psi = fock_state(1).unwrap();
        let m1 = SymplecticTomogram::from_wavefunction(&psi);
        let (sx, _) = position_momentum_entropies(&psi).unwrap();
        assert_abs_diff_eq!(
            tomographic_entropy(&m1, 1.0, 0.0).unwrap(),
            sx,
            epsilon = 1e-4
        );
    }

    #[test]
    fn shannon_ur_check_across_fixtures() {
        let thetas: Vec<f64> = (0..16)
            .map(|i| i as f64 * std::f64::consts::TAU / 16.0)
            .collect();
        let vac = SymplecticTomogram::from_wavefunction(&fock_state(0).unwrap());
        for e in entropic_ur_check(&vac, &thetas).unwrap() {
            assert_abs_diff_eq!(e.residual, 0.0, epsilon = 1e-4);
        }
        let f1 = SymplecticTomogram::from_wavefunction(&fock_state(1).unwrap());
        for e in entropic_ur_check(&f1, &thetas).unwrap() {
            assert!(e.residual > 0.1, "residual {}", e.residual);
        }
        let sub = classical_gaussian_density(0.0, 0.0, [[0.01, 0.0], [0.0, 0.01]]).unwrap();
        let mc = SymplecticTomogram::from_classical(&sub);
        let entries = entropic_ur_check(&mc, &[0.0]).unwrap();
        assert!(
            entries[0].residual < -0.5,
            "residual {}",
            entries[0].residual
        );
    }

    #[test]
    fn renyi_ur_saturation_and_limits() {
        let vac = SymplecticTomogram::from_wavefunction(&fock_state(0).unwrap());
        for q in [0.25, 0.5, 0.75] {
            let r = renyi_ur_residual(&vac, 0.9, q).unwrap();
            assert_abs_diff_eq!(r, 0.0, epsilon = 1e-3);
        }
        // q -> 0 reduces to the Shannon check after dividing by q
        let f1 = SymplecticTomogram::from_wavefunction(&fock_state(1).unwrap());
        let q = 1e-3;
        let renyi = renyi_ur_residual(&f1, 0.3, q).unwrap() / q;
        let shannon = entropic_ur_check(&f1, &[0.3]).unwrap()[0].residual;
        assert_abs_diff_eq!(renyi, shannon, epsilon = 2e-3);
        // positive for a nonclassical state
        assert!(renyi_ur_residual(&f1, 0.3, 0.5).unwrap() > 0.0);
        assert!(renyi_ur_residual(&f1, 0.3, 1.2).is_err());
    }

    #[test]
    fn marginals_of_gaussian_densities() {
        let f = classical_gaussian_density(0.0, 0.0, [[0.5, 0.0], [0.0, 0.5]]).unwrap();
        let m = phase_space_marginals(&f).unwrap();
        assert_abs_diff_eq!(m.position_entropy, 0.5 * LN_PI_E, epsilon = 1e-4);
        assert_abs_diff_eq!(m.momentum_entropy, 0.5 * LN_PI_E, epsilon = 1e-4);
        let mass: f64 = m.position.iter().sum::<f64>() * f.qgrid().spacing();
        assert_abs_diff_eq!(mass, 1.0, epsilon = 1e-5);

        let sub = classical_gaussian_density(0.0, 0.0, [[0.01, 0.0], [0.0, 0.01]]).unwrap();
        let ms = phase_space_marginals(&sub).unwrap();
        let sum = ms.position_entropy + ms.momentum_entropy;
        let expect = (std::f64::consts::TAU * std::f64::consts::E * 0.01).ln();
        assert_abs_diff_eq!(sum, expect, epsilon = 1e-3);
        assert!(sum < LN_PI_E);
    }

    #[test]
    fn dispersion_matrices_of_states() {
        let vac = dispersion_from_wavefunction(&fock_state(0).unwrap());
        assert_abs_diff_eq!(vac.sigma_qq(), 0.5, epsilon = 1e-5);
        assert_abs_diff_eq!(vac.sigma_pp(), 0.5, epsilon = 1e-5);
        assert_abs_diff_eq!(vac.sigma_qp(), 0.0, epsilon = 1e-8);

        let cov = [[1.2, 0.3], [0.3, 0.9]];
        let f = classical_gaussian_density(0.2, -0.4, cov).unwrap();
        let d = dispersion_from_classical(&f);
        assert_abs_diff_eq!(d.sigma_qq(), 1.2, epsilon = 1e-4);
        assert_abs_diff_eq!(d.sigma_pp(), 0.9, epsilon = 1e-4);
        assert_abs_diff_eq!(d.sigma_qp(), 0.3, epsilon = 1e-4);

        let thermal = dispersion_from_density(&thermal_state(0.5, 32).unwrap());
        assert_abs_diff_eq!(thermal.sigma_qq(), 1.0, epsilon = 1e-8);
        assert_abs_diff_eq!(thermal.sigma_pp(), 1.0, epsilon = 1e-8);

        let two = dispersion_two_mode_product(&vac, &vac);
        for r in 0..4 {
            for c in 0..4 {
                let expect = if r == c { 0.5 } else { 0.0 };
                assert_abs_diff_eq!(two.at(r, c), expect, epsilon = 1e-4);
            }
        }
    }

    #[test]
    fn uncertainty_tests_of_reference_states() {
        // vacuum saturates the quantum bound
        let vac = dispersion_from_wavefunction(&fock_state(0).unwrap());
        let rep = uncertainty_tests(&vac, UncertaintyMode::Quantum);
        assert!(rep.all_pass());
        assert_abs_diff_eq!(rep.checks[0].value, 0.0, epsilon = 1e-9);

        // sub-Heisenberg covariance: classical fine, quantum violated
        let f = classical_gaussian_density(0.0, 0.0, [[0.01, 0.0], [0.0, 0.01]]).unwrap();
        let d = dispersion_from_classical(&f);
        assert!(uncertainty_tests(&d, UncertaintyMode::Classical).all_pass());
        assert!(!uncertainty_tests(&d, UncertaintyMode::Quantum).all_pass());

        // two-mode vacuum: augmented matrix touches zero
        let two = dispersion_two_mode_product(&vac, &vac);
        let rep = uncertainty_tests(&two, UncertaintyMode::Quantum);
        assert!(rep.all_pass());
        assert_abs_diff_eq!(rep.checks[0].value, 0.0, epsilon = 1e-9);
        // and the classical view passes trivially
        assert!(uncertainty_tests(&two, UncertaintyMode::Classical).all_pass());
    }

    #[test]
    fn optical_entropy_matches_fractional_fourier_density() {
        use crate::frft::fractional_fourier;
        let psi = coherent_state(num_complex::Complex64::new(0.8, 0.4)).unwrap();
        let m = SymplecticTomogram::from_wavefunction(&psi);
        for theta in [0.4, 1.9, 3.3] {
            let via_tomogram = optical_entropy(&m, theta).unwrap();
            let rotated = fractional_fourier(&psi, theta);
            let direct =
                differential_entropy(&rotated.density(), rotated.grid().spacing()).unwrap();
            assert_abs_diff_eq!(via_tomogram, direct, epsilon = 1e-5);
        }
    }
}
