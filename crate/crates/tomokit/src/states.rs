//! Continuous-variable states: oscillator eigenfunctions, coherent states,
//! thermal Fock matrices, classical Gaussian phase-space densities, and the
//! Wigner function. Dimensionless quadratures throughout (hbar = 1).

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::{interp_cubic, Grid1D};
use crate::linalg::{hermiticity_defect, min_eigenvalue, sorted_hermitian_eigen, CMatrix};

pub const MAX_FOCK: usize = 10;
pub const MAX_COHERENT_AMPLITUDE: f64 = 2.0;
pub const DEFAULT_FOCK_CUTOFF: usize = 32;

/// Cutoff used when projecting grid wavefunctions onto the oscillator basis;
/// generous enough that every desk-scale state has tail mass below 1e-12.
pub(crate) const PROJECTION_CUTOFF: usize = 48;

/// Complex samples of a normalized wavefunction on a position grid.
#[derive(Debug, Clone)]
pub struct WaveFunction {
    grid: Grid1D,
    samples: Vec<Complex64>,
}

impl WaveFunction {
    pub fn new(grid: Grid1D, samples: Vec<Complex64>) -> Result<Self> {
        if samples.len() != grid.count() {
            return Err(Error::GridMismatch(format!(
                "{} samples on a {}-point grid",
                samples.len(),
                grid.count()
            )));
        }
        let wf = WaveFunction { grid, samples };
        let norm = wf.norm();
        if (norm - 1.0).abs() > 1e-6 {
            return Err(Error::InvalidState(format!(
                "wavefunction norm {norm} is not 1"
            )));
        }
        Ok(wf)
    }

    pub(crate) fn new_unchecked(grid: Grid1D, samples: Vec<Complex64>) -> Self {
        WaveFunction { grid, samples }
    }

    pub fn grid(&self) -> &Grid1D {
        &self.grid
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn norm(&self) -> f64 {
        (self.samples.iter().map(|v| v.norm_sqr()).sum::<f64>() * self.grid.spacing()).sqrt()
    }

    /// |psi(x)|^2 on the grid.
    pub fn density(&self) -> Vec<f64> {
        self.samples.iter().map(|v| v.norm_sqr()).collect()
    }

    /// n-th raw moment of the position density.
    pub fn position_moment(&self, n: u32) -> f64 {
        self.samples
            .iter()
            .enumerate()
            .map(|(i, v)| self.grid.point(i).powi(n as i32) * v.norm_sqr())
            .sum::<f64>()
            * self.grid.spacing()
    }

    /// Reverses the sample order; on a symmetric midpoint grid this is
    /// exactly psi(x) -> psi(-x).
    pub fn parity(&self) -> WaveFunction {
        let mut samples = self.samples.clone();
        samples.reverse();
        WaveFunction {
            grid: self.grid,
            samples,
        }
    }

    /// Cubic-interpolated sample at an arbitrary position (0 outside the grid).
    pub fn interp(&self, x: f64) -> Complex64 {
        let re: Vec<f64> = self.samples.iter().map(|v| v.re).collect();
        let im: Vec<f64> = self.samples.iter().map(|v| v.im).collect();
        Complex64::new(
            interp_cubic(&re, &self.grid, x),
            interp_cubic(&im, &self.grid, x),
        )
    }

    /// Overlap <self|other> by quadrature.
    pub fn overlap(&self, other: &WaveFunction) -> Complex64 {
        self.samples
            .iter()
            .zip(other.samples.iter())
            .map(|(a, b)| a.conj() * b)
            .sum::<Complex64>()
            * self.grid.spacing()
    }

    /// Coefficients of the expansion over oscillator eigenfunctions.
    pub fn fock_coefficients(&self, cutoff: usize) -> Vec<Complex64> {
        let dx = self.grid.spacing();
        let mut coeffs = Vec::with_capacity(cutoff);
        let mut prev = vec![0.0; self.grid.count()];
        let mut cur = oscillator_eigenfunction(0, &self.grid);
        for n in 0..cutoff {
            let c = self
                .samples
                .iter()
                .zip(cur.iter())
                .map(|(s, h)| s * h)
                .sum::<Complex64>()
                * dx;
            coeffs.push(c);
            let next = hermite_step(n, &self.grid, &cur, &prev);
            prev = cur;
            cur = next;
        }
        coeffs
    }
}

fn hermite_step(n: usize, grid: &Grid1D, cur: &[f64], prev: &[f64]) -> Vec<f64> {
    // phi_{n+1} = sqrt(2/(n+1)) x phi_n - sqrt(n/(n+1)) phi_{n-1}
    let a = (2.0 / (n as f64 + 1.0)).sqrt();
    let b = (n as f64 / (n as f64 + 1.0)).sqrt();
    (0..grid.count())
        .map(|i| a * grid.point(i) * cur[i] - b * prev[i])
        .collect()
}

/// Normalized oscillator eigenfunction phi_n sampled on `grid`, built with
/// the stabilized three-term recurrence.
pub fn oscillator_eigenfunction(n: usize, grid: &Grid1D) -> Vec<f64> {
    let norm0 = std::f64::consts::PI.powf(-0.25);
    let mut prev = vec![0.0; grid.count()];
    let mut cur: Vec<f64> = (0..grid.count())
        .map(|i| {
            let x = grid.point(i);
            norm0 * (-0.5 * x * x).exp()
        })
        .collect();
    for k in 0..n {
        let next = hermite_step(k, grid, &cur, &prev);
        prev = cur;
        cur = next;
    }
    cur
}

/// n-th oscillator eigenstate on the default grid.
pub fn fock_state(n: usize) -> Result<WaveFunction> {
    fock_state_on(n, Grid1D::default_position())
}

pub fn fock_state_on(n: usize, grid: Grid1D) -> Result<WaveFunction> {
    if n > MAX_FOCK {
        return Err(Error::OutOfRange(format!(
            "Fock index {n} exceeds desk-scale limit {MAX_FOCK}"
        )));
    }
    let samples = oscillator_eigenfunction(n, &grid)
        .into_iter()
        .map(|v| Complex64::new(v, 0.0))
        .collect();
    WaveFunction::new(grid, samples)
}

/// Coherent state: displaced vacuum with <q> = sqrt(2) Re alpha and
/// <p> = sqrt(2) Im alpha.
pub fn coherent_state(alpha: Complex64) -> Result<WaveFunction> {
    coherent_state_on(alpha, Grid1D::default_position())
}

pub fn coherent_state_on(alpha: Complex64, grid: Grid1D) -> Result<WaveFunction> {
    if alpha.norm() > MAX_COHERENT_AMPLITUDE {
        return Err(Error::OutOfRange(format!(
            "|alpha| = {} exceeds desk-scale limit {MAX_COHERENT_AMPLITUDE}",
            alpha.norm()
        )));
    }
    let q0 = std::f64::consts::SQRT_2 * alpha.re;
    let p0 = std::f64::consts::SQRT_2 * alpha.im;
    let norm = std::f64::consts::PI.powf(-0.25);
    let samples = (0..grid.count())
        .map(|i| {
            let x = grid.point(i);
            let gauss = norm * (-0.5 * (x - q0) * (x - q0)).exp();
            gauss * Complex64::new(0.0, p0 * x - 0.5 * p0 * q0).exp()
        })
        .collect();
    WaveFunction::new(grid, samples)
}

/// Hermitian positive trace-one matrix in the Fock basis.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    entries: CMatrix,
}

impl DensityMatrix {
    pub fn new(entries: CMatrix) -> Result<Self> {
        if entries.nrows() != entries.ncols() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} density matrix",
                entries.nrows(),
                entries.ncols()
            )));
        }
        let herm = hermiticity_defect(&entries);
        if herm > 1e-10 {
            return Err(Error::InvalidState(format!(
                "hermiticity defect {herm:.3e}"
            )));
        }
        let trace = entries.trace();
        if (trace.re - 1.0).abs() > 1e-8 || trace.im.abs() > 1e-8 {
            return Err(Error::InvalidState(format!("trace {trace} is not 1")));
        }
        let min_eig = min_eigenvalue(&entries);
        if min_eig < -1e-8 {
            return Err(Error::InvalidState(format!(
                "negative eigenvalue {min_eig:.3e}"
            )));
        }
        Ok(DensityMatrix { entries })
    }

    pub fn cutoff(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }

    pub fn purity(&self) -> f64 {
        (&self.entries * &self.entries).trace().re
    }

    /// Rank-one matrix from the Fock expansion of a pure state.
    pub fn from_wavefunction(psi: &WaveFunction, cutoff: usize) -> Result<Self> {
        let c = psi.fock_coefficients(cutoff);
        let captured: f64 = c.iter().map(|v| v.norm_sqr()).sum();
        if (captured - 1.0).abs() > 1e-6 {
            return Err(Error::OutOfRange(format!(
                "Fock cutoff {cutoff} captures only {captured} of the norm"
            )));
        }
        let mut entries = CMatrix::zeros(cutoff, cutoff);
        for m in 0..cutoff {
            for n in 0..cutoff {
                entries[(m, n)] = c[m] * c[n].conj() / Complex64::new(captured, 0.0);
            }
        }
        Ok(DensityMatrix { entries })
    }

    /// Spectral decomposition into grid wavefunctions, one per eigenvalue
    /// above the weight floor. Eigenvalues are clamped at zero and
    /// renormalized; ordering is deterministic.
    pub fn pure_components(&self, grid: &Grid1D) -> Vec<(f64, WaveFunction)> {
        let (vals, vecs) = sorted_hermitian_eigen(&self.entries);
        let clamped: Vec<f64> = vals.iter().map(|&v| v.max(0.0)).collect();
        let total: f64 = clamped.iter().sum();
        let basis: Vec<Vec<f64>> = (0..self.cutoff())
            .map(|n| oscillator_eigenfunction(n, grid))
            .collect();
        let mut out = Vec::new();
        for (k, &w) in clamped.iter().enumerate() {
            let weight = w / total;
            if weight < 1e-14 {
                continue;
            }
            let mut samples = vec![Complex64::ZERO; grid.count()];
            for n in 0..self.cutoff() {
                let coef = vecs[(n, k)];
                if coef.norm() < 1e-16 {
                    continue;
                }
                for (s, b) in samples.iter_mut().zip(basis[n].iter()) {
                    *s += coef * b;
                }
            }
            // Grid truncation can shave a little norm off high-n components.
            let norm = (samples.iter().map(|v| v.norm_sqr()).sum::<f64>() * grid.spacing()).sqrt();
            for s in samples.iter_mut() {
                *s /= norm;
            }
            out.push((weight, WaveFunction::new_unchecked(*grid, samples)));
        }
        out
    }
}

/// Thermal (geometric) Fock-diagonal state with mean occupation `nbar`,
/// renormalized to unit trace after truncation.
pub fn thermal_state(nbar: f64, cutoff: usize) -> Result<DensityMatrix> {
    if nbar < 0.0 {
        return Err(Error::OutOfRange(format!("negative nbar {nbar}")));
    }
    if cutoff < 8 {
        return Err(Error::OutOfRange(format!("cutoff {cutoff} below 8")));
    }
    let ratio = nbar / (1.0 + nbar);
    let mut weights: Vec<f64> = (0..cutoff).map(|n| ratio.powi(n as i32)).collect();
    let total: f64 = weights.iter().sum();
    for w in weights.iter_mut() {
        *w /= total;
    }
    let mut entries = CMatrix::zeros(cutoff, cutoff);
    for (n, w) in weights.iter().enumerate() {
        entries[(n, n)] = Complex64::new(*w, 0.0);
    }
    Ok(DensityMatrix { entries })
}

/// Real Wigner quasiprobability on a (q, p) grid, normalized as
/// `sum W dq dp / (2 pi) = 1`.
#[derive(Debug, Clone)]
pub struct WignerFunction {
    qgrid: Grid1D,
    pgrid: Grid1D,
    /// Row-major: values[iq * np + ip].
    values: Vec<f64>,
}

impl WignerFunction {
    pub fn qgrid(&self) -> &Grid1D {
        &self.qgrid
    }

    pub fn pgrid(&self) -> &Grid1D {
        &self.pgrid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn value(&self, iq: usize, ip: usize) -> f64 {
        self.values[iq * self.pgrid.count() + ip]
    }

    pub fn total_mass(&self) -> f64 {
        self.values.iter().sum::<f64>() * self.qgrid.spacing() * self.pgrid.spacing()
            / std::f64::consts::TAU
    }

    /// Marginal over p with the dp/(2 pi) measure; recovers |psi(q)|^2.
    pub fn position_marginal(&self) -> Vec<f64> {
        let np = self.pgrid.count();
        (0..self.qgrid.count())
            .map(|iq| {
                self.values[iq * np..(iq + 1) * np].iter().sum::<f64>() * self.pgrid.spacing()
                    / std::f64::consts::TAU
            })
            .collect()
    }
}

fn default_wigner_grid() -> Grid1D {
    Grid1D::new(-8.0, 8.0, 256).expect("static grid")
}

/// Wigner transform of a pure state:
/// `W(q, p) = 2 integral psi*(q + v) psi(q - v) exp(2 i p v) dv`.
pub fn wigner_from_wavefunction(psi: &WaveFunction) -> WignerFunction {
    let qgrid = default_wigner_grid();
    let pgrid = default_wigner_grid();
    wigner_weighted(&[(1.0, psi.clone())], qgrid, pgrid)
}

pub fn wigner_from_density(rho: &DensityMatrix) -> WignerFunction {
    let qgrid = default_wigner_grid();
    let pgrid = default_wigner_grid();
    wigner_weighted(
        &rho.pure_components(&Grid1D::default_position()),
        qgrid,
        pgrid,
    )
}

fn wigner_weighted(
    components: &[(f64, WaveFunction)],
    qgrid: Grid1D,
    pgrid: Grid1D,
) -> WignerFunction {
    let vgrid = components
        .first()
        .map(|(_, w)| *w.grid())
        .unwrap_or_else(Grid1D::default_position);
    let nv = vgrid.count();
    let dv = vgrid.spacing();
    let np = pgrid.count();
    let mut values = vec![0.0; qgrid.count() * np];
    for iq in 0..qgrid.count() {
        let q = qgrid.point(iq);
        // g(v) = sum_k w_k psi_k*(q + v) psi_k(q - v)
        let mut g = vec![Complex64::ZERO; nv];
        for (w, psi) in components {
            for (j, gv) in g.iter_mut().enumerate() {
                let v = vgrid.point(j);
                let a = psi.interp(q + v);
                if a.norm_sqr() < 1e-60 {
                    continue;
                }
                let b = psi.interp(q - v);
                *gv += w * a.conj() * b;
            }
        }
        for ip in 0..np {
            let p = pgrid.point(ip);
            let mut acc = Complex64::ZERO;
            for (j, gv) in g.iter().enumerate() {
                let v = vgrid.point(j);
                acc += gv * Complex64::new(0.0, 2.0 * p * v).exp();
            }
            values[iq * np + ip] = 2.0 * (acc * dv).re;
        }
    }
    WignerFunction {
        qgrid,
        pgrid,
        values,
    }
}

/// Nonnegative normalized classical distribution on a (q, p) grid.
#[derive(Debug, Clone)]
pub struct PhaseSpaceDensity {
    qgrid: Grid1D,
    pgrid: Grid1D,
    values: Vec<f64>,
}

impl PhaseSpaceDensity {
    pub fn new(qgrid: Grid1D, pgrid: Grid1D, values: Vec<f64>) -> Result<Self> {
        if values.len() != qgrid.count() * pgrid.count() {
            return Err(Error::GridMismatch("phase-space value count".into()));
        }
        if values.iter().any(|&v| v < 0.0) {
            return Err(Error::InvalidState("negative phase-space value".into()));
        }
        let f = PhaseSpaceDensity {
            qgrid,
            pgrid,
            values,
        };
        let mass = f.total_mass();
        if (mass - 1.0).abs() > 1e-6 {
            return Err(Error::InvalidState(format!(
                "phase-space mass {mass} is not 1"
            )));
        }
        Ok(f)
    }

    pub fn qgrid(&self) -> &Grid1D {
        &self.qgrid
    }

    pub fn pgrid(&self) -> &Grid1D {
        &self.pgrid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn value(&self, iq: usize, ip: usize) -> f64 {
        self.values[iq * self.pgrid.count() + ip]
    }

    pub fn total_mass(&self) -> f64 {
        self.values.iter().sum::<f64>() * self.qgrid.spacing() * self.pgrid.spacing()
    }
}

fn default_classical_grid() -> Grid1D {
    Grid1D::new(-8.0, 8.0, 512).expect("static grid")
}

/// Bivariate Gaussian phase-space density with the given means and 2x2
/// covariance `[[s_qq, s_qp], [s_qp, s_pp]]`.
pub fn classical_gaussian_density(
    mean_q: f64,
    mean_p: f64,
    cov: [[f64; 2]; 2],
) -> Result<PhaseSpaceDensity> {
    let det = cov[0][0] * cov[1][1] - cov[0][1] * cov[1][0];
    if (cov[0][1] - cov[1][0]).abs() > 1e-12 || cov[0][0] <= 0.0 || det <= 0.0 {
        return Err(Error::OutOfRange(
            "covariance must be symmetric positive definite".into(),
        ));
    }
    let qgrid = default_classical_grid();
    let pgrid = default_classical_grid();
    let inv = [
        [cov[1][1] / det, -cov[0][1] / det],
        [-cov[1][0] / det, cov[0][0] / det],
    ];
    let norm = 1.0 / (std::f64::consts::TAU * det.sqrt());
    let np = pgrid.count();
    let mut values = vec![0.0; qgrid.count() * np];
    for iq in 0..qgrid.count() {
        let dq = qgrid.point(iq) - mean_q;
        for ip in 0..np {
            let dp = pgrid.point(ip) - mean_p;
            let quad = inv[0][0] * dq * dq + 2.0 * inv[0][1] * dq * dp + inv[1][1] * dp * dp;
            values[iq * np + ip] = norm * (-0.5 * quad).exp();
        }
    }
    PhaseSpaceDensity::new(qgrid, pgrid, values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn vacuum_matches_closed_form() {
        let psi = fock_state(0).unwrap();
        let norm = std::f64::consts::PI.powf(-0.25);
        for (i, s) in psi.samples().iter().enumerate() {
            let x = psi.grid().point(i);
            assert_abs_diff_eq!(s.re, norm * (-0.5 * x * x).exp(), epsilon = 1e-10);
            assert_eq!(s.im, 0.0);
        }
    }

    #[test]
    fn fock_one_is_odd() {
        let psi = fock_state(1).unwrap();
        let n = psi.grid().count();
        for i in 0..n {
            assert_abs_diff_eq!(
                psi.samples()[i].re,
                -psi.samples()[n - 1 - i].re,
                epsilon = 1e-12
            );
        }
        assert_abs_diff_eq!(psi.position_moment(1), 0.0, epsilon = 1e-10);
    }

    #[test]
    fn fock_moments_follow_ladder() {
        // <q^2> = n + 1/2 for the n-th eigenstate
        for n in [0usize, 1, 2, 5, 10] {
            let psi = fock_state(n).unwrap();
            assert_abs_diff_eq!(psi.position_moment(2), n as f64 + 0.5, epsilon = 1e-8);
            assert_abs_diff_eq!(psi.norm(), 1.0, epsilon = 1e-10);
        }
    }

    #[test]
    fn coherent_state_moments() {
        let alpha = Complex64::new(1.0, 0.0);
        let psi = coherent_state(alpha).unwrap();
        assert_abs_diff_eq!(
            psi.position_moment(1),
            std::f64::consts::SQRT_2,
            epsilon = 1e-6
        );
        let var = psi.position_moment(2) - psi.position_moment(1).powi(2);
        assert_abs_diff_eq!(var, 0.5, epsilon = 1e-6);

        let beta = Complex64::new(0.3, -1.1);
        let psi = coherent_state(beta).unwrap();
        let var = psi.position_moment(2) - psi.position_moment(1).powi(2);
        assert_abs_diff_eq!(var, 0.5, epsilon = 1e-6);
    }

    #[test]
    fn coherent_zero_is_vacuum() {
        let a = coherent_state(Complex64::ZERO).unwrap();
        let b = fock_state(0).unwrap();
        for (x, y) in a.samples().iter().zip(b.samples().iter()) {
            assert_abs_diff_eq!(x.re, y.re, epsilon = 1e-10);
            assert_abs_diff_eq!(x.im, y.im, epsilon = 1e-10);
        }
    }

    #[test]
    fn thermal_state_weights() {
        let rho = thermal_state(0.5, 32).unwrap();
        assert_abs_diff_eq!(rho.entries()[(0, 0)].re, 2.0 / 3.0, epsilon = 1e-6);
        assert_abs_diff_eq!(rho.entries().trace().re, 1.0, epsilon = 1e-10);
        // nonincreasing eigenvalues
        for n in 1..32 {
            assert!(rho.entries()[(n, n)].re <= rho.entries()[(n - 1, n - 1)].re);
        }
        let zero = thermal_state(0.0, 16).unwrap();
        assert_abs_diff_eq!(zero.entries()[(0, 0)].re, 1.0, epsilon = 1e-14);
        assert!(thermal_state(-0.1, 16).is_err());
    }

    #[test]
    fn thermal_purity_is_geometric() {
        let rho = thermal_state(0.5, 32).unwrap();
        // sum of squared geometric weights = 1/(1 + 2 nbar)
        assert_abs_diff_eq!(rho.purity(), 0.5, epsilon = 1e-8);
    }

    #[test]
    fn wigner_vacuum_and_fock_one() {
        let w = wigner_from_wavefunction(&fock_state(0).unwrap());
        assert_abs_diff_eq!(w.total_mass(), 1.0, epsilon = 1e-4);
        for iq in (0..256).step_by(37) {
            for ip in (0..256).step_by(41) {
                let q = w.qgrid().point(iq);
                let p = w.pgrid().point(ip);
                assert_abs_diff_eq!(
                    w.value(iq, ip),
                    2.0 * (-q * q - p * p).exp(),
                    epsilon = 1e-4
                );
            }
        }

        let w1 = wigner_from_wavefunction(&fock_state(1).unwrap());
        // negative at the origin (value -2 exactly in the continuum)
        let mid = 128;
        assert!(w1.value(mid, mid) < -1.5);
    }

    #[test]
    fn wigner_marginal_recovers_position_density() {
        for n in 0..=3 {
            let psi = fock_state(n).unwrap();
            let w = wigner_from_wavefunction(&psi);
            let marg = w.position_marginal();
            for (iq, m) in marg.iter().enumerate().step_by(19) {
                let q = w.qgrid().point(iq);
                let dens = psi.interp(q).norm_sqr();
                assert_abs_diff_eq!(*m, dens, epsilon = 1e-4);
            }
        }
    }

    #[test]
    fn wigner_of_density_matrix_is_mixture() {
        let rho = thermal_state(0.3, 16).unwrap();
        let w = wigner_from_density(&rho);
        assert_abs_diff_eq!(w.total_mass(), 1.0, epsilon = 1e-4);
        // thermal Wigner is an isotropic Gaussian: W(0,0) = 2/(1+2 nbar)
        let mid = 128;
        let expect = 2.0 / (1.0 + 2.0 * 0.3);
        assert_abs_diff_eq!(w.value(mid, mid), expect, epsilon = 2e-3);
    }

    #[test]
    fn classical_gaussian_matches_vacuum_wigner_profile() {
        let f = classical_gaussian_density(0.0, 0.0, [[0.5, 0.0], [0.0, 0.5]]).unwrap();
        assert_abs_diff_eq!(f.total_mass(), 1.0, epsilon = 1e-6);
        for iq in (0..512).step_by(61) {
            for ip in (0..512).step_by(67) {
                let q = f.qgrid().point(iq);
                let p = f.pgrid().point(ip);
                let expect = (-q * q - p * p).exp() / std::f64::consts::PI;
                assert_abs_diff_eq!(f.value(iq, ip), expect, epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn sub_heisenberg_gaussian_is_a_valid_density() {
        let f = classical_gaussian_density(0.0, 0.0, [[0.01, 0.0], [0.0, 0.01]]).unwrap();
        assert_abs_diff_eq!(f.total_mass(), 1.0, epsilon = 1e-6);
        assert!(f.values().iter().all(|&v| v >= 0.0));
    }

    #[test]
    fn bad_covariance_rejected() {
        assert!(classical_gaussian_density(0.0, 0.0, [[1.0, 2.0], [2.0, 1.0]]).is_err());
        assert!(classical_gaussian_density(0.0, 0.0, [[1.0, 0.1], [0.2, 1.0]]).is_err());
    }

    #[test]
    fn fock_projection_roundtrip() {
        let psi = coherent_state(Complex64::new(1.0, 0.5)).unwrap();
        let c = psi.fock_coefficients(PROJECTION_CUTOFF);
        let captured: f64 = c.iter().map(|v| v.norm_sqr()).sum();
        assert_abs_diff_eq!(captured, 1.0, epsilon = 1e-10);
        // |c_n|^2 follows the Poisson law
        let a2 = 1.25f64;
        let mut logfact = 0.0;
        for (n, cn) in c.iter().enumerate().take(12) {
            if n > 0 {
                logfact += (n as f64).ln();
            }
            let expect = (-a2 + (n as f64) * a2.ln() - logfact).exp();
            assert_abs_diff_eq!(cn.norm_sqr(), expect, epsilon = 1e-9);
        }
    }

    #[test]
    fn density_from_wavefunction_is_projector() {
        let psi = fock_state(1).unwrap();
        let rho = DensityMatrix::from_wavefunction(&psi, 8).unwrap();
        assert_abs_diff_eq!(rho.purity(), 1.0, epsilon = 1e-9);
        assert_abs_diff_eq!(rho.entries()[(1, 1)].re, 1.0, epsilon = 1e-9);
    }

    #[test]
    fn pure_components_of_thermal_state() {
        let rho = thermal_state(0.5, 24).unwrap();
        let comps = rho.pure_components(&Grid1D::default_position());
        let total: f64 = comps.iter().map(|(w, _)| w).sum();
        assert_abs_diff_eq!(total, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(comps[0].0, 2.0 / 3.0, epsilon = 1e-10);
    }
}
