//! Multimode symplectic and center-of-mass tomography for product states
//! and per-mode classical densities (desk scale: up to two quantum or three
//! classical modes).
//!
//! For stored product structure every multimode quantity factorizes. The
//! center-of-mass variable X = mu.q + nu.p is a sum of independent per-mode
//! contributions, so its distribution is assembled from the product of the
//! per-mode characteristic functions and inverted onto an X grid; modes
//! whose (mu_k, nu_k) vanish contribute exact delta factors and drop out,
//! which is also how center-of-mass marginalization works.

use num_complex::Complex64;

use crate::entropy::{position_momentum_entropies, LN_PI_E};
use crate::error::{Error, Result};
use crate::fourier::scaled_fourier_cross;
use crate::grid::{interp_cubic, Grid1D};
use crate::linalg::CMatrix;
use crate::recon::{reconstruct_density_matrix, reconstruct_phase_space, PhaseSpaceMap};
use crate::states::{DensityMatrix, PhaseSpaceDensity, WaveFunction};
use crate::tomo::SymplecticTomogram;

pub const MAX_QUANTUM_MODES: usize = 3;
pub const MAX_CLASSICAL_MODES: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MultimodeKind {
    Classical,
    ProductPure,
    ProductMixed,
}

enum Mode {
    Pure(WaveFunction),
    Mixed(DensityMatrix),
    Classical(PhaseSpaceDensity),
}

/// Product state of N modes, all of one kind.
pub struct MultimodeState {
    kind: MultimodeKind,
    modes: Vec<Mode>,
    pures: Vec<Option<WaveFunction>>,
}

impl MultimodeState {
    pub fn product_pure(psis: Vec<WaveFunction>) -> Result<Self> {
        if psis.is_empty() || psis.len() > MAX_QUANTUM_MODES {
            return Err(Error::OutOfRange(format!(
                "{} pure modes outside 1..={MAX_QUANTUM_MODES}",
                psis.len()
            )));
        }
        let pures = psis.iter().map(|p| Some(p.clone())).collect();
        Ok(MultimodeState {
            kind: MultimodeKind::ProductPure,
            modes: psis.into_iter().map(Mode::Pure).collect(),
            pures,
        })
    }

    pub fn product_mixed(rhos: Vec<DensityMatrix>) -> Result<Self> {
        if rhos.is_empty() || rhos.len() > MAX_QUANTUM_MODES {
            return Err(Error::OutOfRange(format!(
                "{} mixed modes outside 1..={MAX_QUANTUM_MODES}",
                rhos.len()
            )));
        }
        let pures = rhos.iter().map(|_| None).collect();
        Ok(MultimodeState {
            kind: MultimodeKind::ProductMixed,
            modes: rhos.into_iter().map(Mode::Mixed).collect(),
            pures,
        })
    }

    pub fn classical(fs: Vec<PhaseSpaceDensity>) -> Result<Self> {
        if fs.is_empty() || fs.len() > MAX_CLASSICAL_MODES {
            return Err(Error::OutOfRange(format!(
                "{} classical modes outside 1..={MAX_CLASSICAL_MODES}",
                fs.len()
            )));
        }
        let pures = fs.iter().map(|_| None).collect();
        Ok(MultimodeState {
            kind: MultimodeKind::Classical,
            modes: fs.into_iter().map(Mode::Classical).collect(),
            pures,
        })
    }

    pub fn kind(&self) -> MultimodeKind {
        self.kind
    }

    pub fn mode_count(&self) -> usize {
        self.modes.len()
    }

    fn mode_tomogram(&self, k: usize) -> SymplecticTomogram {
        match &self.modes[k] {
            Mode::Pure(psi) => SymplecticTomogram::from_wavefunction(psi),
            Mode::Mixed(rho) => SymplecticTomogram::from_density_matrix(rho),
            Mode::Classical(f) => SymplecticTomogram::from_classical(f),
        }
    }

    pub fn pure_mode(&self, k: usize) -> Option<&WaveFunction> {
        self.pures[k].as_ref()
    }

    fn classical_mode(&self, k: usize) -> Option<&PhaseSpaceDensity> {
        match &self.modes[k] {
            Mode::Classical(f) => Some(f),
            _ => None,
        }
    }
}

/// Product-form multimode symplectic tomogram M(X, mu, nu) =
/// prod_k M_k(X_k, mu_k, nu_k).
pub struct MultimodeTomogram {
    tomos: Vec<SymplecticTomogram>,
}

pub fn multimode_symplectic_tomogram(state: &MultimodeState) -> MultimodeTomogram {
    MultimodeTomogram {
        tomos: (0..state.mode_count())
            .map(|k| state.mode_tomogram(k))
            .collect(),
    }
}

impl MultimodeTomogram {
    pub fn mode_count(&self) -> usize {
        self.tomos.len()
    }

    pub fn evaluate(&self, xs: &[f64], mus: &[f64], nus: &[f64]) -> Result<f64> {
        let n = self.tomos.len();
        if xs.len() != n || mus.len() != n || nus.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "expected {n} components, got ({}, {}, {})",
                xs.len(),
                mus.len(),
                nus.len()
            )));
        }
        let mut acc = 1.0;
        for (k, tomo) in self.tomos.iter().enumerate() {
            acc *= tomo.evaluate(xs[k], mus[k], nus[k])?;
        }
        Ok(acc)
    }

    /// Central-difference residual of the per-mode Euler relation
    /// (X_k d/dX_k + mu_k d/dmu_k + nu_k d/dnu_k + 1) M = 0.
    pub fn mode_euler_residual(
        &self,
        k: usize,
        xs: &[f64],
        mus: &[f64],
        nus: &[f64],
        h: f64,
    ) -> Result<f64> {
        let mut xp = xs.to_vec();
        let mut mp = mus.to_vec();
        let mut np = nus.to_vec();
        let base = self.evaluate(xs, mus, nus)?;
        xp[k] = xs[k] + h;
        let fxp = self.evaluate(&xp, mus, nus)?;
        xp[k] = xs[k] - h;
        let fxm = self.evaluate(&xp, mus, nus)?;
        mp[k] = mus[k] + h;
        let fmp = self.evaluate(xs, &mp, nus)?;
        mp[k] = mus[k] - h;
        let fmm = self.evaluate(xs, &mp, nus)?;
        np[k] = nus[k] + h;
        let fnp = self.evaluate(xs, mus, &np)?;
        np[k] = nus[k] - h;
        let fnm = self.evaluate(xs, mus, &np)?;
        Ok(xs[k] * (fxp - fxm) / (2.0 * h)
            + mus[k] * (fmp - fmm) / (2.0 * h)
            + nus[k] * (fnp - fnm) / (2.0 * h)
            + base)
    }

    /// Tomogram of the leading `keep` modes; for product states the trailing
    /// X integrations collapse to dropping the factors.
    pub fn marginal(&self, keep: usize) -> Result<MultimodeTomogram> {
        if keep == 0 || keep >= self.tomos.len() {
            return Err(Error::OutOfRange(format!(
                "marginal must keep 1..{} modes, asked for {keep}",
                self.tomos.len()
            )));
        }
        Ok(MultimodeTomogram {
            tomos: self.tomos[..keep].to_vec(),
        })
    }
}

/// Center-of-mass tomogram: the density of X = mu.q + nu.p.
pub struct CenterOfMassTomogram {
    tomos: Vec<SymplecticTomogram>,
    /// Directions pinned to zero by marginalization (trailing modes).
    zero_tail: usize,
}

pub fn center_of_mass_tomogram(state: &MultimodeState) -> CenterOfMassTomogram {
    CenterOfMassTomogram {
        tomos: (0..state.mode_count())
            .map(|k| state.mode_tomogram(k))
            .collect(),
        zero_tail: 0,
    }
}

const CM_DIRECTION_EPS: f64 = 1e-6;

impl CenterOfMassTomogram {
    pub fn mode_count(&self) -> usize {
        self.tomos.len() - self.zero_tail
    }

    fn active_modes(&self, mus: &[f64], nus: &[f64]) -> Result<Vec<usize>> {
        let n = self.mode_count();
        if mus.len() != n || nus.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "expected {n} direction components, got ({}, {})",
                mus.len(),
                nus.len()
            )));
        }
        let active: Vec<usize> = (0..n)
            .filter(|&k| mus[k].abs() >= CM_DIRECTION_EPS || nus[k].abs() >= CM_DIRECTION_EPS)
            .collect();
        if active.is_empty() {
            return Err(Error::UndefinedDirection { mu: 0.0, nu: 0.0 });
        }
        Ok(active)
    }

    /// Characteristic function of the center-of-mass variable: the product
    /// of per-mode characteristic values (independent contributions).
    pub fn characteristic(&self, k: f64, mus: &[f64], nus: &[f64]) -> Result<Complex64> {
        let active = self.active_modes(mus, nus)?;
        let mut acc = Complex64::ONE;
        for &idx in &active {
            acc *= self.tomos[idx].weyl_characteristic(k, mus[idx], nus[idx])?;
        }
        Ok(acc)
    }

    /// Density row over X for a fixed direction vector.
    pub fn row(&self, mus: &[f64], nus: &[f64]) -> Result<(Grid1D, Vec<f64>)> {
        let active = self.active_modes(mus, nus)?;
        // direction variance from the curvature of |xi| at the origin
        let delta = 0.05;
        let xi_d = self.characteristic(delta, mus, nus)?;
        let var = (-2.0 * xi_d.norm().ln() / (delta * delta)).max(1e-6);
        let k_max = 12.0 / var.sqrt();
        // X support: sum of per-mode reaches
        let reach: f64 = active
            .iter()
            .map(|&k| 8.0 * mus[k].hypot(nus[k]))
            .sum::<f64>()
            * 1.05;
        let out = Grid1D::new(-reach, reach, 1024)?;
        let dk = std::f64::consts::PI / (reach * 1.15);
        let nk = (((2.0 * k_max / dk).ceil() as usize) + 1).clamp(64, 8192);
        let nk = nk + (nk & 1);
        let kgrid = Grid1D::new(-k_max, k_max, nk)?;
        let mut xi = Vec::with_capacity(nk);
        for i in 0..nk {
            xi.push(self.characteristic(kgrid.point(i), mus, nus)?);
        }
        let back = scaled_fourier_cross(&xi, &kgrid, &out, 1.0);
        Ok((
            out,
            back.iter()
                .map(|v| (v.re / std::f64::consts::TAU).max(0.0))
                .collect(),
        ))
    }

    pub fn evaluate(&self, x: f64, mus: &[f64], nus: &[f64]) -> Result<f64> {
        let (grid, row) = self.row(mus, nus)?;
        Ok(interp_cubic(&row, &grid, x).max(0.0))
    }

    /// Center-of-mass tomogram of the leading `keep` modes: the trailing
    /// direction components are pinned to zero, where their delta factors
    /// integrate out.
    pub fn marginal(&self, keep: usize) -> Result<CenterOfMassTomogram> {
        let n = self.mode_count();
        if keep == 0 || keep >= n {
            return Err(Error::OutOfRange(format!(
                "marginal must keep 1..{n} modes, asked for {keep}"
            )));
        }
        Ok(CenterOfMassTomogram {
            tomos: self.tomos.clone(),
            zero_tail: self.zero_tail + (n - keep),
        })
    }

    /// Central-difference residual of the Euler form of the center-of-mass
    /// homogeneity, (X d/dX + mu.d/dmu + nu.d/dnu + 1) M = 0.
    pub fn euler_residual(&self, x: f64, mus: &[f64], nus: &[f64], h: f64) -> Result<f64> {
        let base = self.evaluate(x, mus, nus)?;
        let dx = (self.evaluate(x + h, mus, nus)? - self.evaluate(x - h, mus, nus)?) / (2.0 * h);
        let mut acc = x * dx + base;
        let mut mp = mus.to_vec();
        for k in 0..mus.len() {
            mp[k] = mus[k] + h;
            let up = self.evaluate(x, &mp, nus)?;
            mp[k] = mus[k] - h;
            let dn = self.evaluate(x, &mp, nus)?;
            mp[k] = mus[k];
            acc += mus[k] * (up - dn) / (2.0 * h);
        }
        let mut np = nus.to_vec();
        for k in 0..nus.len() {
            np[k] = nus[k] + h;
            let up = self.evaluate(x, mus, &np)?;
            np[k] = nus[k] - h;
            let dn = self.evaluate(x, mus, &np)?;
            np[k] = nus[k];
            acc += nus[k] * (up - dn) / (2.0 * h);
        }
        Ok(acc)
    }
}

/// Per-mode inverse Radon transforms of a classical product state.
pub fn reconstruct_classical_modes(state: &MultimodeState) -> Result<Vec<PhaseSpaceMap>> {
    if state.kind() != MultimodeKind::Classical {
        return Err(Error::InvalidState(
            "classical reconstruction needs a classical product state".into(),
        ));
    }
    (0..state.mode_count())
        .map(|k| reconstruct_phase_space(&state.mode_tomogram(k)))
        .collect()
}

/// Per-mode density-matrix reconstructions of a declared quantum product
/// state.
pub fn reconstruct_quantum_product(state: &MultimodeState, cutoff: usize) -> Result<Vec<CMatrix>> {
    if state.kind() == MultimodeKind::Classical {
        return Err(Error::InvalidState(
            "quantum product reconstruction needs a quantum product state".into(),
        ));
    }
    if state.mode_count() > 2 {
        return Err(Error::OutOfRange(
            "quantum reconstruction supports at most two modes".into(),
        ));
    }
    (0..state.mode_count())
        .map(|k| reconstruct_density_matrix(&state.mode_tomogram(k), cutoff))
        .collect()
}

/// Classical phase-space values at sample points from the center-of-mass
/// characteristic: f(q, p) is the 2N-dimensional Fourier transform of
/// chi(mu, nu) = xi_cm(1, mu, nu), quadratured over a [-7, 7]^(2N) window.
/// Desk scale limits this to N = 2.
pub fn reconstruct_from_center_of_mass(
    cm: &CenterOfMassTomogram,
    points: &[[f64; 4]],
) -> Result<Vec<f64>> {
    if cm.mode_count() != 2 {
        return Err(Error::OutOfRange(
            "center-of-mass reconstruction implemented for two modes".into(),
        ));
    }
    let grid = Grid1D::new(-7.0, 7.0, 20)?;
    let n = grid.count();
    // per-mode characteristic tables chi_k(mu, nu)
    let mut tables = Vec::new();
    for mode in 0..2 {
        let mut table = vec![Complex64::ZERO; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] =
                    cm.tomos[mode].weyl_characteristic(1.0, grid.point(a), grid.point(b))?;
            }
        }
        tables.push(table);
    }
    let cell = grid.spacing().powi(4) / (std::f64::consts::TAU).powi(4);
    let out = points
        .iter()
        .map(|&[q1, p1, q2, p2]| {
            let mut acc = Complex64::ZERO;
            for a1 in 0..n {
                let mu1 = grid.point(a1);
                for b1 in 0..n {
                    let nu1 = grid.point(b1);
                    let chi1 = tables[0][a1 * n + b1];
                    if chi1.norm_sqr() < 1e-30 {
                        continue;
                    }
                    let phase1 = Complex64::new(0.0, -(mu1 * q1 + nu1 * p1)).exp();
                    let lead = chi1 * phase1;
                    for a2 in 0..n {
                        let mu2 = grid.point(a2);
                        for b2 in 0..n {
                            let nu2 = grid.point(b2);
                            let chi2 = tables[1][a2 * n + b2];
                            acc += lead * chi2 * Complex64::new(0.0, -(mu2 * q2 + nu2 * p2)).exp();
                        }
                    }
                }
            }
            (acc * cell).re
        })
        .collect();
    Ok(out)
}

/// Entry of the multimode entropic uncertainty report.
#[derive(Debug, Clone, Copy)]
pub struct MultimodeEntropyReport {
    pub position_entropy: f64,
    pub momentum_entropy: f64,
    /// S_x + S_p - N ln(pi e); nonnegative for quantum states.
    pub residual: f64,
}

/// Checks S_x + S_p >= N ln(pi e) on a pure product state; entropies of a
/// factorized density add mode by mode.
pub fn multimode_entropy_check(state: &MultimodeState) -> Result<MultimodeEntropyReport> {
    if state.kind() != MultimodeKind::ProductPure {
        return Err(Error::InvalidState(
            "entropy check needs a pure product state".into(),
        ));
    }
    let n = state.mode_count();
    let mut sx = 0.0;
    let mut sp = 0.0;
    for k in 0..n {
        let psi = state.pure_mode(k).expect("pure product");
        let (x, p) = position_momentum_entropies(psi)?;
        sx += x;
        sp += p;
    }
    Ok(MultimodeEntropyReport {
        position_entropy: sx,
        momentum_entropy: sp,
        residual: sx + sp - n as f64 * LN_PI_E,
    })
}

pub fn classical_mode_density(state: &MultimodeState, k: usize) -> Option<&PhaseSpaceDensity> {
    state.classical_mode(k)
}
