//! Symplectic and optical tomograms.
//!
//! A symplectic tomogram M(X, mu, nu) is the probability density of the
//! rotated-scaled quadrature X = mu q + nu p. It is homogeneous of degree -1
//! in (X, mu, nu), so every evaluation is reduced to the unit circle:
//! M(X, mu, nu) = w(X/r, phi) / r with r = |(mu, nu)| and phi = atan2(nu, mu).
//!
//! Backends:
//!  - pure states evaluate the squared chirp transform of the wavefunction;
//!  - Fock density matrices decompose spectrally into pure tomograms;
//!  - classical densities and Wigner functions push the 2-D grid forward
//!    through a mass-conserving histogram whose binning kernel is
//!    deconvolved in Fourier space;
//!  - sampled optical tomograms interpolate their stored rows;
//!  - closure backends evaluate a user-supplied function (test fixtures).

use std::io::{BufRead, Write};
use std::path::Path;
use std::sync::{Arc, OnceLock};

use num_complex::Complex64;

use crate::displacement::{weyl_characteristic_fock, weyl_characteristic_pure};
use crate::error::{Error, Result};
use crate::fourier::{oscillator_small_step, scaled_fourier_cross, unitary_fourier_row, CrossCzt};
use crate::frft::{chirp_step_point, split_angle};
use crate::grid::{interp_cubic, Grid1D};
use crate::linalg::CMatrix;
use crate::report::fmt_g;
use crate::states::{
    DensityMatrix, PhaseSpaceDensity, WaveFunction, WignerFunction, PROJECTION_CUTOFF,
};

pub const UNDEFINED_DIRECTION_EPS: f64 = 1e-6;

fn direction(mu: f64, nu: f64) -> Result<(f64, f64)> {
    if mu.abs() < UNDEFINED_DIRECTION_EPS && nu.abs() < UNDEFINED_DIRECTION_EPS {
        return Err(Error::UndefinedDirection { mu, nu });
    }
    Ok((mu.hypot(nu), nu.atan2(mu)))
}

/// Pure-state amplitude evaluator: psi(x, phi), the fractional Fourier
/// transform of psi at angle phi, per point or per row. Quarter turns of the
/// state are cached so an arbitrary angle costs one chirp step.
pub(crate) struct AmplitudeEvaluator {
    grid: Grid1D,
    samples: Arc<Vec<Complex64>>,
    bases: [OnceLock<Arc<Vec<Complex64>>>; 4],
    fock: OnceLock<Arc<Vec<Complex64>>>,
}

impl AmplitudeEvaluator {
    pub(crate) fn new(psi: &WaveFunction) -> Self {
        let samples = Arc::new(psi.samples().to_vec());
        let ev = AmplitudeEvaluator {
            grid: *psi.grid(),
            samples: samples.clone(),
            bases: Default::default(),
            fock: OnceLock::new(),
        };
        ev.bases[0].set(samples).ok();
        ev
    }

    fn base(&self, turns: usize) -> Arc<Vec<Complex64>> {
        self.bases[turns % 4]
            .get_or_init(|| {
                let v: Vec<Complex64> = match turns % 4 {
                    1 => unitary_fourier_row(&self.samples, &self.grid),
                    2 => self.samples.iter().rev().copied().collect(),
                    3 => {
                        let mut f = unitary_fourier_row(&self.samples, &self.grid);
                        f.reverse();
                        f
                    }
                    _ => self.samples.as_ref().clone(),
                };
                Arc::new(v)
            })
            .clone()
    }

    pub(crate) fn fock_coefficients(&self) -> Arc<Vec<Complex64>> {
        self.fock
            .get_or_init(|| {
                let wf = WaveFunction::new_unchecked(self.grid, self.samples.as_ref().clone());
                Arc::new(wf.fock_coefficients(PROJECTION_CUTOFF))
            })
            .clone()
    }

    fn degenerate_row(&self, parities: usize, eps: f64) -> Vec<Complex64> {
        let mut row = self.samples.as_ref().clone();
        if parities % 2 == 1 {
            row.reverse();
        }
        if eps != 0.0 {
            oscillator_small_step(&mut row, &self.grid, eps);
        }
        row
    }

    pub(crate) fn amplitude_row(&self, phi: f64) -> Vec<Complex64> {
        let split = split_angle(phi);
        if let Some((parities, eps)) = split.parity_then_eps {
            let mut row = self.degenerate_row(parities, eps);
            for v in row.iter_mut() {
                *v *= split.phase;
            }
            return row;
        }
        let base = self.base(split.fourier_turns);
        let t = split.step.expect("non-degenerate");
        let s = t.sin();
        let cot = t.cos() / s;
        let chirped: Vec<Complex64> = base
            .iter()
            .enumerate()
            .map(|(j, &v)| {
                let y = self.grid.point(j);
                v * Complex64::new(0.0, 0.5 * cot * y * y).exp()
            })
            .collect();
        let mut out = scaled_fourier_cross(&chirped, &self.grid, &self.grid, 1.0 / s);
        let pre = split.phase
            * Complex64::new(0.0, -0.5 * t).exp()
            * (Complex64::new(1.0, -cot) / std::f64::consts::TAU).sqrt();
        for (k, v) in out.iter_mut().enumerate() {
            let x = self.grid.point(k);
            *v *= pre * Complex64::new(0.0, 0.5 * cot * x * x).exp();
        }
        out
    }

    pub(crate) fn grid(&self) -> &Grid1D {
        &self.grid
    }

    pub(crate) fn amplitude(&self, phi: f64, x: f64) -> Complex64 {
        let split = split_angle(phi);
        if let Some((parities, eps)) = split.parity_then_eps {
            let row = self.degenerate_row(parities, eps);
            let re: Vec<f64> = row.iter().map(|v| v.re).collect();
            let im: Vec<f64> = row.iter().map(|v| v.im).collect();
            return Complex64::new(
                interp_cubic(&re, &self.grid, x),
                interp_cubic(&im, &self.grid, x),
            ) * split.phase;
        }
        let base = self.base(split.fourier_turns);
        chirp_step_point(&base, &self.grid, split.step.expect("non-degenerate"), x) * split.phase
    }
}

/// Means and covariance of a gridded 2-D density; sets the decay scale of
/// its characteristic function along each direction.
#[derive(Debug, Clone, Copy)]
struct GridMoments {
    s_qq: f64,
    s_qp: f64,
    s_pp: f64,
}

enum Backend {
    Wave(AmplitudeEvaluator),
    Density {
        rho: CMatrix,
        components: OnceLock<Vec<(f64, AmplitudeEvaluator)>>,
    },
    Grid2D {
        qgrid: Grid1D,
        pgrid: Grid1D,
        values: Vec<f64>,
        scale: f64,
        moments: OnceLock<GridMoments>,
    },
    Optical(OpticalTomogram),
    Custom(Box<dyn Fn(f64, f64, f64) -> f64 + Send + Sync>),
}

impl Backend {
    fn grid2d(qgrid: Grid1D, pgrid: Grid1D, values: Vec<f64>, scale: f64) -> Backend {
        Backend::Grid2D {
            qgrid,
            pgrid,
            values,
            scale,
            moments: OnceLock::new(),
        }
    }
}

/// Evaluator of the symplectic tomogram M(X, mu, nu); cheap to clone and
/// safe to share across threads.
#[derive(Clone)]
pub struct SymplecticTomogram {
    backend: Arc<Backend>,
    base_grid: Grid1D,
}

impl SymplecticTomogram {
    pub fn from_wavefunction(psi: &WaveFunction) -> Self {
        SymplecticTomogram {
            base_grid: *psi.grid(),
            backend: Arc::new(Backend::Wave(AmplitudeEvaluator::new(psi))),
        }
    }

    pub fn from_density_matrix(rho: &DensityMatrix) -> Self {
        SymplecticTomogram {
            base_grid: Grid1D::default_position(),
            backend: Arc::new(Backend::Density {
                rho: rho.entries().clone(),
                components: OnceLock::new(),
            }),
        }
    }

    pub fn from_classical(f: &PhaseSpaceDensity) -> Self {
        SymplecticTomogram {
            base_grid: Grid1D::default_position(),
            backend: Arc::new(Backend::grid2d(
                *f.qgrid(),
                *f.pgrid(),
                f.values().to_vec(),
                1.0,
            )),
        }
    }

    pub fn from_wigner(w: &WignerFunction) -> Self {
        SymplecticTomogram {
            base_grid: Grid1D::default_position(),
            backend: Arc::new(Backend::grid2d(
                *w.qgrid(),
                *w.pgrid(),
                w.values().to_vec(),
                1.0 / std::f64::consts::TAU,
            )),
        }
    }

    pub fn from_optical(w: OpticalTomogram) -> Self {
        SymplecticTomogram {
            base_grid: *w.xgrid(),
            backend: Arc::new(Backend::Optical(w)),
        }
    }

    pub fn from_fn<F>(f: F) -> Self
    where
        F: Fn(f64, f64, f64) -> f64 + Send + Sync + 'static,
    {
        SymplecticTomogram {
            base_grid: Grid1D::default_position(),
            backend: Arc::new(Backend::Custom(Box::new(f))),
        }
    }

    pub fn base_grid(&self) -> &Grid1D {
        &self.base_grid
    }

    fn density_components(&self) -> &Vec<(f64, AmplitudeEvaluator)> {
        match self.backend.as_ref() {
            Backend::Density { rho, components } => components.get_or_init(|| {
                let dm = DensityMatrix::new(rho.clone()).expect("validated on construction");
                dm.pure_components(&self.base_grid)
                    .into_iter()
                    .map(|(w, psi)| (w, AmplitudeEvaluator::new(&psi)))
                    .collect()
            }),
            _ => unreachable!("density components on non-density backend"),
        }
    }

    /// Probability density at a single point.
    pub fn evaluate(&self, x: f64, mu: f64, nu: f64) -> Result<f64> {
        let (r, phi) = direction(mu, nu)?;
        let value = match self.backend.as_ref() {
            Backend::Wave(ev) => ev.amplitude(phi, x / r).norm_sqr() / r,
            Backend::Density { .. } => {
                self.density_components()
                    .iter()
                    .map(|(w, ev)| w * ev.amplitude(phi, x / r).norm_sqr())
                    .sum::<f64>()
                    / r
            }
            Backend::Grid2D { .. } => {
                let (grid, row) = self.direction_row(mu, nu)?;
                interp_cubic(&row, &grid, x).max(0.0)
            }
            Backend::Optical(w) => symplectic_from_optical(w, x, mu, nu)?,
            Backend::Custom(f) => f(x, mu, nu),
        };
        Ok(value)
    }

    /// Density sampled along X for a fixed direction, on the base grid
    /// scaled by r = |(mu, nu)| so that normalization is preserved.
    pub fn direction_row(&self, mu: f64, nu: f64) -> Result<(Grid1D, Vec<f64>)> {
        let (r, phi) = direction(mu, nu)?;
        let xgrid = self.base_grid.scaled(r);
        let row = match self.backend.as_ref() {
            Backend::Wave(ev) => ev
                .amplitude_row(phi)
                .iter()
                .map(|a| a.norm_sqr() / r)
                .collect(),
            Backend::Density { .. } => {
                let comps = self.density_components();
                let mut acc = vec![0.0; self.base_grid.count()];
                for (w, ev) in comps {
                    for (dst, a) in acc.iter_mut().zip(ev.amplitude_row(phi).iter()) {
                        *dst += w * a.norm_sqr();
                    }
                }
                for v in acc.iter_mut() {
                    *v /= r;
                }
                acc
            }
            Backend::Grid2D { .. } => self.grid2d_row(mu, nu, &xgrid),
            Backend::Optical(w) => xgrid
                .points()
                .iter()
                .map(|&x| symplectic_from_optical(w, x, mu, nu))
                .collect::<Result<Vec<f64>>>()?,
            Backend::Custom(f) => xgrid.points().iter().map(|&x| f(x, mu, nu)).collect(),
        };
        Ok((xgrid, row))
    }

    /// Weyl characteristic value xi(k, mu, nu) = <exp(i k (mu q + nu p))>,
    /// through the fastest exact route the backend admits.
    pub fn weyl_characteristic(&self, k: f64, mu: f64, nu: f64) -> Result<Complex64> {
        match self.backend.as_ref() {
            Backend::Wave(ev) => {
                let c = ev.fock_coefficients();
                let captured: f64 = c.iter().map(|v| v.norm_sqr()).sum();
                if (captured - 1.0).abs() < 1e-8 {
                    Ok(weyl_characteristic_pure(&c, &c, k, mu, nu))
                } else {
                    self.xi_quadrature(k, mu, nu)
                }
            }
            Backend::Density { rho, .. } => Ok(weyl_characteristic_fock(rho, k, mu, nu)),
            Backend::Grid2D {
                qgrid,
                pgrid,
                values,
                scale,
                ..
            } => {
                let np = pgrid.count();
                let step = Complex64::new(0.0, k * nu * pgrid.spacing()).exp();
                let rot0 = Complex64::new(0.0, k * nu * pgrid.point(0)).exp();
                let mut acc = Complex64::ZERO;
                for iq in 0..qgrid.count() {
                    let mut rot = rot0;
                    let mut inner = Complex64::ZERO;
                    for ip in 0..np {
                        inner += values[iq * np + ip] * rot;
                        rot *= step;
                    }
                    acc += inner * Complex64::new(0.0, k * mu * qgrid.point(iq)).exp();
                }
                Ok(acc * *scale * qgrid.spacing() * pgrid.spacing())
            }
            _ => self.xi_quadrature(k, mu, nu),
        }
    }

    /// xi(k, mu, nu) by direct X-quadrature of the tomogram row. Closure
    /// and optical backends are sampled on a decimated row (the densities
    /// are smooth, so 384 points already give spectral accuracy).
    pub fn xi_quadrature(&self, k: f64, mu: f64, nu: f64) -> Result<Complex64> {
        let (grid, row): (Grid1D, Vec<f64>) = match self.backend.as_ref() {
            Backend::Custom(f) => {
                let (r, _) = direction(mu, nu)?;
                let scaled = self.base_grid.scaled(r);
                let grid = Grid1D::new(scaled.lower(), scaled.upper(), scaled.count().min(384))?;
                let row = grid.points().iter().map(|&x| f(x, mu, nu)).collect();
                (grid, row)
            }
            Backend::Optical(w) => {
                let (r, _) = direction(mu, nu)?;
                let scaled = self.base_grid.scaled(r);
                let grid = Grid1D::new(scaled.lower(), scaled.upper(), scaled.count().min(384))?;
                let row = grid
                    .points()
                    .iter()
                    .map(|&x| symplectic_from_optical(w, x, mu, nu))
                    .collect::<Result<Vec<f64>>>()?;
                (grid, row)
            }
            _ => self.direction_row(mu, nu)?,
        };
        let dx = grid.spacing();
        Ok(row
            .iter()
            .enumerate()
            .map(|(i, &v)| v * Complex64::new(0.0, k * grid.point(i)).exp())
            .sum::<Complex64>()
            * dx)
    }

    /// xi(1, mu, nu) sampled on a product (mu, nu) grid, row-major in mu;
    /// the workhorse of the inverse transforms.
    pub fn weyl_characteristic_grid(
        &self,
        mu_grid: &Grid1D,
        nu_grid: &Grid1D,
    ) -> Result<Vec<Complex64>> {
        match self.backend.as_ref() {
            Backend::Grid2D {
                qgrid,
                pgrid,
                values,
                scale,
                ..
            } => {
                // two 1-D chirp passes: p -> nu inside each q-row, then q -> mu
                let nq = qgrid.count();
                let np = pgrid.count();
                let nnu = nu_grid.count();
                let nmu = mu_grid.count();
                let mut inner = vec![Complex64::ZERO; nq * nnu];
                for iq in 0..nq {
                    let rowc: Vec<Complex64> = values[iq * np..(iq + 1) * np]
                        .iter()
                        .map(|&v| Complex64::new(v * scale, 0.0))
                        .collect();
                    let t = scaled_fourier_cross(&rowc, pgrid, nu_grid, -1.0);
                    inner[iq * nnu..(iq + 1) * nnu].copy_from_slice(&t);
                }
                let mut out = vec![Complex64::ZERO; nmu * nnu];
                let mut col = vec![Complex64::ZERO; nq];
                for b in 0..nnu {
                    for iq in 0..nq {
                        col[iq] = inner[iq * nnu + b];
                    }
                    let t = scaled_fourier_cross(&col, qgrid, mu_grid, -1.0);
                    for (a, v) in t.iter().enumerate() {
                        out[a * nnu + b] = *v;
                    }
                }
                Ok(out)
            }
            _ => {
                let mut out = Vec::with_capacity(mu_grid.count() * nu_grid.count());
                for a in 0..mu_grid.count() {
                    for b in 0..nu_grid.count() {
                        out.push(self.weyl_characteristic(
                            1.0,
                            mu_grid.point(a),
                            nu_grid.point(b),
                        )?);
                    }
                }
                Ok(out)
            }
        }
    }

    /// Optical tomogram: one normalized X-row per angle.
    pub fn optical(&self, thetagrid: Grid1D) -> Result<OpticalTomogram> {
        let mut rows = Vec::with_capacity(thetagrid.count());
        for i in 0..thetagrid.count() {
            let theta = thetagrid.point(i);
            let (_, row) = self.direction_row(theta.cos(), theta.sin())?;
            rows.push(row);
        }
        OpticalTomogram::new(self.base_grid, thetagrid, rows)
    }

    /// Raw moment of the position (mu, nu) = (1, 0) or momentum (0, 1)
    /// distribution.
    pub fn moment(&self, n: u32, which: Quadrature) -> Result<f64> {
        if n > 4 {
            return Err(Error::OutOfRange(format!("moment order {n} above 4")));
        }
        let (mu, nu) = match which {
            Quadrature::Position => (1.0, 0.0),
            Quadrature::Momentum => (0.0, 1.0),
        };
        let (grid, row) = self.direction_row(mu, nu)?;
        Ok(row
            .iter()
            .enumerate()
            .map(|(i, &v)| grid.point(i).powi(n as i32) * v)
            .sum::<f64>()
            * grid.spacing())
    }

    pub fn shifted(&self) -> ShiftedTomogram {
        ShiftedTomogram { tomo: self.clone() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quadrature {
    Position,
    Momentum,
}

impl SymplecticTomogram {
    fn grid_moments(&self) -> GridMoments {
        match self.backend.as_ref() {
            Backend::Grid2D {
                qgrid,
                pgrid,
                values,
                scale,
                moments,
            } => *moments.get_or_init(|| {
                let np = pgrid.count();
                let cell = qgrid.spacing() * pgrid.spacing() * scale;
                let (mut m0, mut mq, mut mp, mut mqq, mut mqp, mut mpp) =
                    (0.0, 0.0, 0.0, 0.0, 0.0, 0.0);
                for iq in 0..qgrid.count() {
                    let q = qgrid.point(iq);
                    for ip in 0..np {
                        let v = values[iq * np + ip] * cell;
                        let p = pgrid.point(ip);
                        m0 += v;
                        mq += v * q;
                        mp += v * p;
                        mqq += v * q * q;
                        mqp += v * q * p;
                        mpp += v * p * p;
                    }
                }
                let (mq, mp) = (mq / m0, mp / m0);
                GridMoments {
                    s_qq: (mqq / m0 - mq * mq).max(1e-6),
                    s_qp: mqp / m0 - mq * mp,
                    s_pp: (mpp / m0 - mp * mp).max(1e-6),
                }
            }),
            _ => unreachable!("grid moments on non-grid backend"),
        }
    }

    /// Exact pushforward of a gridded 2-D density onto the line
    /// X = mu q + nu p: the direction's 1-D characteristic function is
    /// assembled from per-row chirp transforms of the grid and inverted
    /// onto the output grid. No interpolation or binning is involved.
    fn grid2d_row(&self, mu: f64, nu: f64, out: &Grid1D) -> Vec<f64> {
        let (qgrid, pgrid, values, scale) = match self.backend.as_ref() {
            Backend::Grid2D {
                qgrid,
                pgrid,
                values,
                scale,
                ..
            } => (qgrid, pgrid, values, *scale),
            _ => unreachable!(),
        };
        let m = self.grid_moments();
        let var_dir = (mu * mu * m.s_qq + 2.0 * mu * nu * m.s_qp + nu * nu * m.s_pp).max(1e-12);
        // |xi(k)| ~ exp(-var k^2 / 2) for near-Gaussian rows; 12 sigma covers
        // the desk-scale fixtures with a wide margin.
        let k_max = 12.0 / var_dir.sqrt();
        let x_half = out.lower().abs().max(out.upper().abs()).max(1e-6);
        let dk = std::f64::consts::PI / (x_half * 1.15);
        let nk = (((2.0 * k_max / dk).ceil() as usize) + 1).clamp(64, 8192);
        let kgrid = Grid1D::new(-k_max, k_max, nk).expect("k window");

        // xi(k) = sum_iq e^{i k mu q} * [sum_ip f e^{i k nu p} dp] dq * scale
        let np = pgrid.count();
        let inner_plan = CrossCzt::new(pgrid, &kgrid, -nu);
        let mut xi = vec![Complex64::ZERO; nk];
        let mut rowc = vec![Complex64::ZERO; np];
        for iq in 0..qgrid.count() {
            for (dst, &v) in rowc.iter_mut().zip(&values[iq * np..(iq + 1) * np]) {
                *dst = Complex64::new(v, 0.0);
            }
            let inner = inner_plan.apply(&rowc);
            let q = qgrid.point(iq);
            let step = Complex64::new(0.0, kgrid.spacing() * mu * q).exp();
            let mut rot = Complex64::new(0.0, kgrid.point(0) * mu * q).exp();
            for (acc, t) in xi.iter_mut().zip(inner.iter()) {
                *acc += t * rot;
                rot *= step;
            }
        }
        let cell = qgrid.spacing() * scale;
        for v in xi.iter_mut() {
            *v *= cell;
        }
        // invert: M(X) = (1/2 pi) sum_k xi(k) e^{-i k X} dk
        let back = scaled_fourier_cross(&xi, &kgrid, out, 1.0);
        back.iter()
            .map(|v| (v.re / std::f64::consts::TAU).max(0.0))
            .collect()
    }
}

/// Matrix of probability densities w(X, theta) on an X x theta grid; the
/// homodyne-data carrier.
#[derive(Debug, Clone)]
pub struct OpticalTomogram {
    xgrid: Grid1D,
    thetagrid: Grid1D,
    /// rows[itheta][ix]
    rows: Vec<Vec<f64>>,
}

impl OpticalTomogram {
    pub fn new(xgrid: Grid1D, thetagrid: Grid1D, mut rows: Vec<Vec<f64>>) -> Result<Self> {
        if rows.len() != thetagrid.count() || rows.iter().any(|r| r.len() != xgrid.count()) {
            return Err(Error::GridMismatch("optical tomogram shape".into()));
        }
        for row in rows.iter_mut() {
            for v in row.iter_mut() {
                if *v < 0.0 {
                    if *v < -1e-8 {
                        return Err(Error::InvalidState(format!("negative density {v}")));
                    }
                    *v = 0.0;
                }
            }
            let mass: f64 = row.iter().sum::<f64>() * xgrid.spacing();
            if (mass - 1.0).abs() > 1e-4 {
                return Err(Error::InvalidState(format!(
                    "optical row integrates to {mass}, not 1"
                )));
            }
        }
        Ok(OpticalTomogram {
            xgrid,
            thetagrid,
            rows,
        })
    }

    pub fn xgrid(&self) -> &Grid1D {
        &self.xgrid
    }

    pub fn thetagrid(&self) -> &Grid1D {
        &self.thetagrid
    }

    pub fn row(&self, itheta: usize) -> &[f64] {
        &self.rows[itheta]
    }

    /// Interpolation on the stored grid: cubic along X, linear and
    /// periodic along theta, clamped at zero.
    pub fn interp(&self, x: f64, theta: f64) -> f64 {
        let nt = self.thetagrid.count();
        let span = self.thetagrid.upper() - self.thetagrid.lower();
        let t = (theta - self.thetagrid.lower()).rem_euclid(span) / self.thetagrid.spacing() - 0.5;
        let fl = t.floor();
        let ft = t - fl;
        let i0 = fl as isize;
        let ia = i0.rem_euclid(nt as isize) as usize;
        let ib = (i0 + 1).rem_euclid(nt as isize) as usize;
        let va = interp_cubic(&self.rows[ia], &self.xgrid, x);
        let vb = interp_cubic(&self.rows[ib], &self.xgrid, x);
        (va * (1.0 - ft) + vb * ft).max(0.0)
    }

    /// Serialize in the `tomokit optical v1` format: a header line followed
    /// by `theta,X,w` rows in row-major theta-then-X order.
    pub fn to_csv_string(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "#tomokit optical v1 nx={} ntheta={} xmin={} xmax={}\n",
            self.xgrid.count(),
            self.thetagrid.count(),
            fmt_g(self.xgrid.lower()),
            fmt_g(self.xgrid.upper()),
        ));
        for (it, row) in self.rows.iter().enumerate() {
            let theta = self.thetagrid.point(it);
            for (ix, &w) in row.iter().enumerate() {
                out.push_str(&format!(
                    "{},{},{}\n",
                    fmt_g(theta),
                    fmt_g(self.xgrid.point(ix)),
                    fmt_g(w)
                ));
            }
        }
        out
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let mut file = std::fs::File::create(path)?;
        file.write_all(self.to_csv_string().as_bytes())?;
        Ok(())
    }

    pub fn from_csv_reader<R: BufRead>(reader: R) -> Result<Self> {
        let mut lines = reader.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty optical tomogram file".into()))??;
        let header = header
            .strip_prefix("#tomokit optical v1")
            .ok_or_else(|| Error::Parse("missing '#tomokit optical v1' header".into()))?;
        let mut nx = None;
        let mut ntheta = None;
        let mut xmin = None;
        let mut xmax = None;
        for tok in header.split_whitespace() {
            let (key, val) = tok
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("bad header token '{tok}'")))?;
            match key {
                "nx" => {
                    nx = Some(
                        val.parse::<usize>()
                            .map_err(|e| Error::Parse(e.to_string()))?,
                    )
                }
                "ntheta" => {
                    ntheta = Some(
                        val.parse::<usize>()
                            .map_err(|e| Error::Parse(e.to_string()))?,
                    )
                }
                "xmin" => {
                    xmin = Some(
                        val.parse::<f64>()
                            .map_err(|e| Error::Parse(e.to_string()))?,
                    )
                }
                "xmax" => {
                    xmax = Some(
                        val.parse::<f64>()
                            .map_err(|e| Error::Parse(e.to_string()))?,
                    )
                }
                _ => return Err(Error::Parse(format!("unknown header key '{key}'"))),
            }
        }
        let (nx, ntheta, xmin, xmax) = match (nx, ntheta, xmin, xmax) {
            (Some(a), Some(b), Some(c), Some(d)) => (a, b, c, d),
            _ => return Err(Error::Parse("incomplete optical tomogram header".into())),
        };
        let xgrid = Grid1D::new(xmin, xmax, nx)?;
        let thetagrid = Grid1D::new(0.0, std::f64::consts::TAU, ntheta)?;
        let mut rows = vec![vec![0.0; nx]; ntheta];
        let mut seen = 0usize;
        let parse_f =
            |s: &str| -> Result<f64> { s.parse::<f64>().map_err(|e| Error::Parse(e.to_string())) };
        for line in lines {
            let line = line?;
            let trimmed = line.trim();
            if trimmed.is_empty() {
                continue;
            }
            let mut parts = trimmed.split(',').map(str::trim);
            let theta = parse_f(
                parts
                    .next()
                    .ok_or_else(|| Error::Parse("short row".into()))?,
            )?;
            let x = parse_f(
                parts
                    .next()
                    .ok_or_else(|| Error::Parse("short row".into()))?,
            )?;
            let w = parse_f(
                parts
                    .next()
                    .ok_or_else(|| Error::Parse("short row".into()))?,
            )?;
            let it = seen / nx;
            let ix = seen % nx;
            if it >= ntheta {
                return Err(Error::Parse("more rows than nx * ntheta".into()));
            }
            if (theta - thetagrid.point(it)).abs() > 1e-6 || (x - xgrid.point(ix)).abs() > 1e-6 {
                return Err(Error::Parse(format!(
                    "row {seen} out of row-major theta-then-X order"
                )));
            }
            rows[it][ix] = w;
            seen += 1;
        }
        if seen != nx * ntheta {
            return Err(Error::Parse(format!(
                "expected {} rows, found {seen}",
                nx * ntheta
            )));
        }
        OpticalTomogram::new(xgrid, thetagrid, rows)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let file = std::fs::File::open(path)?;
        Self::from_csv_reader(std::io::BufReader::new(file))
    }
}

/// Symplectic tomogram value from stored optical data:
/// `M(X, mu, nu) = w(X/r, atan2(nu, mu)) / r` with bilinear interpolation.
pub fn symplectic_from_optical(w: &OpticalTomogram, x: f64, mu: f64, nu: f64) -> Result<f64> {
    let (r, phi) = direction(mu, nu)?;
    let xs = x / r;
    if !w.xgrid().contains(xs) {
        return Err(Error::EvaluationOutOfRange(format!(
            "X/r = {xs} outside [{}, {}]",
            w.xgrid().lower(),
            w.xgrid().upper()
        )));
    }
    Ok(w.interp(xs, phi.rem_euclid(std::f64::consts::TAU)) / r)
}

/// Tomogram shifted by a: w(X, mu, nu, a) = M(X - a, mu, nu).
pub struct ShiftedTomogram {
    tomo: SymplecticTomogram,
}

impl ShiftedTomogram {
    pub fn evaluate(&self, x: f64, mu: f64, nu: f64, a: f64) -> Result<f64> {
        self.tomo.evaluate(x - a, mu, nu)
    }

    /// Central-difference residual of the four-variable Euler relation
    /// (X d/dX + mu d/dmu + nu d/dnu + a d/da + 1) w = 0.
    pub fn euler_residual(&self, x: f64, mu: f64, nu: f64, a: f64, h: f64) -> Result<f64> {
        let w = self.evaluate(x, mu, nu, a)?;
        let dx = (self.evaluate(x + h, mu, nu, a)? - self.evaluate(x - h, mu, nu, a)?) / (2.0 * h);
        let dmu = (self.evaluate(x, mu + h, nu, a)? - self.evaluate(x, mu - h, nu, a)?) / (2.0 * h);
        let dnu = (self.evaluate(x, mu, nu + h, a)? - self.evaluate(x, mu, nu - h, a)?) / (2.0 * h);
        let da = (self.evaluate(x, mu, nu, a + h)? - self.evaluate(x, mu, nu, a - h)?) / (2.0 * h);
        Ok(x * dx + mu * dmu + nu * dnu + a * da + w)
    }
}

/// Per-direction axiom diagnostics.
#[derive(Debug, Clone)]
pub struct DirectionCheck {
    pub mu: f64,
    pub nu: f64,
    pub normalization_error: f64,
    pub min_value: f64,
}

#[derive(Debug, Clone)]
pub struct AxiomsReport {
    pub directions: Vec<DirectionCheck>,
    pub max_normalization_error: f64,
    pub min_sampled_value: f64,
    pub max_homogeneity_residual: f64,
    pub max_euler_residual: f64,
}

impl AxiomsReport {
    pub fn pass(&self) -> bool {
        self.max_normalization_error <= 1e-4
            && self.min_sampled_value >= -1e-10
            && self.max_homogeneity_residual <= 1e-4
            && self.max_euler_residual <= 1e-3
    }
}

/// Nonnegativity, normalization and homogeneity checks on the listed
/// directions and scalings, plus the differential (Euler) form of the
/// homogeneity at 8 seeded random points.
pub fn verify_tomogram_axioms(
    m: &SymplecticTomogram,
    directions: &[(f64, f64)],
    lambdas: &[f64],
    seed: u64,
) -> Result<AxiomsReport> {
    if directions.is_empty() {
        return Err(Error::OutOfRange("empty direction list".into()));
    }
    let mut checks = Vec::with_capacity(directions.len());
    let mut max_norm = 0.0f64;
    let mut min_val = f64::INFINITY;
    for &(mu, nu) in directions {
        let (grid, row) = m.direction_row(mu, nu)?;
        let mass: f64 = row.iter().sum::<f64>() * grid.spacing();
        let low = row.iter().copied().fold(f64::INFINITY, f64::min);
        max_norm = max_norm.max((mass - 1.0).abs());
        min_val = min_val.min(low);
        checks.push(DirectionCheck {
            mu,
            nu,
            normalization_error: (mass - 1.0).abs(),
            min_value: low,
        });
    }
    let probe_x = [0.15, -0.6, 1.3];
    let mut max_hom = 0.0f64;
    for &(mu, nu) in directions {
        for &l in lambdas {
            if l == 0.0 {
                continue;
            }
            for &x in &probe_x {
                let scaled = m.evaluate(l * x, l * mu, l * nu)?;
                let plain = m.evaluate(x, mu, nu)?;
                max_hom = max_hom.max((l.abs() * scaled - plain).abs());
            }
        }
    }
    use rand::Rng;
    let mut rng = crate::haar::seeded_rng(seed);
    let mut max_euler = 0.0f64;
    let h = 1e-4;
    for _ in 0..8 {
        let x: f64 = rng.random_range(-1.5..1.5);
        let phi: f64 = rng.random_range(0.0..std::f64::consts::TAU);
        let r: f64 = rng.random_range(0.8..1.3);
        let (mu, nu) = (r * phi.cos(), r * phi.sin());
        let w = m.evaluate(x, mu, nu)?;
        let dx = (m.evaluate(x + h, mu, nu)? - m.evaluate(x - h, mu, nu)?) / (2.0 * h);
        let dmu = (m.evaluate(x, mu + h, nu)? - m.evaluate(x, mu - h, nu)?) / (2.0 * h);
        let dnu = (m.evaluate(x, mu, nu + h)? - m.evaluate(x, mu, nu - h)?) / (2.0 * h);
        max_euler = max_euler.max((x * dx + mu * dmu + nu * dnu + w).abs());
    }
    Ok(AxiomsReport {
        directions: checks,
        max_normalization_error: max_norm,
        min_sampled_value: min_val,
        max_homogeneity_residual: max_hom,
        max_euler_residual: max_euler,
    })
}

/// Characteristic function xi(k, mu, nu) of a tomogram.
#[derive(Clone)]
pub struct CharacteristicFn {
    f: Arc<dyn Fn(f64, f64, f64) -> Complex64 + Send + Sync>,
}

impl CharacteristicFn {
    pub fn from_fn<F>(f: F) -> Self
    where
        F: Fn(f64, f64, f64) -> Complex64 + Send + Sync + 'static,
    {
        CharacteristicFn { f: Arc::new(f) }
    }

    pub fn evaluate(&self, k: f64, mu: f64, nu: f64) -> Complex64 {
        (self.f)(k, mu, nu)
    }
}

/// xi(k, mu, nu) = integral exp(i k X) M(X, mu, nu) dX by row quadrature.
pub fn characteristic_function(m: &SymplecticTomogram) -> CharacteristicFn {
    let tomo = m.clone();
    CharacteristicFn::from_fn(move |k, mu, nu| {
        tomo.xi_quadrature(k, mu, nu)
            .unwrap_or(Complex64::new(f64::NAN, 0.0))
    })
}

/// Inverse of the characteristic function along one direction:
/// `M(X, mu, nu) = (1/2 pi) integral xi(k, mu, nu) exp(-i k X) dk`,
/// integrated over the window |k| <= 40.
pub fn tomogram_from_characteristic(
    xi: &CharacteristicFn,
    mu: f64,
    nu: f64,
    xgrid: &Grid1D,
) -> Result<Vec<f64>> {
    const K_MAX: f64 = 40.0;
    let edge = xi
        .evaluate(K_MAX, mu, nu)
        .norm()
        .max(xi.evaluate(-K_MAX, mu, nu).norm());
    if edge > 1e-6 {
        return Err(Error::NonDecaying(format!(
            "|xi| = {edge:.3e} at the k-window edge"
        )));
    }
    let x_max = xgrid.lower().abs().max(xgrid.upper().abs()).max(1.0);
    let count = ((2.0 * K_MAX * x_max * 1.25 / std::f64::consts::PI).ceil() as usize).max(512);
    let kgrid = Grid1D::new(-K_MAX, K_MAX, count)?;
    let dk = kgrid.spacing();
    let samples: Vec<Complex64> = (0..count)
        .map(|i| xi.evaluate(kgrid.point(i), mu, nu))
        .collect();
    Ok(xgrid
        .points()
        .iter()
        .map(|&x| {
            let acc: Complex64 = samples
                .iter()
                .enumerate()
                .map(|(i, &v)| v * Complex64::new(0.0, -kgrid.point(i) * x).exp())
                .sum();
            (acc * dk).re / std::f64::consts::TAU
        })
        .collect())
}
