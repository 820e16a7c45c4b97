//! Unitary spin tomograms and their entropic inequalities.
//!
//! The tomogram of an N-level state in the frame u is the diagonal of
//! u rho u^dag: a probability vector over spin projections. Everything
//! else here is built on that map: Shannon/Renyi/relative-q entropies,
//! the minimization theorems (the minimum over frames is the von Neumann
//! or quantum Renyi entropy, attained in the eigenbasis), the discrete
//! Fourier (QFT) conjugate-pair inequalities, measurement entropic bounds,
//! bipartite subadditivity and tripartite strong subadditivity, and
//! Haar-average bounds.
//!
//! Index convention: spin projection m = -j..j maps to matrix index
//! 0..N-1 in increasing m.

use num_complex::Complex64;
use rand_chacha::ChaCha12Rng;

use crate::error::{Error, Result};
use crate::haar::{haar_mixed_state, haar_state, haar_unitary, seeded_rng, Unitary};
use crate::linalg::{hermiticity_defect, min_eigenvalue, sorted_hermitian_eigen, CMatrix};

/// Hermitian positive trace-one matrix of an N-level system.
#[derive(Debug, Clone)]
pub struct SpinDensityMatrix {
    entries: CMatrix,
}

impl SpinDensityMatrix {
    pub fn new(entries: CMatrix) -> Result<Self> {
        if entries.nrows() != entries.ncols() || entries.nrows() == 0 {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} spin density matrix",
                entries.nrows(),
                entries.ncols()
            )));
        }
        let herm = hermiticity_defect(&entries);
        if herm > 1e-12 {
            return Err(Error::InvalidState(format!(
                "hermiticity defect {herm:.3e}"
            )));
        }
        let trace = entries.trace();
        if (trace.re - 1.0).abs() > 1e-12 || trace.im.abs() > 1e-12 {
            return Err(Error::InvalidState(format!("trace {trace} is not 1")));
        }
        let min_eig = min_eigenvalue(&entries);
        if min_eig < -1e-12 {
            return Err(Error::InvalidState(format!(
                "negative eigenvalue {min_eig:.3e}"
            )));
        }
        Ok(SpinDensityMatrix { entries })
    }

    pub fn pure(psi: &[Complex64]) -> Result<Self> {
        let norm: f64 = psi.iter().map(|v| v.norm_sqr()).sum();
        if (norm - 1.0).abs() > 1e-10 {
            return Err(Error::InvalidState(format!(
                "state vector norm {norm} is not 1"
            )));
        }
        let n = psi.len();
        let m = CMatrix::from_fn(n, n, |r, c| psi[r] * psi[c].conj() / norm);
        SpinDensityMatrix::new(m)
    }

    pub fn diagonal(probs: &[f64]) -> Result<Self> {
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > 1e-12 || probs.iter().any(|&p| p < 0.0) {
            return Err(Error::InvalidState(
                "diagonal entries must be a probability vector".into(),
            ));
        }
        let n = probs.len();
        let m = CMatrix::from_fn(n, n, |r, c| {
            if r == c {
                Complex64::new(probs[r], 0.0)
            } else {
                Complex64::ZERO
            }
        });
        SpinDensityMatrix::new(m)
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        let m = CMatrix::from_fn(dim, dim, |r, c| {
            if r == c {
                Complex64::new(1.0 / dim as f64, 0.0)
            } else {
                Complex64::ZERO
            }
        });
        SpinDensityMatrix { entries: m }
    }

    /// Haar-induced random mixed state (partial trace of a random pure
    /// state on dim^2).
    pub fn haar_mixed(dim: usize, rng: &mut ChaCha12Rng) -> Self {
        SpinDensityMatrix {
            entries: haar_mixed_state(dim, rng),
        }
    }

    /// Two-qubit Bell state (|00> + |11>)/sqrt 2.
    pub fn bell() -> Self {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let psi = vec![
            Complex64::new(s, 0.0),
            Complex64::ZERO,
            Complex64::ZERO,
            Complex64::new(s, 0.0),
        ];
        SpinDensityMatrix::pure(&psi).expect("static state")
    }

    /// Three-qubit GHZ state (|000> + |111>)/sqrt 2.
    pub fn ghz() -> Self {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let mut psi = vec![Complex64::ZERO; 8];
        psi[0] = Complex64::new(s, 0.0);
        psi[7] = Complex64::new(s, 0.0);
        SpinDensityMatrix::pure(&psi).expect("static state")
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }

    pub fn kron(&self, other: &SpinDensityMatrix) -> SpinDensityMatrix {
        SpinDensityMatrix {
            entries: self.entries.kronecker(&other.entries),
        }
    }

    /// Eigenvalues (clamped at zero, decreasing) and the frame u_min =
    /// u0^dag whose tomogram is exactly the eigenvalue vector. The
    /// eigenvector gauge is deterministic.
    pub fn eigen_frame(&self) -> (Vec<f64>, Unitary) {
        let (vals, vecs) = sorted_hermitian_eigen(&self.entries);
        let clamped: Vec<f64> = vals.iter().map(|&v| v.max(0.0)).collect();
        (
            clamped,
            Unitary::new(vecs.adjoint()).expect("eigenvector frame"),
        )
    }

    pub fn von_neumann_entropy(&self) -> f64 {
        let (vals, _) = self.eigen_frame();
        -vals
            .iter()
            .filter(|&&v| v > 1e-300)
            .map(|&v| v * v.ln())
            .sum::<f64>()
    }

    pub fn quantum_renyi_entropy(&self, q: f64) -> Result<f64> {
        if q <= 0.0 || (q - 1.0).abs() < 1e-12 {
            return Err(Error::OutOfRange(format!("Renyi order {q}")));
        }
        let (vals, _) = self.eigen_frame();
        let sum: f64 = vals
            .iter()
            .filter(|&&v| v > 1e-300)
            .map(|&v| v.powf(q))
            .sum();
        Ok(sum.ln() / (1.0 - q))
    }

    /// Partial trace over the complement of `keep` in a tensor product of
    /// factors with the given dimensions.
    pub fn partial_trace(&self, dims: &[usize], keep: &[usize]) -> Result<SpinDensityMatrix> {
        let total: usize = dims.iter().product();
        if total != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "factors {dims:?} do not multiply to {}",
                self.dim()
            )));
        }
        let kept_dim: usize = keep.iter().map(|&k| dims[k]).product();
        let strides: Vec<usize> = {
            let mut s = vec![1; dims.len()];
            for i in (0..dims.len().saturating_sub(1)).rev() {
                s[i] = s[i + 1] * dims[i + 1];
            }
            s
        };
        let traced: Vec<usize> = (0..dims.len()).filter(|k| !keep.contains(k)).collect();
        let traced_dim: usize = traced.iter().map(|&k| dims[k]).product();
        let mut out = CMatrix::zeros(kept_dim, kept_dim);
        let expand = |kept_index: usize, traced_index: usize| -> usize {
            let mut idx = 0;
            let mut rem_k = kept_index;
            // kept factors vary fastest-last in the order given by `keep`
            let mut kept_parts = vec![0usize; keep.len()];
            for pos in (0..keep.len()).rev() {
                kept_parts[pos] = rem_k % dims[keep[pos]];
                rem_k /= dims[keep[pos]];
            }
            let mut rem_t = traced_index;
            let mut traced_parts = vec![0usize; traced.len()];
            for pos in (0..traced.len()).rev() {
                traced_parts[pos] = rem_t % dims[traced[pos]];
                rem_t /= dims[traced[pos]];
            }
            for (pos, &factor) in keep.iter().enumerate() {
                idx += kept_parts[pos] * strides[factor];
            }
            for (pos, &factor) in traced.iter().enumerate() {
                idx += traced_parts[pos] * strides[factor];
            }
            idx
        };
        for r in 0..kept_dim {
            for c in 0..kept_dim {
                let mut acc = Complex64::ZERO;
                for t in 0..traced_dim {
                    acc += self.entries[(expand(r, t), expand(c, t))];
                }
                out[(r, c)] = acc;
            }
        }
        Ok(SpinDensityMatrix { entries: out })
    }
}

/// Probability vector over spin projections in the frame u.
#[derive(Debug, Clone)]
pub struct SpinTomogram {
    probabilities: Vec<f64>,
    unitary: Unitary,
}

impl SpinTomogram {
    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    pub fn unitary(&self) -> &Unitary {
        &self.unitary
    }

    pub fn dim(&self) -> usize {
        self.probabilities.len()
    }
}

/// w(m, u) = <m| u rho u^dag |m>.
pub fn spin_tomogram(rho: &SpinDensityMatrix, u: &Unitary) -> Result<SpinTomogram> {
    if rho.dim() != u.dim() {
        return Err(Error::DimensionMismatch(format!(
            "state dim {} vs frame dim {}",
            rho.dim(),
            u.dim()
        )));
    }
    let rotated = u.matrix() * rho.entries() * u.matrix().adjoint();
    let mut probabilities: Vec<f64> = (0..rho.dim()).map(|m| rotated[(m, m)].re).collect();
    let mut sum = 0.0;
    for p in probabilities.iter_mut() {
        if *p < 0.0 {
            debug_assert!(*p > -1e-13, "tomogram probability {p}");
            *p = 0.0;
        }
        sum += *p;
    }
    debug_assert!((sum - 1.0).abs() < 1e-12, "tomogram sum {sum}");
    Ok(SpinTomogram {
        probabilities,
        unitary: u.clone(),
    })
}

/// Symmetric discrete Fourier unitary, `F_jk = a^(jk) / sqrt N` with
/// `a = exp(2 pi i / N)`.
#[derive(Debug, Clone)]
pub struct QftMatrix {
    u: Unitary,
}

pub fn qft_matrix(n: usize) -> Result<QftMatrix> {
    if n < 2 {
        return Err(Error::OutOfRange(format!("QFT dimension {n} below 2")));
    }
    let norm = 1.0 / (n as f64).sqrt();
    let m = CMatrix::from_fn(n, n, |j, k| {
        let angle = std::f64::consts::TAU * ((j * k) % n) as f64 / n as f64;
        Complex64::new(angle.cos() * norm, angle.sin() * norm)
    });
    Ok(QftMatrix {
        u: Unitary::new(m)?,
    })
}

impl QftMatrix {
    pub fn unitary(&self) -> &Unitary {
        &self.u
    }

    pub fn dim(&self) -> usize {
        self.u.dim()
    }
}

fn entropy_of(probs: &[f64]) -> f64 {
    -probs
        .iter()
        .filter(|&&p| p > 1e-300)
        .map(|&p| p * p.ln())
        .sum::<f64>()
}

/// Shannon tomographic entropy H_u = -sum w ln w.
pub fn shannon_tomo_entropy(w: &SpinTomogram) -> f64 {
    entropy_of(w.probabilities())
}

/// Renyi tomographic entropy (1/(1-q)) ln sum w^q.
pub fn renyi_tomo_entropy(w: &SpinTomogram, q: f64) -> Result<f64> {
    if q <= 0.0 || (q - 1.0).abs() < 1e-12 {
        return Err(Error::OutOfRange(format!("Renyi order {q}")));
    }
    let sum: f64 = w
        .probabilities()
        .iter()
        .filter(|&&p| p > 1e-300)
        .map(|&p| p.powf(q))
        .sum();
    Ok(sum.ln() / (1.0 - q))
}

/// Deformed logarithm ln_q x = (x^(1-q) - 1)/(1-q), with the q -> 1 limit
/// ln x.
pub fn ln_q(x: f64, q: f64) -> f64 {
    if (q - 1.0).abs() < 1e-9 {
        x.ln()
    } else {
        (x.powf(1.0 - q) - 1.0) / (1.0 - q)
    }
}

/// Relative tomographic q-entropy
/// `H_q(w1 | w2) = -sum w1(m) ln_q(w2(m)/w1(m))`; nonnegative for every
/// admissible q. Requires w2 > 0 wherever w1 > 0.
pub fn relative_q_entropy(w1: &SpinTomogram, w2: &SpinTomogram, q: f64) -> Result<f64> {
    if q <= 0.0 {
        return Err(Error::OutOfRange(format!("deformation parameter {q}")));
    }
    if w1.dim() != w2.dim() {
        return Err(Error::DimensionMismatch("tomogram lengths differ".into()));
    }
    let mut acc = 0.0;
    for (&a, &b) in w1.probabilities().iter().zip(w2.probabilities()) {
        if a <= 1e-300 {
            continue;
        }
        if b <= 1e-300 {
            return Err(Error::SupportViolation(format!(
                "w2 vanishes where w1 = {a}"
            )));
        }
        acc -= a * ln_q(b / a, q);
    }
    Ok(acc)
}

#[derive(Debug, Clone, Copy)]
pub enum MinimizationTarget {
    Shannon,
    Renyi(f64),
}

#[derive(Debug, Clone)]
pub struct MinimizationReport {
    /// Analytic minimum: the von Neumann or quantum Renyi entropy.
    pub analytic_min: f64,
    /// Frame that attains it (the adjoint eigenvector matrix).
    pub argmin: Unitary,
    /// Entropy evaluated at the argmin through the tomogram path.
    pub attained: f64,
    /// Smallest entropy seen across the Haar samples.
    pub sampled_min: f64,
}

/// The minimum of the tomographic entropy over frames, verified by Haar
/// sampling: any sample below the analytic value signals an eigensolver
/// bug and is raised as an error.
pub fn min_over_unitaries(
    rho: &SpinDensityMatrix,
    target: MinimizationTarget,
    samples: usize,
    seed: u64,
) -> Result<MinimizationReport> {
    if samples < 1 {
        return Err(Error::OutOfRange("need at least one sample".into()));
    }
    let analytic = match target {
        MinimizationTarget::Shannon => rho.von_neumann_entropy(),
        MinimizationTarget::Renyi(q) => rho.quantum_renyi_entropy(q)?,
    };
    let (_, argmin) = rho.eigen_frame();
    let entropy_at = |u: &Unitary| -> Result<f64> {
        let w = spin_tomogram(rho, u)?;
        match target {
            MinimizationTarget::Shannon => Ok(shannon_tomo_entropy(&w)),
            MinimizationTarget::Renyi(q) => renyi_tomo_entropy(&w, q),
        }
    };
    let attained = entropy_at(&argmin)?;
    let mut rng = seeded_rng(seed);
    let mut sampled_min = f64::INFINITY;
    for _ in 0..samples {
        let u = haar_unitary(rho.dim(), &mut rng);
        let h = entropy_at(&u)?;
        if h < analytic - 1e-12 {
            return Err(Error::NumericalFailure(format!(
                "sampled entropy {h} below analytic minimum {analytic}"
            )));
        }
        sampled_min = sampled_min.min(h);
    }
    Ok(MinimizationReport {
        analytic_min: analytic,
        argmin,
        attained,
        sampled_min,
    })
}

/// Pair of observables fixed by their eigenbases (columns) and eigenvalues.
#[derive(Debug, Clone)]
pub struct ObservablePair {
    pub basis_a: Unitary,
    pub basis_b: Unitary,
    pub eigenvalues_a: Vec<f64>,
    pub eigenvalues_b: Vec<f64>,
}

impl ObservablePair {
    pub fn new(
        basis_a: Unitary,
        basis_b: Unitary,
        eigenvalues_a: Vec<f64>,
        eigenvalues_b: Vec<f64>,
    ) -> Result<Self> {
        let n = basis_a.dim();
        if basis_b.dim() != n || eigenvalues_a.len() != n || eigenvalues_b.len() != n {
            return Err(Error::DimensionMismatch("observable pair".into()));
        }
        Ok(ObservablePair {
            basis_a,
            basis_b,
            eigenvalues_a,
            eigenvalues_b,
        })
    }

    /// Standard basis vs QFT basis: a mutually unbiased pair in any
    /// dimension, with overlap modulus 1/sqrt(N).
    pub fn standard_vs_qft(n: usize) -> Result<Self> {
        let eig: Vec<f64> = (0..n).map(|k| k as f64).collect();
        Ok(ObservablePair {
            basis_a: Unitary::identity(n),
            basis_b: qft_matrix(n)?.unitary().clone(),
            eigenvalues_a: eig.clone(),
            eigenvalues_b: eig,
        })
    }
}

#[derive(Debug, Clone)]
pub struct MeasurementBoundsReport {
    pub h_p: f64,
    pub h_q: f64,
    /// Largest overlap modulus between the two eigenbases.
    pub overlap: f64,
    /// H_p + H_q + 2 ln((1 + c)/2); nonnegative.
    pub deutsch_residual: f64,
    /// H_p + H_q + 2 ln c; nonnegative.
    pub maassen_uffink_residual: f64,
    /// H_p + H_q - ln N when the bases are mutually unbiased.
    pub mub_residual: Option<f64>,
}

impl MeasurementBoundsReport {
    pub fn all_nonnegative(&self, tol: f64) -> bool {
        self.deutsch_residual >= -tol
            && self.maassen_uffink_residual >= -tol
            && self.mub_residual.is_none_or(|r| r >= -tol)
    }
}

/// Entropic bounds for measuring two observables on a pure state.
pub fn measurement_bounds(
    pair: &ObservablePair,
    psi: &[Complex64],
) -> Result<MeasurementBoundsReport> {
    let n = pair.basis_a.dim();
    if psi.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "state length {} vs dimension {n}",
            psi.len()
        )));
    }
    let norm: f64 = psi.iter().map(|v| v.norm_sqr()).sum();
    if (norm - 1.0).abs() > 1e-10 {
        return Err(Error::InvalidState(format!("state norm {norm}")));
    }
    let probs = |basis: &Unitary| -> Vec<f64> {
        (0..n)
            .map(|k| {
                let amp: Complex64 = (0..n).map(|r| basis.matrix()[(r, k)].conj() * psi[r]).sum();
                amp.norm_sqr()
            })
            .collect()
    };
    let p = probs(&pair.basis_a);
    let q = probs(&pair.basis_b);
    let h_p = entropy_of(&p);
    let h_q = entropy_of(&q);
    let overlap_matrix = pair.basis_a.matrix().adjoint() * pair.basis_b.matrix();
    let c = overlap_matrix
        .iter()
        .map(|v| v.norm())
        .fold(0.0f64, f64::max);
    let deutsch = h_p + h_q + 2.0 * (0.5 * (1.0 + c)).ln();
    let mu = h_p + h_q + 2.0 * c.ln();
    let mub = if (c - 1.0 / (n as f64).sqrt()).abs() <= 1e-12 {
        Some(h_p + h_q - (n as f64).ln())
    } else {
        None
    };
    Ok(MeasurementBoundsReport {
        h_p,
        h_q,
        overlap: c,
        deutsch_residual: deutsch,
        maassen_uffink_residual: mu,
        mub_residual: mub,
    })
}

#[derive(Debug, Clone)]
pub struct QftInequalityReport {
    /// R_alpha(w(u)) + R_beta(w_F(u)) - ln N, with w_F from the Fourier
    /// transform of sqrt(w).
    pub renyi_sqrt_residual: f64,
    /// R_alpha(w(u)) + R_beta(w(F u)) - ln N, with the composed frame.
    pub renyi_frame_residual: f64,
    /// H(w(u)) + H(w(F u)) - ln N.
    pub shannon_frame_residual: f64,
    /// H(w(u)) + H(w_F(u)) - ln N.
    pub shannon_sqrt_residual: f64,
    /// S_vN + H(w(F u_min)) - ln N, evaluated in the eigenframe.
    pub von_neumann_residual: f64,
}

impl QftInequalityReport {
    pub fn min_residual(&self) -> f64 {
        self.renyi_sqrt_residual
            .min(self.renyi_frame_residual)
            .min(self.shannon_frame_residual)
            .min(self.shannon_sqrt_residual)
            .min(self.von_neumann_residual)
    }
}

/// The QFT conjugate-pair inequalities for one state and frame, with
/// conjugate Renyi orders constrained by 1/alpha + 1/beta = 2.
pub fn qft_inequality_check(
    rho: &SpinDensityMatrix,
    u: &Unitary,
    alpha: f64,
    beta: f64,
) -> Result<QftInequalityReport> {
    if (1.0 / alpha + 1.0 / beta - 2.0).abs() > 1e-12 || alpha <= 0.0 || beta <= 0.0 {
        return Err(Error::ConstraintViolation(format!(
            "(alpha, beta) = ({alpha}, {beta}) must satisfy 1/alpha + 1/beta = 2"
        )));
    }
    let n = rho.dim();
    let ln_n = (n as f64).ln();
    let f = qft_matrix(n)?;
    let w = spin_tomogram(rho, u)?;
    // w_F(m) = |sum_m' F_{m m'} sqrt(w(m'))|^2 ; nonnegative real branch
    let sqrt_w: Vec<Complex64> = w
        .probabilities()
        .iter()
        .map(|&p| Complex64::new(p.sqrt(), 0.0))
        .collect();
    let w_f: Vec<f64> = (0..n)
        .map(|m| {
            (0..n)
                .map(|mp| f.unitary().matrix()[(m, mp)] * sqrt_w[mp])
                .sum::<Complex64>()
                .norm_sqr()
        })
        .collect();
    let w_f_tomo = SpinTomogram {
        probabilities: w_f,
        unitary: f.unitary().clone(),
    };
    let w_fu = spin_tomogram(rho, &f.unitary().compose(u))?;

    let renyi_sqrt = renyi_tomo_entropy(&w, alpha)? + renyi_tomo_entropy(&w_f_tomo, beta)? - ln_n;
    let renyi_frame = renyi_tomo_entropy(&w, alpha)? + renyi_tomo_entropy(&w_fu, beta)? - ln_n;
    let shannon_frame = shannon_tomo_entropy(&w) + shannon_tomo_entropy(&w_fu) - ln_n;
    let shannon_sqrt = shannon_tomo_entropy(&w) + shannon_tomo_entropy(&w_f_tomo) - ln_n;

    let (_, u_min) = rho.eigen_frame();
    let w_f_umin = spin_tomogram(rho, &f.unitary().compose(&u_min))?;
    let vn = rho.von_neumann_entropy() + shannon_tomo_entropy(&w_f_umin) - ln_n;

    Ok(QftInequalityReport {
        renyi_sqrt_residual: renyi_sqrt,
        renyi_frame_residual: renyi_frame,
        shannon_frame_residual: shannon_frame,
        shannon_sqrt_residual: shannon_sqrt,
        von_neumann_residual: vn,
    })
}

#[derive(Debug, Clone)]
pub struct SubadditivityReport {
    pub h_joint: f64,
    pub h_first: f64,
    pub h_second: f64,
    /// H_1(u) + H_2(u) - H_12(u); nonnegative.
    pub residual: f64,
    /// S_1 + S_2 - S_12 from partial traces.
    pub von_neumann_residual: f64,
}

/// Subadditivity of the joint tomogram of a bipartite state, plus the von
/// Neumann counterpart through partial traces.
pub fn bipartite_subadditivity(
    rho12: &SpinDensityMatrix,
    dims: (usize, usize),
    u: &Unitary,
) -> Result<SubadditivityReport> {
    let (n1, n2) = dims;
    if n1 * n2 != rho12.dim() {
        return Err(Error::DimensionMismatch(format!(
            "dims ({n1}, {n2}) vs matrix {}",
            rho12.dim()
        )));
    }
    let w = spin_tomogram(rho12, u)?;
    let joint = w.probabilities();
    let mut w1 = vec![0.0; n1];
    let mut w2 = vec![0.0; n2];
    for m1 in 0..n1 {
        for m2 in 0..n2 {
            let p = joint[m1 * n2 + m2];
            w1[m1] += p;
            w2[m2] += p;
        }
    }
    let h12 = entropy_of(joint);
    let h1 = entropy_of(&w1);
    let h2 = entropy_of(&w2);

    let r1 = rho12.partial_trace(&[n1, n2], &[0])?;
    let r2 = rho12.partial_trace(&[n1, n2], &[1])?;
    let vn = r1.von_neumann_entropy() + r2.von_neumann_entropy() - rho12.von_neumann_entropy();

    Ok(SubadditivityReport {
        h_joint: h12,
        h_first: h1,
        h_second: h2,
        residual: h1 + h2 - h12,
        von_neumann_residual: vn,
    })
}

#[derive(Debug, Clone)]
pub struct StrongSubadditivityReport {
    pub h_joint: f64,
    pub h_12: f64,
    pub h_23: f64,
    pub h_2: f64,
    /// H_12(u) + H_23(u) - H_123(u) - H_2(u); nonnegative.
    pub residual: f64,
    /// The von Neumann analogue through partial traces.
    pub von_neumann_residual: f64,
}

/// Strong subadditivity of the joint tomogram of a tripartite state.
pub fn tripartite_ssa(
    rho123: &SpinDensityMatrix,
    dims: (usize, usize, usize),
    u: &Unitary,
) -> Result<StrongSubadditivityReport> {
    let (n1, n2, n3) = dims;
    if n1 * n2 * n3 != rho123.dim() {
        return Err(Error::DimensionMismatch(format!(
            "dims ({n1}, {n2}, {n3}) vs matrix {}",
            rho123.dim()
        )));
    }
    if rho123.dim() > 16 {
        return Err(Error::OutOfRange(
            "tripartite dimension above the desk-scale cap 16".into(),
        ));
    }
    let w = spin_tomogram(rho123, u)?;
    let joint = w.probabilities();
    let mut w12 = vec![0.0; n1 * n2];
    let mut w23 = vec![0.0; n2 * n3];
    let mut w2 = vec![0.0; n2];
    for m1 in 0..n1 {
        for m2 in 0..n2 {
            for m3 in 0..n3 {
                let p = joint[(m1 * n2 + m2) * n3 + m3];
                w12[m1 * n2 + m2] += p;
                w23[m2 * n3 + m3] += p;
                w2[m2] += p;
            }
        }
    }
    let h123 = entropy_of(joint);
    let h12 = entropy_of(&w12);
    let h23 = entropy_of(&w23);
    let h2 = entropy_of(&w2);

    let r12 = rho123.partial_trace(&[n1, n2, n3], &[0, 1])?;
    let r23 = rho123.partial_trace(&[n1, n2, n3], &[1, 2])?;
    let r2 = rho123.partial_trace(&[n1, n2, n3], &[1])?;
    let vn = r12.von_neumann_entropy() + r23.von_neumann_entropy()
        - rho123.von_neumann_entropy()
        - r2.von_neumann_entropy();

    Ok(StrongSubadditivityReport {
        h_joint: h123,
        h_12: h12,
        h_23: h23,
        h_2: h2,
        residual: h12 + h23 - h123 - h2,
        von_neumann_residual: vn,
    })
}

#[derive(Debug, Clone, Copy)]
pub enum GroupAverageTarget {
    Shannon,
    RenyiPair(f64, f64),
}

#[derive(Debug, Clone)]
pub struct GroupAverageReport {
    pub mean: f64,
    pub stderr: f64,
    /// mean minus the proven bound ((1/2) ln N for Shannon, ln N for a
    /// conjugate Renyi pair); must exceed -3 stderr.
    pub bound_residual: f64,
    /// Monte-Carlo value of the first-column entropy integral.
    pub column_mean: f64,
    pub column_stderr: f64,
    /// column_mean minus (1/2) ln N.
    pub column_residual: f64,
}

/// Haar averages of tomographic entropies against their group-average
/// bounds, with the first-column entropy integral alongside.
pub fn group_average_entropy(
    rho: &SpinDensityMatrix,
    target: GroupAverageTarget,
    samples: usize,
    seed: u64,
) -> Result<GroupAverageReport> {
    if samples < 1000 {
        return Err(Error::OutOfRange(format!(
            "need at least 1000 samples, got {samples}"
        )));
    }
    if let GroupAverageTarget::RenyiPair(alpha, beta) = target {
        if (1.0 / alpha + 1.0 / beta - 2.0).abs() > 1e-12 {
            return Err(Error::ConstraintViolation(
                "Renyi pair must satisfy 1/alpha + 1/beta = 2".into(),
            ));
        }
    }
    let n = rho.dim();
    let ln_n = (n as f64).ln();
    let mut rng = seeded_rng(seed);
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    let mut col_sum = 0.0;
    let mut col_sum_sq = 0.0;
    for _ in 0..samples {
        let u = haar_unitary(n, &mut rng);
        let w = spin_tomogram(rho, &u)?;
        let value = match target {
            GroupAverageTarget::Shannon => shannon_tomo_entropy(&w),
            GroupAverageTarget::RenyiPair(alpha, beta) => {
                renyi_tomo_entropy(&w, alpha)? + renyi_tomo_entropy(&w, beta)?
            }
        };
        sum += value;
        sum_sq += value * value;
        let col: Vec<f64> = (0..n).map(|j| u.matrix()[(j, 0)].norm_sqr()).collect();
        let col_h = entropy_of(&col);
        col_sum += col_h;
        col_sum_sq += col_h * col_h;
    }
    let m = samples as f64;
    let mean = sum / m;
    let var = (sum_sq / m - mean * mean).max(0.0);
    let stderr = (var / m).sqrt();
    let col_mean = col_sum / m;
    let col_var = (col_sum_sq / m - col_mean * col_mean).max(0.0);
    let col_stderr = (col_var / m).sqrt();
    let bound = match target {
        GroupAverageTarget::Shannon => 0.5 * ln_n,
        GroupAverageTarget::RenyiPair(..) => ln_n,
    };
    Ok(GroupAverageReport {
        mean,
        stderr,
        bound_residual: mean - bound,
        column_mean: col_mean,
        column_stderr: col_stderr,
        column_residual: col_mean - 0.5 * ln_n,
    })
}

/// Haar-random pure state vector.
pub fn random_pure_state(dim: usize, rng: &mut ChaCha12Rng) -> Vec<Complex64> {
    haar_state(dim, rng)
}
