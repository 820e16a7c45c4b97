//! Fock-basis matrix elements of the displacement operator
//! `D(beta) = exp(beta a^dag - beta* a)`, in closed associated-Laguerre
//! form. These are the kernels of the quantized Fourier transform between
//! tomograms and density matrices, and the Weyl characteristic function of
//! Fock-basis states.

use num_complex::Complex64;

use crate::linalg::CMatrix;

/// log(n!) table, exact in f64 for the desk-scale cutoffs used here.
fn log_factorials(n: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    let mut acc = 0.0;
    out.push(0.0);
    for k in 1..=n {
        acc += (k as f64).ln();
        out.push(acc);
    }
    out
}

/// All elements `<m| D(beta) |n>` for `m, n < cutoff`.
///
/// For m >= n: `sqrt(n!/m!) beta^(m-n) exp(-|beta|^2/2) L_n^(m-n)(|beta|^2)`,
/// and the m < n block follows from `D(beta)^dag = D(-beta)`.
pub fn displacement_matrix(beta: Complex64, cutoff: usize) -> CMatrix {
    let x = beta.norm_sqr();
    let gauss = (-0.5 * x).exp();
    let logf = log_factorials(cutoff);
    let mut out = CMatrix::zeros(cutoff, cutoff);
    // One Laguerre recurrence per diagonal offset d = m - n.
    for d in 0..cutoff {
        let beta_pow = beta.powu(d as u32);
        let beta_neg_conj_pow = (-beta.conj()).powu(d as u32);
        let mut lkm1 = 0.0; // L_{k-1}^{(d)}(x)
        let mut lk = 1.0; // L_0^{(d)}(x)
        for k in 0..cutoff - d {
            // element (m, n) = (k + d, k)
            let amp = (0.5 * (logf[k] - logf[k + d])).exp() * gauss * lk;
            out[(k + d, k)] = beta_pow * amp;
            if d > 0 {
                out[(k, k + d)] = beta_neg_conj_pow * amp;
            }
            // (k+1) L_{k+1}^(d) = (2k + d + 1 - x) L_k^(d) - (k + d) L_{k-1}^(d)
            let lnext = ((2.0 * k as f64 + d as f64 + 1.0 - x) * lk - (k as f64 + d as f64) * lkm1)
                / (k as f64 + 1.0);
            lkm1 = lk;
            lk = lnext;
        }
    }
    out
}

/// Weyl characteristic value `Tr(rho exp(i k (mu q + nu p)))` of a Fock-basis
/// density matrix: the displacement argument is `k (-nu + i mu) / sqrt(2)`.
pub fn weyl_characteristic_fock(rho: &CMatrix, k: f64, mu: f64, nu: f64) -> Complex64 {
    let beta = Complex64::new(-k * nu, k * mu) / std::f64::consts::SQRT_2;
    let d = displacement_matrix(beta, rho.nrows());
    let mut acc = Complex64::ZERO;
    for m in 0..rho.nrows() {
        for n in 0..rho.ncols() {
            acc += rho[(m, n)] * d[(n, m)];
        }
    }
    acc
}

/// Same characteristic value for a pure state given by Fock coefficients:
/// `<c| D |c'>` with bra and ket allowed to differ (rank-one symbols).
pub fn weyl_characteristic_pure(
    bra: &[Complex64],
    ket: &[Complex64],
    k: f64,
    mu: f64,
    nu: f64,
) -> Complex64 {
    let beta = Complex64::new(-k * nu, k * mu) / std::f64::consts::SQRT_2;
    let cutoff = bra.len().min(ket.len());
    let d = displacement_matrix(beta, cutoff);
    let mut acc = Complex64::ZERO;
    for m in 0..cutoff {
        let bm = bra[m].conj();
        if bm.norm_sqr() < 1e-64 {
            continue;
        }
        for n in 0..cutoff {
            acc += bm * d[(m, n)] * ket[n];
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn vacuum_element_is_gaussian() {
        let beta = Complex64::new(0.4, -0.9);
        let d = displacement_matrix(beta, 16);
        let expect = (-0.5 * beta.norm_sqr()).exp();
        assert_abs_diff_eq!(d[(0, 0)].re, expect, epsilon = 1e-14);
        // <1|D|0> = beta e^{-|beta|^2/2}
        assert_abs_diff_eq!(d[(1, 0)].re, beta.re * expect, epsilon = 1e-14);
        assert_abs_diff_eq!(d[(1, 0)].im, beta.im * expect, epsilon = 1e-14);
    }

    #[test]
    fn displacement_is_unitary_well_below_cutoff() {
        // D^dag D = I holds in the low corner once the sum over the
        // intermediate index has converged within the cutoff
        let d = displacement_matrix(Complex64::new(0.5, 0.2), 48);
        let product = d.adjoint() * &d;
        let corner = product.view((0, 0), (12, 12)).into_owned();
        let defect = unitarity_defect_of_identity(&corner);
        assert!(defect < 1e-10, "defect {defect}");
    }

    fn unitarity_defect_of_identity(m: &CMatrix) -> f64 {
        let n = m.nrows();
        let id = CMatrix::identity(n, n);
        (m - id).iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    #[test]
    fn matches_series_exponential_on_small_argument() {
        // D(beta) = exp(B) with B = beta a^dag - beta* a; compare against a
        // truncated matrix exponential via scaling-and-squaring-free series.
        let beta = Complex64::new(0.21, -0.13);
        let cutoff = 24;
        let mut b = CMatrix::zeros(cutoff, cutoff);
        for n in 0..cutoff - 1 {
            let ladder = ((n + 1) as f64).sqrt();
            b[(n + 1, n)] += beta * ladder; // beta a^dag
            b[(n, n + 1)] -= beta.conj() * ladder; // -beta* a
        }
        let mut series = CMatrix::identity(cutoff, cutoff);
        let mut term = CMatrix::identity(cutoff, cutoff);
        for k in 1..40 {
            term = (&term * &b).map(|v| v / k as f64);
            series += &term;
        }
        let d = displacement_matrix(beta, cutoff);
        for m in 0..12 {
            for n in 0..12 {
                assert_abs_diff_eq!(d[(m, n)].re, series[(m, n)].re, epsilon = 1e-11);
                assert_abs_diff_eq!(d[(m, n)].im, series[(m, n)].im, epsilon = 1e-11);
            }
        }
    }

    #[test]
    fn weyl_characteristic_of_vacuum() {
        let mut rho = CMatrix::zeros(8, 8);
        rho[(0, 0)] = Complex64::ONE;
        for &(k, mu, nu) in &[(1.0, 0.7, -0.4), (2.0, 0.1, 0.3), (1.0, 1.5, 1.5)] {
            let xi = weyl_characteristic_fock(&rho, k, mu, nu);
            let expect = (-0.25 * k * k * (mu * mu + nu * nu)).exp();
            assert_abs_diff_eq!(xi.re, expect, epsilon = 1e-12);
            assert_abs_diff_eq!(xi.im, 0.0, epsilon = 1e-12);
        }
    }
}
