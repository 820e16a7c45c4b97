//! Small helpers around nalgebra for Hermitian matrices.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

pub fn hermitize(m: &CMatrix) -> CMatrix {
    (m + m.adjoint()).map(|v| v * 0.5)
}

pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|v| v.norm()).fold(0.0, f64::max)
}

pub fn hermiticity_defect(m: &CMatrix) -> f64 {
    max_abs(&(m - m.adjoint()))
}

pub fn unitarity_defect(m: &CMatrix) -> f64 {
    let n = m.nrows();
    max_abs(&(m.adjoint() * m - CMatrix::identity(n, n)))
}

/// Eigendecomposition of a Hermitian matrix with a deterministic gauge:
/// eigenvalues sorted in decreasing order, each eigenvector scaled so its
/// first component of magnitude above 1e-12 is real positive.
pub fn sorted_hermitian_eigen(m: &CMatrix) -> (Vec<f64>, CMatrix) {
    let n = m.nrows();
    let eig = hermitize(m).symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        eig.eigenvalues[b]
            .partial_cmp(&eig.eigenvalues[a])
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let mut values = Vec::with_capacity(n);
    let mut vectors = CMatrix::zeros(n, n);
    for (slot, &idx) in order.iter().enumerate() {
        values.push(eig.eigenvalues[idx]);
        let col = eig.eigenvectors.column(idx);
        let pivot = col.iter().find(|v| v.norm() > 1e-12);
        let gauge = match pivot {
            Some(p) => p.conj() / p.norm(),
            None => Complex64::ONE,
        };
        for r in 0..n {
            vectors[(r, slot)] = col[r] * gauge;
        }
    }
    (values, vectors)
}

/// Minimum eigenvalue of a Hermitian matrix.
pub fn min_eigenvalue(m: &CMatrix) -> f64 {
    let (vals, _) = sorted_hermitian_eigen(m);
    *vals.last().unwrap_or(&0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn eigen_of_diagonal_is_sorted() {
        let m = CMatrix::from_diagonal(&CVector::from_vec(vec![
            Complex64::new(0.25, 0.0),
            Complex64::new(0.75, 0.0),
        ]));
        let (vals, vecs) = sorted_hermitian_eigen(&m);
        assert_abs_diff_eq!(vals[0], 0.75, epsilon = 1e-14);
        assert_abs_diff_eq!(vals[1], 0.25, epsilon = 1e-14);
        assert_abs_diff_eq!(vecs[(1, 0)].re, 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(vecs[(0, 1)].re, 1.0, epsilon = 1e-14);
    }

    #[test]
    fn eigen_reconstructs_matrix() {
        let m = CMatrix::from_row_slice(
            2,
            2,
            &[
                Complex64::new(0.6, 0.0),
                Complex64::new(0.1, 0.2),
                Complex64::new(0.1, -0.2),
                Complex64::new(0.4, 0.0),
            ],
        );
        let (vals, vecs) = sorted_hermitian_eigen(&m);
        let d = CMatrix::from_diagonal(&CVector::from_iterator(
            2,
            vals.iter().map(|&v| Complex64::new(v, 0.0)),
        ));
        let back = &vecs * d * vecs.adjoint();
        assert!(max_abs(&(back - m)) < 1e-12);
    }
}
