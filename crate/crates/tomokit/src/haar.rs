//! Unitary matrices and Haar-measure sampling.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::linalg::{unitarity_defect, CMatrix};

/// N x N unitary matrix, checked to 1e-10 in max-abs norm on construction.
#[derive(Debug, Clone)]
pub struct Unitary {
    m: CMatrix,
}

impl Unitary {
    pub fn new(m: CMatrix) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} unitary",
                m.nrows(),
                m.ncols()
            )));
        }
        let defect = unitarity_defect(&m);
        if defect > 1e-10 {
            return Err(Error::InvalidState(format!(
                "unitarity defect {defect:.3e}"
            )));
        }
        Ok(Unitary { m })
    }

    pub fn identity(dim: usize) -> Self {
        Unitary {
            m: CMatrix::identity(dim, dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.m
    }

    pub fn adjoint(&self) -> Unitary {
        Unitary {
            m: self.m.adjoint(),
        }
    }

    /// Matrix product `self * rhs`.
    pub fn compose(&self, rhs: &Unitary) -> Unitary {
        Unitary {
            m: &self.m * &rhs.m,
        }
    }

    pub fn kronecker(&self, rhs: &Unitary) -> Unitary {
        Unitary {
            m: self.m.kronecker(&rhs.m),
        }
    }
}

/// Deterministic RNG used across the crate for seeded Monte-Carlo runs.
pub fn seeded_rng(seed: u64) -> ChaCha12Rng {
    ChaCha12Rng::seed_from_u64(seed)
}

fn complex_gaussian(rng: &mut ChaCha12Rng) -> Complex64 {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    Complex64::new(re, im)
}

/// Haar-distributed unitary via phase-corrected orthonormalization of a
/// complex Gaussian matrix: modified Gram-Schmidt with one
/// re-orthogonalization pass leaves the triangular factor with a real
/// positive diagonal, which realizes the Haar law exactly.
pub fn haar_unitary(dim: usize, rng: &mut ChaCha12Rng) -> Unitary {
    assert!(dim >= 1, "dimension must be positive");
    let mut cols: Vec<Vec<Complex64>> = (0..dim)
        .map(|_| (0..dim).map(|_| complex_gaussian(rng)).collect())
        .collect();
    for k in 0..dim {
        for _pass in 0..2 {
            for i in 0..k {
                let proj: Complex64 = cols[i]
                    .iter()
                    .zip(cols[k].iter())
                    .map(|(a, b)| a.conj() * b)
                    .sum();
                let corrections: Vec<Complex64> = cols[i].iter().map(|&v| proj * v).collect();
                for (dst, c) in cols[k].iter_mut().zip(corrections) {
                    *dst -= c;
                }
            }
        }
        let norm = cols[k].iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
        for v in cols[k].iter_mut() {
            *v /= norm;
        }
    }
    let m = CMatrix::from_fn(dim, dim, |r, c| cols[c][r]);
    Unitary { m }
}

pub fn haar_unitary_seeded(dim: usize, seed: u64) -> Unitary {
    haar_unitary(dim, &mut seeded_rng(seed))
}

/// Haar-random pure state |psi> = U |0>.
pub fn haar_state(dim: usize, rng: &mut ChaCha12Rng) -> Vec<Complex64> {
    let u = haar_unitary(dim, rng);
    (0..dim).map(|r| u.matrix()[(r, 0)]).collect()
}

/// Haar-induced random mixed state: partial trace over an equal-size
/// ancilla of a Haar-random pure state on dim^2.
pub fn haar_mixed_state(dim: usize, rng: &mut ChaCha12Rng) -> CMatrix {
    let psi = haar_state(dim * dim, rng);
    let mut rho = CMatrix::zeros(dim, dim);
    for r in 0..dim {
        for c in 0..dim {
            let mut acc = Complex64::ZERO;
            for a in 0..dim {
                acc += psi[r * dim + a] * psi[c * dim + a].conj();
            }
            rho[(r, c)] = acc;
        }
    }
    rho
}

#[allow(unused)]
pub fn haar_mixed_state_seeded(dim: usize, seed: u64) -> CMatrix {
    haar_mixed_state(dim, &mut seeded_rng(seed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn one_dimensional_sample_is_a_phase() {
        let u = haar_unitary_seeded(1, 3);
        assert_abs_diff_eq!(u.matrix()[(0, 0)].norm(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn samples_are_unitary() {
        for seed in 0..8 {
            let u = haar_unitary_seeded(4, seed);
            assert!(unitarity_defect(u.matrix()) <= 1e-10);
        }
    }

    #[test]
    fn first_entry_second_moment_matches_haar() {
        // E |u_11|^2 = 1/N for Haar measure
        let mut rng = seeded_rng(42);
        let samples = 10_000;
        let mean: f64 = (0..samples)
            .map(|_| haar_unitary(2, &mut rng).matrix()[(0, 0)].norm_sqr())
            .sum::<f64>()
            / samples as f64;
        assert_abs_diff_eq!(mean, 0.5, epsilon = 0.02);
    }

    #[test]
    fn left_invariance_of_tested_moments() {
        let v = haar_unitary_seeded(3, 7);
        let mut rng = seeded_rng(11);
        let samples = 4000;
        let mut plain = 0.0;
        let mut rotated = 0.0;
        for _ in 0..samples {
            let u = haar_unitary(3, &mut rng);
            plain += u.matrix()[(0, 0)].norm_sqr();
            rotated += (v.matrix() * u.matrix())[(0, 0)].norm_sqr();
        }
        plain /= samples as f64;
        rotated /= samples as f64;
        assert_abs_diff_eq!(plain, 1.0 / 3.0, epsilon = 0.02);
        assert_abs_diff_eq!(rotated, 1.0 / 3.0, epsilon = 0.02);
    }

    #[test]
    fn mixed_state_is_a_state() {
        let rho = haar_mixed_state_seeded(3, 5);
        assert_abs_diff_eq!(rho.trace().re, 1.0, epsilon = 1e-12);
        assert!(crate::linalg::min_eigenvalue(&rho) > -1e-12);
    }
}
