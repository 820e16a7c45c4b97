//! Property tests for the structural invariants: tomogram homogeneity and
//! normalization, spin tomogram axioms, divergence nonnegativity, and the
//! report float formatting.

use proptest::prelude::*;

use tomokit::haar::{haar_unitary_seeded, seeded_rng};
use tomokit::report::fmt_g;
use tomokit::spin::{relative_q_entropy, spin_tomogram, SpinDensityMatrix};
use tomokit::states::fock_state;
use tomokit::tomo::SymplecticTomogram;

fn lambda_strategy() -> impl Strategy<Value = f64> {
    prop_oneof![(-3.0..-0.2f64), (0.2..3.0f64)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn tomogram_homogeneity(
        lam in lambda_strategy(),
        x in -2.0..2.0f64,
        phi in 0.0..std::f64::consts::TAU,
        r in 0.4..2.0f64,
    ) {
        let m = SymplecticTomogram::from_wavefunction(&fock_state(1).unwrap());
        let (mu, nu) = (r * phi.cos(), r * phi.sin());
        let plain = m.evaluate(x, mu, nu).unwrap();
        let scaled = m.evaluate(lam * x, lam * mu, lam * nu).unwrap();
        prop_assert!((lam.abs() * scaled - plain).abs() < 1e-6);
    }

    #[test]
    fn tomogram_rows_normalize(
        phi in 0.0..std::f64::consts::TAU,
        r in 0.4..2.0f64,
    ) {
        let m = SymplecticTomogram::from_wavefunction(&fock_state(2).unwrap());
        let (grid, row) = m.direction_row(r * phi.cos(), r * phi.sin()).unwrap();
        let mass: f64 = row.iter().sum::<f64>() * grid.spacing();
        prop_assert!((mass - 1.0).abs() < 1e-4);
        prop_assert!(row.iter().all(|&v| v >= -1e-10));
    }

    #[test]
    fn spin_tomograms_are_probability_vectors(seed in 0u64..500) {
        let mut rng = seeded_rng(seed);
        let rho = SpinDensityMatrix::haar_mixed(4, &mut rng);
        let u = haar_unitary_seeded(4, seed ^ 0xF00D);
        let w = spin_tomogram(&rho, &u).unwrap();
        let sum: f64 = w.probabilities().iter().sum();
        prop_assert!((sum - 1.0).abs() < 1e-12);
        prop_assert!(w.probabilities().iter().all(|&p| p >= 0.0));
    }

    #[test]
    fn relative_q_entropy_is_nonnegative(
        seed in 0u64..500,
        q in prop_oneof![(0.1..0.9f64), (1.1..3.0f64)],
    ) {
        let mut rng = seeded_rng(seed);
        let r1 = SpinDensityMatrix::haar_mixed(3, &mut rng);
        let r2 = SpinDensityMatrix::haar_mixed(3, &mut rng);
        let u = haar_unitary_seeded(3, seed ^ 0xBEEF);
        let w1 = spin_tomogram(&r1, &u).unwrap();
        let w2 = spin_tomogram(&r2, &u).unwrap();
        prop_assert!(relative_q_entropy(&w1, &w2, q).unwrap() >= -1e-12);
    }

    #[test]
    fn float_formatting_roundtrips(x in -1e12..1e12f64) {
        let rendered = fmt_g(x);
        let back: f64 = rendered.parse().unwrap();
        let scale = x.abs().max(1e-300);
        prop_assert!((back - x).abs() / scale < 1e-9, "{x} -> {rendered}");
    }
}
