//! tomokit: the tomographic-probability representation of classical and
//! quantum states.
//!
//! States are carried by their tomograms - genuine probability densities of
//! a rotated-and-scaled quadrature (continuous variables) or of a spin
//! projection in a unitary frame (qudits). The crate computes tomograms of
//! standard states, inverts them back to phase-space densities and density
//! matrices, classifies tomograms as classical/quantum/both/neither,
//! extracts fidelities from homodyne-style data, and verifies a family of
//! entropic uncertainty relations and inequalities on both the continuous
//! and the spin side.

pub mod displacement;
pub mod entropy;
pub mod error;
pub mod fidelity;
pub mod fourier;
pub mod frft;
pub mod grid;
pub mod haar;
pub mod linalg;
pub mod multimode;
pub mod recon;
pub mod report;
pub mod selftest;
pub mod spec;
pub mod spin;
pub mod states;
pub mod symbol;
pub mod tomo;

pub use error::{Error, Result};
pub use grid::Grid1D;
pub use haar::{haar_unitary_seeded, Unitary};
pub use states::{
    classical_gaussian_density, coherent_state, fock_state, thermal_state, DensityMatrix,
    PhaseSpaceDensity, WaveFunction, WignerFunction,
};
