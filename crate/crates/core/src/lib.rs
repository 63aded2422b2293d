//! Numerical and analytic certification that a two-qubit gravitational time
//! evolution, constrained to agree with the Schrödinger equation whenever at
//! most one system is delocalized, must entangle the two systems.
//!
//! * [`linalg`]: dense complex matrices, partial traces, Jacobi eigensolver.
//! * [`gravity`]: which-path Hamiltonian, phases, single-interferometer design.
//! * [`channel`]: Choi matrices and the single-delocalized constraint blocks.
//! * [`analytic`]: the complete-positivity uniqueness argument.
//! * [`sdp`]: the positivity-relaxed semidefinite program and its ADMM solver.
//! * [`witness`]: PPT eigenvalues, negativity and entanglement phase.

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub mod analytic;
pub mod channel;
pub mod error;
pub mod gravity;
pub mod linalg;
pub mod sdp;
pub mod tolerances;
pub mod witness;

pub use analytic::AnalyticCertificate;
pub use channel::{ChoiMatrix, ConstraintBlockSet};
pub use error::{Error, Result};
pub use gravity::{PhaseVector, PhysicalConstants, Preset, SingleInterferometerSetup, TwoMassGeometry};
pub use linalg::{ComplexMatrix, DensityMatrix, HermitianOperator, WhichPath};
pub use num_complex::Complex64;
pub use sdp::{ConicProgram, HaarStateSample, SolverOptions, SolverResult, SolverStatus};
pub use tolerances::Tolerances;
pub use witness::WitnessRecord;
