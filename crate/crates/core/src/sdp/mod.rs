//! Semidefinite relaxation in which the evolution is only required to be
//! positive on sampled states, and its first-order solver.

mod audit;
mod dense;
mod haar;
mod hvec;
mod program;
mod solver;

pub use audit::{audit_point, kkt_report, KktReport};
pub use dense::{eliminate_equalities, AffineSolution};
pub use haar::{sample_haar_states, HaarStateSample, DEFAULT_SEED};
pub use hvec::{basis_element, hmat, hvec, HermitianBasisVector};
pub use program::{
    build_program, build_program_with, BoxConstraint, ConeConstraint, ConeRole, ConicProgram, HermitianAffineMap,
    ProgramBuilder,
};
pub use solver::{solve, SolverOptions, SolverResult, SolverStatus};

use crate::linalg::HermitianOperator;

/// Frobenius-nearest PSD matrix: negative eigenvalues clamped to zero.
pub fn project_psd(m: &HermitianOperator) -> HermitianOperator {
    let e = m.eig();
    HermitianOperator::new(e.reconstruct_with(|l| l.max(0.0))).expect("spectral reconstruction is Hermitian")
}
