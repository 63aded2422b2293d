//! Dense complex linear algebra for the small operators used throughout:
//! two-qubit states and Hamiltonians (4×4) and Choi matrices (16×16).

pub mod basis;
pub(crate) mod eigen;
mod hermitian;
mod matrix;
mod ops;

pub use basis::{Arm, WhichPath};
pub use eigen::Eigen;
pub use hermitian::{hermitian_eig, is_psd, DensityMatrix, HermitianOperator};
pub use matrix::ComplexMatrix;
pub use ops::{frobenius_distance, inner_real, partial_trace, partial_transpose, tensor};
