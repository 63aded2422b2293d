use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix contains a non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("matrix is not Hermitian (max asymmetry {asymmetry:.3e} exceeds {tolerance:.1e})")]
    NotHermitian { asymmetry: f64, tolerance: f64 },

    #[error("not a density matrix: {0}")]
    NotDensity(String),

    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:.3e})")]
    NotPositive { min_eigenvalue: f64 },

    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("map failed the linearity spot check (deviation {deviation:.3e})")]
    NonLinearMap { deviation: f64 },

    #[error("constraint block {index} is inconsistent with the phase vector (deviation {deviation:.3e})")]
    InconsistentBlock { index: usize, deviation: f64 },

    #[error("equality system is inconsistent (residual {residual:.3e})")]
    InconsistentEqualities { residual: f64 },

    #[error("linear system is not positive definite")]
    NotPositiveDefinite,
}
