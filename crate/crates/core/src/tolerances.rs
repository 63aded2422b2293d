//! Numerical tolerances shared by every module.
//!
//! Functions that take no explicit tolerance use [`Tolerances::DEFAULT`].
//! Acceptance runs can tighten or loosen the whole set at once by passing a
//! modified copy where an API accepts one.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Max entrywise |M - M†| accepted (and symmetrized away) on construction.
    pub hermiticity: f64,
    /// Relative slack for PSD tests: λ_min ≥ -psd · max(1, λ_max).
    pub psd: f64,
    /// |Tr ρ - 1| for density matrices.
    pub density_trace: f64,
    /// Lowest eigenvalue accepted for a density matrix.
    pub density_min_eigenvalue: f64,
    /// Jacobi stops once off(A)_F ≤ jacobi_rel · ‖A‖_F.
    pub jacobi_rel: f64,
    pub jacobi_max_sweeps: usize,
    /// ‖Tr_A(J) - I‖_F bound for trace preservation.
    pub trace_preserving: f64,
    /// Modulus tolerance when comparing α, β with their forced values.
    pub forced_value: f64,
    /// Eigenvalue tolerance of the rank-one certificate.
    pub rank_one: f64,
    /// Allowed deviation between a constraint block and its phase prediction.
    pub block_consistency: f64,
    /// Relative deviation allowed by the linearity spot check.
    pub linearity: f64,
    /// Pivot threshold of the rank-revealing QR (relative to the largest pivot).
    pub qr_pivot: f64,
    /// Residual above which an equality system is declared inconsistent.
    pub equality_consistency: f64,
}

impl Tolerances {
    pub const DEFAULT: Tolerances = Tolerances {
        hermiticity: 1e-12,
        psd: 1e-9,
        density_trace: 1e-10,
        density_min_eigenvalue: 1e-9,
        jacobi_rel: 1e-14,
        jacobi_max_sweeps: 100,
        trace_preserving: 1e-10,
        forced_value: 1e-6,
        rank_one: 1e-9,
        block_consistency: 1e-10,
        linearity: 1e-9,
        qr_pivot: 1e-12,
        equality_consistency: 1e-8,
    };
}

impl Default for Tolerances {
    fn default() -> Self {
        Self::DEFAULT
    }
}
