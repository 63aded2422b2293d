use std::ops::Deref;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::eigen::{jacobi_eigh, Eigen};
use super::ComplexMatrix;
use crate::error::{Error, Result};
use crate::tolerances::Tolerances;

/// Square complex matrix equal to its adjoint.
///
/// Construction symmetrizes `(M + M†)/2` when the asymmetry is within
/// [`Tolerances::hermiticity`] and rejects the input otherwise.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ComplexMatrix", into = "ComplexMatrix")]
pub struct HermitianOperator(ComplexMatrix);

impl HermitianOperator {
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        Self::with_tolerance(m, Tolerances::DEFAULT.hermiticity)
    }

    pub fn with_tolerance(m: ComplexMatrix, tolerance: f64) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "Hermitian operator must be square, got {}x{}",
                m.rows(),
                m.cols()
            )));
        }
        let asymmetry = m.hermitian_asymmetry();
        if asymmetry > tolerance {
            return Err(Error::NotHermitian { asymmetry, tolerance });
        }
        let n = m.rows();
        let sym = ComplexMatrix::from_fn(n, n, |i, j| {
            if i == j {
                Complex64::new(m[(i, i)].re, 0.0)
            } else {
                (m[(i, j)] + m[(j, i)].conj()) * 0.5
            }
        });
        Ok(Self(sym))
    }

    pub fn identity(n: usize) -> Self {
        Self(ComplexMatrix::identity(n))
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        Self(ComplexMatrix::from_real_diagonal(diag))
    }

    /// |v⟩⟨v|
    pub fn projector(v: &[Complex64]) -> Self {
        Self(ComplexMatrix::outer(v, v))
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.0
    }

    pub fn eig(&self) -> Eigen {
        self.eig_with(&Tolerances::DEFAULT)
    }

    pub fn eig_with(&self, tol: &Tolerances) -> Eigen {
        jacobi_eigh(&self.0, tol)
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        self.eig().values
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eig().min()
    }

    pub fn trace_real(&self) -> f64 {
        self.0.trace().re
    }

    pub fn scale_real(&self, s: f64) -> Self {
        Self(self.0.scale_real(s))
    }

    /// U H U†, Hermitian up to rounding which is symmetrized away.
    pub fn conjugate_by(&self, u: &ComplexMatrix) -> Result<Self> {
        let m = self.0.conjugate_by(u)?;
        Self::with_tolerance(m, (1e-12_f64).max(1e-13 * self.0.max_abs()))
    }
}

impl Deref for HermitianOperator {
    type Target = ComplexMatrix;

    fn deref(&self) -> &ComplexMatrix {
        &self.0
    }
}

impl TryFrom<ComplexMatrix> for HermitianOperator {
    type Error = Error;

    fn try_from(m: ComplexMatrix) -> Result<Self> {
        Self::new(m)
    }
}

impl From<HermitianOperator> for ComplexMatrix {
    fn from(h: HermitianOperator) -> ComplexMatrix {
        h.0
    }
}

/// Sorted eigenvalues and unitary eigenvector matrix of a Hermitian matrix.
///
/// Rejects input whose asymmetry exceeds the Hermiticity tolerance.
pub fn hermitian_eig(m: &ComplexMatrix) -> Result<Eigen> {
    Ok(HermitianOperator::new(m.clone())?.eig())
}

/// True iff `λ_min ≥ -tol · max(1, λ_max)`.
pub fn is_psd(m: &HermitianOperator, tol: f64) -> bool {
    let e = m.eig();
    e.min() >= -tol * e.max().max(1.0)
}

/// Positive semidefinite operator with unit trace.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "HermitianOperator", into = "HermitianOperator")]
pub struct DensityMatrix(HermitianOperator);

impl DensityMatrix {
    pub fn new(op: HermitianOperator) -> Result<Self> {
        Self::with_tolerances(op, &Tolerances::DEFAULT)
    }

    pub fn with_tolerances(op: HermitianOperator, tol: &Tolerances) -> Result<Self> {
        let tr = op.trace_real();
        if (tr - 1.0).abs() > tol.density_trace {
            return Err(Error::NotDensity(format!("trace {tr} differs from 1")));
        }
        let min = op.min_eigenvalue();
        if min < -tol.density_min_eigenvalue {
            return Err(Error::NotDensity(format!("minimum eigenvalue {min:.3e} is negative")));
        }
        Ok(Self(op))
    }

    /// |ψ⟩⟨ψ| for a unit vector ψ.
    pub fn pure(psi: &[Complex64]) -> Result<Self> {
        let norm2: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
        if (norm2 - 1.0).abs() > 1e-10 {
            return Err(Error::NotDensity(format!("state vector has squared norm {norm2}")));
        }
        Self::new(HermitianOperator::projector(psi))
    }

    pub fn operator(&self) -> &HermitianOperator {
        &self.0
    }
}

impl Deref for DensityMatrix {
    type Target = HermitianOperator;

    fn deref(&self) -> &HermitianOperator {
        &self.0
    }
}

impl TryFrom<HermitianOperator> for DensityMatrix {
    type Error = Error;

    fn try_from(op: HermitianOperator) -> Result<Self> {
        Self::new(op)
    }
}

impl From<DensityMatrix> for HermitianOperator {
    fn from(d: DensityMatrix) -> HermitianOperator {
        d.0
    }
}
