//! Real coordinates for Hermitian matrices.
//!
//! Basis order for dimension d: the d diagonal units E_jj, then for each
//! j < k the pair (E_jk + E_kj)/√2, i(E_jk - E_kj)/√2. The basis is
//! orthonormal under Re Tr(A† B), so the coordinate map is an isometry.

use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, HermitianOperator};

/// Coefficients of a d×d Hermitian matrix in the fixed orthonormal basis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HermitianBasisVector {
    pub dim: usize,
    pub coeffs: Vec<f64>,
}

impl HermitianBasisVector {
    pub fn from_matrix(m: &ComplexMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::DimensionMismatch(format!("expected square matrix, got {}x{}", m.rows(), m.cols())));
        }
        let mut coeffs = vec![0.0; m.rows() * m.rows()];
        hvec_into(m, &mut coeffs);
        Ok(Self { dim: m.rows(), coeffs })
    }

    pub fn to_matrix(&self) -> ComplexMatrix {
        hmat(self.dim, &self.coeffs)
    }

    pub fn to_operator(&self) -> HermitianOperator {
        HermitianOperator::new(self.to_matrix()).expect("hmat is Hermitian by construction")
    }
}

/// Writes the coordinates of the Hermitian part of `m` into `out` (length d²).
pub fn hvec_into(m: &ComplexMatrix, out: &mut [f64]) {
    let d = m.rows();
    debug_assert_eq!(out.len(), d * d);
    for j in 0..d {
        out[j] = m[(j, j)].re;
    }
    let mut idx = d;
    for j in 0..d {
        for k in j + 1..d {
            let (a, b) = (m[(j, k)], m[(k, j)]);
            out[idx] = FRAC_1_SQRT_2 * (a.re + b.re);
            out[idx + 1] = FRAC_1_SQRT_2 * (a.im - b.im);
            idx += 2;
        }
    }
}

pub fn hvec(m: &ComplexMatrix) -> Vec<f64> {
    let mut out = vec![0.0; m.rows() * m.rows()];
    hvec_into(m, &mut out);
    out
}

/// Inverse of [`hvec`] for a coefficient slice of length d².
pub fn hmat(d: usize, v: &[f64]) -> ComplexMatrix {
    assert_eq!(v.len(), d * d, "coefficient length must be d^2");
    let mut m = ComplexMatrix::zeros(d, d);
    for j in 0..d {
        m[(j, j)] = Complex64::new(v[j], 0.0);
    }
    let mut idx = d;
    for j in 0..d {
        for k in j + 1..d {
            let z = Complex64::new(v[idx], v[idx + 1]) / SQRT_2;
            m[(j, k)] = z;
            m[(k, j)] = z.conj();
            idx += 2;
        }
    }
    m
}

/// The k-th basis matrix.
pub fn basis_element(d: usize, k: usize) -> ComplexMatrix {
    let mut v = vec![0.0; d * d];
    v[k] = 1.0;
    hmat(d, &v)
}
