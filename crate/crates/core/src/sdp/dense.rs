//! Real dense helpers for the reduced problem.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Solution set {x0 + N z} of a consistent system A x = b.
#[derive(Debug, Clone)]
pub struct AffineSolution {
    pub particular: DVector<f64>,
    /// Orthonormal columns spanning ker A.
    pub null_basis: DMatrix<f64>,
    pub rank: usize,
}

/// Householder QR of Aᵀ with column-norm pivoting.
///
/// Columns of Aᵀ (rows of A) whose remaining norm falls below
/// `pivot_tol · ‖largest row‖` are treated as redundant. The result is the
/// minimum-norm particular solution plus an orthonormal null-space basis.
/// `‖A x0 - b‖∞ > consistency_tol` is reported as an inconsistent system.
pub fn eliminate_equalities(
    a: &DMatrix<f64>,
    b: &DVector<f64>,
    pivot_tol: f64,
    consistency_tol: f64,
) -> Result<AffineSolution> {
    let (m, n) = a.shape();
    if b.len() != m {
        return Err(Error::DimensionMismatch(format!("{m} equality rows but rhs of length {}", b.len())));
    }
    if m == 0 {
        return Ok(AffineSolution { particular: DVector::zeros(n), null_basis: DMatrix::identity(n, n), rank: 0 });
    }

    let mut w = a.transpose(); // n × m
    let mut perm: Vec<usize> = (0..m).collect();
    let mut reflectors: Vec<DVector<f64>> = Vec::new();
    let mut first_norm = 0.0;
    let steps = n.min(m);
    for k in 0..steps {
        let (mut best, mut best_norm) = (k, -1.0);
        for j in k..m {
            let nrm = w.view((k, j), (n - k, 1)).norm();
            if nrm > best_norm {
                best = j;
                best_norm = nrm;
            }
        }
        if k == 0 {
            first_norm = best_norm;
        }
        if best_norm <= pivot_tol * first_norm || best_norm == 0.0 {
            break;
        }
        w.swap_columns(k, best);
        perm.swap(k, best);

        let x: DVector<f64> = w.view((k, k), (n - k, 1)).column(0).clone_owned();
        let alpha = if x[0] >= 0.0 { -best_norm } else { best_norm };
        let mut v = x;
        v[0] -= alpha;
        let vnorm = v.norm();
        if vnorm > 0.0 {
            v /= vnorm;
            let mut block = w.view_mut((k, k), (n - k, m - k));
            let proj = v.transpose() * &block;
            block -= &v * proj * 2.0;
        }
        reflectors.push(v);
    }
    let rank = reflectors.len();

    // Q = H_0 ⋯ H_{r-1}, applied to the identity from the right-most factor.
    let mut q = DMatrix::<f64>::identity(n, n);
    for (k, v) in reflectors.iter().enumerate().rev() {
        let mut block = q.view_mut((k, 0), (n - k, n));
        let proj = v.transpose() * &block;
        block -= v * proj * 2.0;
    }

    // R11ᵀ w = b_perm[..r] by forward substitution.
    let mut coeffs = DVector::<f64>::zeros(rank);
    for i in 0..rank {
        let mut s = b[perm[i]];
        for j in 0..i {
            s -= w[(j, i)] * coeffs[j];
        }
        coeffs[i] = s / w[(i, i)];
    }
    let particular = q.columns(0, rank) * coeffs;
    let residual = (a * &particular - b).amax();
    if residual > consistency_tol {
        return Err(Error::InconsistentEqualities { residual });
    }
    let null_basis = q.columns(rank, n - rank).clone_owned();
    Ok(AffineSolution { particular, null_basis, rank })
}
