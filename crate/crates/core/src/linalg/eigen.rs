//! Cyclic Jacobi eigensolver for small complex Hermitian matrices.
//!
//! Each rotation first removes the phase of the pivot `a_pq` with a diagonal
//! unitary, then applies the classical real Jacobi rotation. Dense updates are
//! O(n) per rotation, which is the right trade for n ≤ 32.

use num_complex::Complex64;

use super::ComplexMatrix;
use crate::tolerances::Tolerances;

/// Eigenvalues ascending, eigenvectors as the columns of `vectors`.
#[derive(Debug, Clone)]
pub struct Eigen {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
    pub sweeps: usize,
}

impl Eigen {
    pub fn min(&self) -> f64 {
        self.values[0]
    }

    pub fn max(&self) -> f64 {
        *self.values.last().expect("non-empty spectrum")
    }

    /// V diag(f(λ)) V†
    pub fn reconstruct_with(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.values.len();
        let v = &self.vectors;
        let w: Vec<f64> = self.values.iter().map(|&l| f(l)).collect();
        ComplexMatrix::from_fn(n, n, |i, j| {
            (0..n).filter(|&k| w[k] != 0.0).map(|k| v[(i, k)] * v[(j, k)].conj() * w[k]).sum()
        })
    }
}

fn off_diagonal_norm(a: &[Complex64], n: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[i * n + j].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Diagonalizes `m`, which the caller guarantees to be square and Hermitian.
pub(crate) fn jacobi_eigh(m: &ComplexMatrix, tol: &Tolerances) -> Eigen {
    let n = m.rows();
    let mut a: Vec<Complex64> = m.as_slice().to_vec();
    let mut v = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        v[i * n + i] = Complex64::new(1.0, 0.0);
        a[i * n + i].im = 0.0;
    }
    let scale = m.frobenius_norm();
    let target = tol.jacobi_rel * scale;

    let mut sweeps = 0;
    while sweeps < tol.jacobi_max_sweeps {
        if off_diagonal_norm(&a, n) <= target {
            break;
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let g = a[p * n + q];
                let g_abs = g.norm();
                if g_abs == 0.0 || g_abs <= f64::EPSILON * 1e-3 * scale {
                    continue;
                }
                let e = g / g_abs;
                let app = a[p * n + p].re;
                let aqq = a[q * n + q].re;
                let theta = (aqq - app) / (2.0 * g_abs);
                let t = if theta == 0.0 {
                    1.0
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let ec = e.conj();

                // A <- A J
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = akp * c - akq * (ec * s);
                    a[k * n + q] = akp * s + akq * (ec * c);
                }
                // A <- J† A
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = apk * c - aqk * (e * s);
                    a[q * n + k] = apk * s + aqk * (e * c);
                }
                a[p * n + q] = Complex64::new(0.0, 0.0);
                a[q * n + p] = Complex64::new(0.0, 0.0);
                a[p * n + p].im = 0.0;
                a[q * n + q].im = 0.0;
                // V <- V J
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = vkp * c - vkq * (ec * s);
                    v[k * n + q] = vkp * s + vkq * (ec * c);
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * n + i].re.total_cmp(&a[j * n + j].re));
    let values = order.iter().map(|&i| a[i * n + i].re).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |i, j| v[i * n + order[j]]);
    Eigen { values, vectors, sweeps }
}
