//! Complete positivity fixes the two Choi entries left open by the
//! single-delocalized constraints.
//!
//! The only unknown blocks of J(Φ) are Φ(|LL⟩⟨RR|), Φ(|LR⟩⟨RL|) and their
//! adjoints. PSD-ness of J forces them to be α|LL⟩⟨RR| and β|LR⟩⟨RL|, and the
//! remaining condition is that the 4×4 compression J̃ (indices 5x, 5y of J)
//! is PSD. Its two 3×3 principal minors evaluate to -|β - e^{i(φ_LR-φ_RL)}|²
//! and -|α - e^{i(φ_LL-φ_RR)}|², so both values are forced and the completion
//! is the unitary channel.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::channel::{self, ChoiMatrix, ConstraintBlockSet, DIM};
use crate::error::{Error, Result};
use crate::gravity::{phases, PhaseVector, PhysicalConstants, TwoMassGeometry};
use crate::linalg::basis::path_op;
use crate::linalg::{frobenius_distance, is_psd, ComplexMatrix, HermitianOperator, WhichPath};
use crate::tolerances::Tolerances;

use WhichPath::{LL, LR, RL, RR};

/// J̃ with unit diagonal, fixed phase entries and the two free entries.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReducedChoi {
    pub matrix: HermitianOperator,
    pub alpha: Complex64,
    pub beta: Complex64,
}

pub fn forced_alpha(p: &PhaseVector) -> Complex64 {
    p.relative(LL, RR)
}

pub fn forced_beta(p: &PhaseVector) -> Complex64 {
    p.relative(LR, RL)
}

pub fn build_reduced_choi(p: &PhaseVector, alpha: Complex64, beta: Complex64) -> ReducedChoi {
    let m = ComplexMatrix::from_fn(DIM, DIM, |r, c| {
        let (rp, cp) = (WhichPath::from_index(r), WhichPath::from_index(c));
        match (rp, cp) {
            _ if r == c => Complex64::new(1.0, 0.0),
            (LL, RR) => alpha,
            (RR, LL) => alpha.conj(),
            (LR, RL) => beta,
            (RL, LR) => beta.conj(),
            _ => p.relative(rp, cp),
        }
    });
    let matrix = HermitianOperator::new(m).expect("constructed Hermitian");
    ReducedChoi { matrix, alpha, beta }
}

fn det3(m: &ComplexMatrix, idx: [usize; 3]) -> Complex64 {
    let a = |i: usize, j: usize| m[(idx[i], idx[j])];
    a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) - a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0))
        + a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0))
}

/// Determinants of the 3×3 principal minors of J̃ that constrain β (drop RR)
/// and α (drop LR). Both are real for Hermitian J̃.
pub fn minor_determinant_check(r: &ReducedChoi) -> (f64, f64) {
    let beta_minor = det3(&r.matrix, [0, 1, 2]);
    let alpha_minor = det3(&r.matrix, [0, 2, 3]);
    (beta_minor.re, alpha_minor.re)
}

/// Places J̃ at rows/columns (5x, 5y) of an otherwise zero 16×16 matrix.
pub fn embed_reduced(r: &ReducedChoi) -> Result<ChoiMatrix> {
    let mut j = ComplexMatrix::zeros(DIM * DIM, DIM * DIM);
    for x in 0..DIM {
        for y in 0..DIM {
            j[(x * (DIM + 1), y * (DIM + 1))] = r.matrix[(x, y)];
        }
    }
    ChoiMatrix::new(HermitianOperator::new(j)?)
}

/// Fills the four unconstrained Choi blocks with the forced α and β.
///
/// Every block of `blocks` is checked against the phase prediction
/// `e^{i(φ_row - φ_col)} |row⟩⟨col|` and copied verbatim into the result.
pub fn solve_unique_completion(blocks: &ConstraintBlockSet, p: &PhaseVector) -> Result<ChoiMatrix> {
    solve_unique_completion_with(blocks, p, &Tolerances::DEFAULT)
}

pub fn solve_unique_completion_with(
    blocks: &ConstraintBlockSet,
    p: &PhaseVector,
    tol: &Tolerances,
) -> Result<ChoiMatrix> {
    for (index, b) in blocks.iter().enumerate() {
        let predicted = path_op(b.row, b.col).scale(p.relative(b.row, b.col));
        let deviation = frobenius_distance(&predicted, &b.output)?;
        if deviation > tol.block_consistency {
            return Err(Error::InconsistentBlock { index, deviation });
        }
    }

    let alpha = forced_alpha(p);
    let beta = forced_beta(p);
    let reduced = build_reduced_choi(p, alpha, beta);
    if !is_psd(&reduced.matrix, tol.psd) {
        return Err(Error::NotPositive { min_eigenvalue: reduced.matrix.min_eigenvalue() });
    }

    let mut j = ComplexMatrix::zeros(DIM * DIM, DIM * DIM);
    for x in WhichPath::ALL {
        for y in WhichPath::ALL {
            let image = if let Some(b) = blocks.find(x, y) {
                b.output.clone()
            } else if let Some(b) = blocks.find(y, x) {
                b.output.adjoint()
            } else {
                let coeff = match (x, y) {
                    (LL, RR) => alpha,
                    (RR, LL) => alpha.conj(),
                    (LR, RL) => beta,
                    (RL, LR) => beta.conj(),
                    _ => {
                        return Err(Error::InvalidInput(format!(
                            "constraint set leaves block |{x}⟩⟨{y}| undetermined"
                        )))
                    }
                };
                path_op(x, y).scale(coeff)
            };
            for i in 0..DIM {
                for k in 0..DIM {
                    j[(i * DIM + x.index(), k * DIM + y.index())] = image[(i, k)];
                }
            }
        }
    }
    ChoiMatrix::new(HermitianOperator::new(j)?)
}

/// True iff the spectrum is (4, 0, …, 0) within the rank-one tolerance.
pub fn verify_rank_one_certificate(j: &ChoiMatrix) -> Result<bool> {
    verify_rank_one_certificate_with(j, &Tolerances::DEFAULT)
}

pub fn verify_rank_one_certificate_with(j: &ChoiMatrix, tol: &Tolerances) -> Result<bool> {
    let ev = j.eigenvalues();
    let (&top, rest) = ev.split_last().expect("16 eigenvalues");
    if ev[0] < -tol.psd * top.max(1.0) {
        return Err(Error::NotPositive { min_eigenvalue: ev[0] });
    }
    Ok((top - DIM as f64).abs() <= tol.rank_one && rest.iter().all(|l| l.abs() <= tol.rank_one))
}

/// Outcome of the complete-positivity argument for one geometry.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalyticCertificate {
    pub phases: PhaseVector,
    pub alpha: Complex64,
    pub beta: Complex64,
    pub det_beta_minor: f64,
    pub det_alpha_minor: f64,
    /// ‖J_completed - J(U·U†)‖_F
    pub distance_to_unitary: f64,
    pub trace_preserving: bool,
    pub completely_positive: bool,
    pub rank_one: bool,
    pub passed: bool,
}

pub fn certify(g: &TwoMassGeometry, c: &PhysicalConstants, tol: &Tolerances) -> Result<(AnalyticCertificate, ChoiMatrix)> {
    let p = phases(g, c)?;
    let blocks = channel::schrodinger_constraint_blocks(g, c)?;
    let j = solve_unique_completion_with(&blocks, &p, tol)?;
    let reference = channel::unitary_choi(&p.unitary())?;
    let distance_to_unitary = frobenius_distance(&j, &reference)?;
    let alpha = forced_alpha(&p);
    let beta = forced_beta(&p);
    let (det_beta_minor, det_alpha_minor) = minor_determinant_check(&build_reduced_choi(&p, alpha, beta));
    let trace_preserving = channel::is_trace_preserving(&j, tol.trace_preserving);
    let completely_positive = channel::is_completely_positive(&j, tol.psd);
    let rank_one = verify_rank_one_certificate_with(&j, tol)?;
    let passed = trace_preserving
        && completely_positive
        && rank_one
        && distance_to_unitary <= 1e-12
        && det_beta_minor.abs() <= 1e-10
        && det_alpha_minor.abs() <= 1e-10;
    Ok((
        AnalyticCertificate {
            phases: p,
            alpha,
            beta,
            det_beta_minor,
            det_alpha_minor,
            distance_to_unitary,
            trace_preserving,
            completely_positive,
            rank_one,
            passed,
        },
        j,
    ))
}
