//! Choi representation of a linear map on two-qubit operators, and the twelve
//! constraint blocks implied by the single-delocalized Schrödinger dynamics.
//!
//! Convention: `J(Φ) = Σ_{x,y} Φ(|x⟩⟨y|) ⊗ |x⟩⟨y|` with the output factor
//! first (slow index) and the input factor second. Consequently
//! `Φ(ρ) = Tr_B(J (I ⊗ ρᵀ))` and trace preservation reads `Tr_A(J) = I`.

use std::ops::Deref;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gravity::{evolution_unitary, PhysicalConstants, TwoMassGeometry};
use crate::linalg::basis::{arm_op, ket_down, ket_minus, ket_plus, ket_up, path_op};
use crate::linalg::{frobenius_distance, is_psd, partial_trace, tensor, Arm, ComplexMatrix, HermitianOperator, WhichPath};
use crate::tolerances::Tolerances;

/// Local dimension of the two-qubit system.
pub const DIM: usize = 4;

/// 16×16 Choi matrix of a map on 4×4 operators.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChoiMatrix(HermitianOperator);

impl ChoiMatrix {
    pub fn new(op: HermitianOperator) -> Result<Self> {
        if op.dim() != DIM * DIM {
            return Err(Error::DimensionMismatch(format!("Choi matrix must be 16x16, got {}", op.dim())));
        }
        Ok(Self(op))
    }

    pub fn operator(&self) -> &HermitianOperator {
        &self.0
    }

    /// Φ(|x⟩⟨y|), read back out of the Choi matrix.
    pub fn block(&self, x: WhichPath, y: WhichPath) -> ComplexMatrix {
        let (xi, yi) = (x.index(), y.index());
        ComplexMatrix::from_fn(DIM, DIM, |i, j| self.0[(i * DIM + xi, j * DIM + yi)])
    }

    /// Tr_A(J), equal to I₄ for trace-preserving maps.
    pub fn input_marginal(&self) -> ComplexMatrix {
        partial_trace(&self.0, &[DIM, DIM], &[1]).expect("16 = 4 x 4")
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        self.0.eigenvalues()
    }

    pub fn scale_real(&self, s: f64) -> Self {
        Self(self.0.scale_real(s))
    }
}

impl Deref for ChoiMatrix {
    type Target = HermitianOperator;

    fn deref(&self) -> &HermitianOperator {
        &self.0
    }
}

/// Tr_B(J (I ⊗ r)) for a 16×16 `j` and 4×4 `r`, without forming the product.
pub fn contract_input(j: &ComplexMatrix, r: &ComplexMatrix) -> Result<ComplexMatrix> {
    if j.rows() != DIM * DIM || !j.is_square() || r.rows() != DIM || !r.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "contract_input expects 16x16 and 4x4, got {}x{} and {}x{}",
            j.rows(),
            j.cols(),
            r.rows(),
            r.cols()
        )));
    }
    Ok(ComplexMatrix::from_fn(DIM, DIM, |a, b| {
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..DIM {
            for k in 0..DIM {
                acc += j[(a * DIM + i, b * DIM + k)] * r[(k, i)];
            }
        }
        acc
    }))
}

/// Φ(ρ) = Tr_B(J (I ⊗ ρᵀ)).
pub fn apply_via_choi(j: &ChoiMatrix, rho: &ComplexMatrix) -> Result<ComplexMatrix> {
    contract_input(j, &rho.transpose())
}

fn random_operator(rng: &mut ChaCha8Rng) -> ComplexMatrix {
    ComplexMatrix::from_fn(DIM, DIM, |_, _| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
}

/// Builds J(Φ) from a map given as a function on 4×4 matrices.
///
/// Linearity is spot-checked by comparing `apply` with the Choi expansion on
/// a few fixed pseudo-random operators; a Hermiticity-preserving map is
/// required for the result to be a valid [`ChoiMatrix`].
pub fn choi_from_channel<F>(apply: F) -> Result<ChoiMatrix>
where
    F: Fn(&ComplexMatrix) -> ComplexMatrix,
{
    let mut j = ComplexMatrix::zeros(DIM * DIM, DIM * DIM);
    for x in WhichPath::ALL {
        for y in WhichPath::ALL {
            let image = apply(&path_op(x, y));
            if image.rows() != DIM || image.cols() != DIM {
                return Err(Error::DimensionMismatch(format!(
                    "channel output must be 4x4, got {}x{}",
                    image.rows(),
                    image.cols()
                )));
            }
            for i in 0..DIM {
                for k in 0..DIM {
                    j[(i * DIM + x.index(), k * DIM + y.index())] = image[(i, k)];
                }
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_c401);
    for _ in 0..3 {
        let probe = random_operator(&mut rng);
        let direct = apply(&probe);
        let expanded = contract_input(&j, &probe.transpose())?;
        let deviation = frobenius_distance(&direct, &expanded)?;
        let scale = 1.0 + direct.frobenius_norm().max(expanded.frobenius_norm());
        if deviation > Tolerances::DEFAULT.linearity * scale {
            return Err(Error::NonLinearMap { deviation });
        }
    }

    let tol = Tolerances::DEFAULT.hermiticity.max(1e-13 * j.max_abs());
    ChoiMatrix::new(HermitianOperator::with_tolerance(j, tol)?)
}

/// J of ρ ↦ U ρ U†.
pub fn unitary_choi(u: &ComplexMatrix) -> Result<ChoiMatrix> {
    if u.rows() != DIM || u.cols() != DIM {
        return Err(Error::DimensionMismatch(format!("unitary must be 4x4, got {}x{}", u.rows(), u.cols())));
    }
    let ud = u.adjoint();
    choi_from_channel(|a| &(u * a) * &ud)
}

pub fn identity_choi() -> ChoiMatrix {
    unitary_choi(&ComplexMatrix::identity(DIM)).expect("identity channel")
}

/// ‖Tr_A(J) - I₄‖_F ≤ tol
pub fn is_trace_preserving(j: &ChoiMatrix, tol: f64) -> bool {
    frobenius_distance(&j.input_marginal(), &ComplexMatrix::identity(DIM)).is_ok_and(|d| d <= tol)
}

pub fn is_completely_positive(j: &ChoiMatrix, tol: f64) -> bool {
    is_psd(j, tol)
}

/// |L⟩⟨R| = ½(|+⟩⟨+| - |-⟩⟨-|) + (i/2)(|↑⟩⟨↑| - |↓⟩⟨↓|)
pub fn decompose_lr() -> [(Complex64, ComplexMatrix); 4] {
    let half = 0.5;
    [
        (Complex64::new(half, 0.0), ComplexMatrix::outer(&ket_plus(), &ket_plus())),
        (Complex64::new(-half, 0.0), ComplexMatrix::outer(&ket_minus(), &ket_minus())),
        (Complex64::new(0.0, half), ComplexMatrix::outer(&ket_up(), &ket_up())),
        (Complex64::new(0.0, -half), ComplexMatrix::outer(&ket_down(), &ket_down())),
    ]
}

/// |a⟩⟨b| as a combination of pure-state projectors (a ≠ b: Pauli X/Y
/// eigenprojectors; a = b: the projector itself).
fn decompose_arm_op(a: Arm, b: Arm) -> Vec<(Complex64, ComplexMatrix)> {
    match (a, b) {
        (Arm::L, Arm::R) => decompose_lr().into(),
        (Arm::R, Arm::L) => decompose_lr().into_iter().map(|(c, p)| (c.conj(), p)).collect(),
        _ => vec![(Complex64::new(1.0, 0.0), arm_op(a, a))],
    }
}

/// Which tensor factor carries the coherence `|a⟩⟨b|` of a constraint input.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DelocalizedFactor {
    First,
    Second,
}

/// One known input/output pair of the unknown evolution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstraintBlock {
    /// The input is the which-path basis operator |row⟩⟨col|.
    pub row: WhichPath,
    pub col: WhichPath,
    pub input: ComplexMatrix,
    pub output: ComplexMatrix,
}

/// The four diagonal and eight single-delocalized off-diagonal blocks.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstraintBlockSet {
    blocks: Vec<ConstraintBlock>,
}

impl ConstraintBlockSet {
    pub const LEN: usize = 12;

    pub fn new(blocks: Vec<ConstraintBlock>) -> Result<Self> {
        if blocks.len() != Self::LEN {
            return Err(Error::InvalidInput(format!("expected 12 constraint blocks, got {}", blocks.len())));
        }
        for (k, b) in blocks.iter().enumerate() {
            if b.input != path_op(b.row, b.col) {
                return Err(Error::InvalidInput(format!("block {k}: input is not |{}⟩⟨{}|", b.row, b.col)));
            }
            if b.output.rows() != DIM || b.output.cols() != DIM {
                return Err(Error::DimensionMismatch(format!("block {k}: output must be 4x4")));
            }
        }
        Ok(Self { blocks })
    }

    pub fn blocks(&self) -> &[ConstraintBlock] {
        &self.blocks
    }

    pub fn iter(&self) -> impl Iterator<Item = &ConstraintBlock> {
        self.blocks.iter()
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn find(&self, row: WhichPath, col: WhichPath) -> Option<&ConstraintBlock> {
        self.blocks.iter().find(|b| b.row == row && b.col == col)
    }
}

/// Input operators of the eight single-delocalized blocks, in the order
/// |L⟩⟨R|⊗|L⟩⟨L|, |R⟩⟨L|⊗|L⟩⟨L|, |L⟩⟨R|⊗|R⟩⟨R|, |R⟩⟨L|⊗|R⟩⟨R|, then the same
/// with the coherence on the second factor.
pub fn off_diagonal_layout() -> [(DelocalizedFactor, Arm, Arm, Arm); 8] {
    use DelocalizedFactor::{First, Second};
    [
        (First, Arm::L, Arm::R, Arm::L),
        (First, Arm::R, Arm::L, Arm::L),
        (First, Arm::L, Arm::R, Arm::R),
        (First, Arm::R, Arm::L, Arm::R),
        (Second, Arm::L, Arm::R, Arm::L),
        (Second, Arm::R, Arm::L, Arm::L),
        (Second, Arm::L, Arm::R, Arm::R),
        (Second, Arm::R, Arm::L, Arm::R),
    ]
}

/// Φ(|a⟩⟨b| ⊗ |s⟩⟨s|) (or the mirrored placement) reconstructed by linearity
/// from the Schrödinger images of pure product inputs `|ψ⟩⟨ψ| ⊗ |s⟩⟨s|`.
pub fn block_by_linearity(
    u: &ComplexMatrix,
    factor: DelocalizedFactor,
    a: Arm,
    b: Arm,
    spectator: Arm,
) -> ComplexMatrix {
    let ud = u.adjoint();
    let rest = arm_op(spectator, spectator);
    decompose_arm_op(a, b).into_iter().fold(ComplexMatrix::zeros(DIM, DIM), |acc, (c, proj)| {
        let pure_input = match factor {
            DelocalizedFactor::First => tensor(&proj, &rest),
            DelocalizedFactor::Second => tensor(&rest, &proj),
        };
        let image = &(u * &pure_input) * &ud;
        &acc + &image.scale(c)
    })
}

fn basis_pair(factor: DelocalizedFactor, a: Arm, b: Arm, spectator: Arm) -> (WhichPath, WhichPath) {
    match factor {
        DelocalizedFactor::First => (WhichPath::new(a, spectator), WhichPath::new(b, spectator)),
        DelocalizedFactor::Second => (WhichPath::new(spectator, a), WhichPath::new(spectator, b)),
    }
}

/// The twelve blocks fixed by single-delocalized Schrödinger evolution.
pub fn schrodinger_constraint_blocks(g: &TwoMassGeometry, c: &PhysicalConstants) -> Result<ConstraintBlockSet> {
    let u = evolution_unitary(g, c)?;
    let ud = u.adjoint();
    let mut blocks = Vec::with_capacity(ConstraintBlockSet::LEN);
    for x in WhichPath::ALL {
        let input = path_op(x, x);
        let output = &(&u * &input) * &ud;
        blocks.push(ConstraintBlock { row: x, col: x, input, output });
    }
    for (factor, a, b, spectator) in off_diagonal_layout() {
        let (row, col) = basis_pair(factor, a, b, spectator);
        let output = block_by_linearity(&u, factor, a, b, spectator);
        blocks.push(ConstraintBlock { row, col, input: path_op(row, col), output });
    }
    ConstraintBlockSet::new(blocks)
}
