//! Conic programs over real coordinates: maximize cᵀx subject to A x = b,
//! Hermitian affine maps required PSD, and scalar bounds.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::dense::{eliminate_equalities, AffineSolution};
use super::haar::HaarStateSample;
use super::hvec::{basis_element, hmat, hvec, hvec_into};
use crate::channel::{contract_input, ChoiMatrix, ConstraintBlockSet, DIM};
use crate::error::{Error, Result};
use crate::linalg::{partial_trace, partial_transpose, ComplexMatrix, HermitianOperator};
use crate::tolerances::Tolerances;

/// x ↦ hmat(F x + g), a d×d Hermitian matrix.
#[derive(Debug, Clone)]
pub struct HermitianAffineMap {
    pub dim: usize,
    /// d² × n
    pub linear: DMatrix<f64>,
    pub offset: DVector<f64>,
}

impl HermitianAffineMap {
    pub fn new(dim: usize, linear: DMatrix<f64>, offset: DVector<f64>) -> Result<Self> {
        if linear.nrows() != dim * dim || offset.len() != dim * dim {
            return Err(Error::DimensionMismatch(format!(
                "cone map of dimension {dim} needs {} rows, got {} and {}",
                dim * dim,
                linear.nrows(),
                offset.len()
            )));
        }
        Ok(Self { dim, linear, offset })
    }

    pub fn coefficients(&self, x: &DVector<f64>) -> DVector<f64> {
        &self.linear * x + &self.offset
    }

    pub fn evaluate(&self, x: &DVector<f64>) -> HermitianOperator {
        let v = self.coefficients(x);
        HermitianOperator::new(hmat(self.dim, v.as_slice())).expect("hmat is Hermitian")
    }
}

/// What a cone constraint stands for; used only for reporting.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConeRole {
    /// Output of the map on the i-th sampled state.
    Positivity(usize),
    /// Partial transpose of the output on the initial state, minus μ I.
    PartialTranspose,
    Other,
}

#[derive(Debug, Clone)]
pub struct ConeConstraint {
    pub role: ConeRole,
    pub map: HermitianAffineMap,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoxConstraint {
    pub var: usize,
    pub lower: f64,
    pub upper: f64,
}

#[derive(Debug, Clone)]
pub struct ConicProgram {
    pub num_vars: usize,
    /// Maximized linear functional.
    pub objective: DVector<f64>,
    pub eq_matrix: DMatrix<f64>,
    pub eq_rhs: DVector<f64>,
    pub cones: Vec<ConeConstraint>,
    pub boxes: Vec<BoxConstraint>,
    /// Index of the scalar reported as μ.
    pub mu_index: usize,
    /// Whether x[0..256] holds the coordinates of a 16×16 Choi matrix.
    pub has_choi: bool,
    pub(crate) affine: AffineSolution,
}

impl ConicProgram {
    /// x0 and the null-space basis of the equality system.
    pub fn affine(&self) -> &AffineSolution {
        &self.affine
    }

    /// Free coordinates left after removing the equality constraints.
    pub fn reduced_dimension(&self) -> usize {
        self.affine.null_basis.ncols()
    }

    pub fn equality_rank(&self) -> usize {
        self.affine.rank
    }

    /// Coordinates of (X, μ) for the two-qubit instance.
    pub fn instance_point(j: &ChoiMatrix, mu: f64) -> DVector<f64> {
        let mut v = hvec(j.matrix());
        v.push(mu);
        DVector::from_vec(v)
    }

    /// Recovers X from a solution vector when the program carries one.
    pub fn choi_of(&self, x: &DVector<f64>) -> Option<ChoiMatrix> {
        if !self.has_choi {
            return None;
        }
        let n = DIM * DIM;
        let m = hmat(n, &x.as_slice()[..n * n]);
        ChoiMatrix::new(HermitianOperator::new(m).ok()?).ok()
    }

    pub fn objective_cone(&self) -> Option<usize> {
        self.cones.iter().position(|c| c.role == ConeRole::PartialTranspose)
    }
}

/// Incremental construction of a [`ConicProgram`].
#[derive(Debug, Clone)]
pub struct ProgramBuilder {
    num_vars: usize,
    objective: DVector<f64>,
    rows: Vec<Vec<f64>>,
    rhs: Vec<f64>,
    cones: Vec<ConeConstraint>,
    boxes: Vec<BoxConstraint>,
    mu_index: usize,
    has_choi: bool,
}

impl ProgramBuilder {
    pub fn new(num_vars: usize) -> Self {
        Self {
            num_vars,
            objective: DVector::zeros(num_vars),
            rows: Vec::new(),
            rhs: Vec::new(),
            cones: Vec::new(),
            boxes: Vec::new(),
            mu_index: 0,
            has_choi: false,
        }
    }

    /// Maximize x[var]; this is also the reported μ.
    pub fn maximize_variable(mut self, var: usize) -> Self {
        self.objective = DVector::zeros(self.num_vars);
        self.objective[var] = 1.0;
        self.mu_index = var;
        self
    }

    pub fn equality(mut self, row: Vec<f64>, rhs: f64) -> Result<Self> {
        if row.len() != self.num_vars {
            return Err(Error::DimensionMismatch(format!("equality row has {} entries, expected {}", row.len(), self.num_vars)));
        }
        self.rows.push(row);
        self.rhs.push(rhs);
        Ok(self)
    }

    pub fn cone(mut self, role: ConeRole, map: HermitianAffineMap) -> Result<Self> {
        if map.linear.ncols() != self.num_vars {
            return Err(Error::DimensionMismatch(format!(
                "cone map has {} columns, expected {}",
                map.linear.ncols(),
                self.num_vars
            )));
        }
        self.cones.push(ConeConstraint { role, map });
        Ok(self)
    }

    pub fn bounds(mut self, var: usize, lower: f64, upper: f64) -> Result<Self> {
        if var >= self.num_vars || lower.is_nan() || upper.is_nan() || lower > upper {
            return Err(Error::InvalidInput(format!("invalid bounds [{lower}, {upper}] on variable {var}")));
        }
        self.boxes.push(BoxConstraint { var, lower, upper });
        Ok(self)
    }

    fn with_choi(mut self) -> Self {
        self.has_choi = true;
        self
    }

    pub fn build(self, tol: &Tolerances) -> Result<ConicProgram> {
        let m = self.rows.len();
        let eq_matrix = DMatrix::from_fn(m, self.num_vars, |i, j| self.rows[i][j]);
        let eq_rhs = DVector::from_vec(self.rhs);
        let affine = eliminate_equalities(&eq_matrix, &eq_rhs, tol.qr_pivot, tol.equality_consistency)?;
        Ok(ConicProgram {
            num_vars: self.num_vars,
            objective: self.objective,
            eq_matrix,
            eq_rhs,
            cones: self.cones,
            boxes: self.boxes,
            mu_index: self.mu_index,
            has_choi: self.has_choi,
            affine,
        })
    }
}

const CHOI_COORDS: usize = DIM * DIM * DIM * DIM;

/// Columns of a linear map applied to each Choi basis element, flattened by `f`.
fn linear_columns(rows: usize, f: impl Fn(&ComplexMatrix, &mut [f64]) + Sync) -> DMatrix<f64> {
    let cols: Vec<Vec<f64>> = (0..CHOI_COORDS)
        .into_par_iter()
        .map(|k| {
            let mut out = vec![0.0; rows];
            f(&basis_element(DIM * DIM, k), &mut out);
            out
        })
        .collect();
    let mut m = DMatrix::zeros(rows, CHOI_COORDS + 1);
    for (k, c) in cols.iter().enumerate() {
        m.column_mut(k).copy_from_slice(c);
    }
    m
}

fn push_rows(mut b: ProgramBuilder, columns: &DMatrix<f64>, rhs: &[f64]) -> Result<ProgramBuilder> {
    for (i, &r) in rhs.iter().enumerate() {
        b = b.equality(columns.row(i).iter().copied().collect(), r)?;
    }
    Ok(b)
}

/// Positivity-relaxed program for a two-qubit evolution: maximize μ over
/// Hermitian X (coordinates 0..256) and μ (coordinate 256) subject to
/// trace preservation, the twelve constraint blocks, positivity of
/// Tr_B(X(I ⊗ ρ_i)) on each sampled state, and
/// Tr_B(X(I ⊗ ρ₀ᵀ))^{T₁} - μ I ⪰ 0 with ρ₀ = |ψ0⟩⟨ψ0|, -1 ≤ μ ≤ 1.
pub fn build_program(blocks: &ConstraintBlockSet, states: &HaarStateSample, psi0: &[Complex64]) -> Result<ConicProgram> {
    build_program_with(blocks, states, psi0, &Tolerances::DEFAULT)
}

pub fn build_program_with(
    blocks: &ConstraintBlockSet,
    states: &HaarStateSample,
    psi0: &[Complex64],
    tol: &Tolerances,
) -> Result<ConicProgram> {
    if psi0.len() != DIM {
        return Err(Error::DimensionMismatch(format!("initial state must have 4 entries, got {}", psi0.len())));
    }
    let norm: f64 = psi0.iter().map(|z| z.norm_sqr()).sum();
    if (norm - 1.0).abs() > tol.density_trace {
        return Err(Error::NotDensity(format!("initial state has squared norm {norm}")));
    }
    let n = CHOI_COORDS + 1;
    let mu = CHOI_COORDS;
    let mut b = ProgramBuilder::new(n).maximize_variable(mu).with_choi();

    let tp = linear_columns(DIM * DIM, |e, out| {
        hvec_into(&partial_trace(e, &[DIM, DIM], &[1]).expect("16 = 4 x 4"), out)
    });
    b = push_rows(b, &tp, &hvec(&ComplexMatrix::identity(DIM)))?;

    for block in blocks.iter() {
        let r = block.input.transpose();
        let cols = linear_columns(2 * DIM * DIM, |e, out| {
            let o = contract_input(e, &r).expect("shapes fixed");
            for (i, z) in o.as_slice().iter().enumerate() {
                out[2 * i] = z.re;
                out[2 * i + 1] = z.im;
            }
        });
        let rhs: Vec<f64> = block.output.as_slice().iter().flat_map(|z| [z.re, z.im]).collect();
        b = push_rows(b, &cols, &rhs)?;
    }

    let positivity: Vec<HermitianAffineMap> = states
        .states
        .par_iter()
        .map(|psi| {
            let rho = ComplexMatrix::outer(psi, psi);
            let f = linear_columns(DIM * DIM, |e, out| hvec_into(&contract_input(e, &rho).expect("shapes fixed"), out));
            HermitianAffineMap::new(DIM, f, DVector::zeros(DIM * DIM)).expect("shapes fixed")
        })
        .collect();
    for (i, map) in positivity.into_iter().enumerate() {
        b = b.cone(ConeRole::Positivity(i), map)?;
    }

    let rho0t = ComplexMatrix::outer(psi0, psi0).transpose();
    let mut f = linear_columns(DIM * DIM, |e, out| {
        let o = contract_input(e, &rho0t).expect("shapes fixed");
        hvec_into(&partial_transpose(&o, &[2, 2], 0).expect("4 = 2 x 2"), out)
    });
    let id = hvec(&ComplexMatrix::identity(DIM));
    for (i, v) in id.iter().enumerate() {
        f[(i, mu)] = -v;
    }
    b = b.cone(ConeRole::PartialTranspose, HermitianAffineMap::new(DIM, f, DVector::zeros(DIM * DIM))?)?;
    b = b.bounds(mu, -1.0, 1.0)?;
    b.build(tol)
}
