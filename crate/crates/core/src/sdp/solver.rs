//! Operator-splitting solver for [`ConicProgram`].
//!
//! Equalities are eliminated up front (x = x0 + N z), leaving
//! minimize qᵀz subject to s = M z + h ∈ K, where K is a product of small PSD
//! cones and intervals. Each iteration solves one system with the cached
//! Cholesky factor of σI + ρMᵀM, projects onto K (cones in parallel), and
//! takes an over-relaxed dual step.

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::hvec::{hmat, hvec_into};
use super::program::ConicProgram;
use crate::channel::ChoiMatrix;
use crate::error::{Error, Result};
use crate::linalg::eigen::jacobi_eigh;
use crate::tolerances::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverOptions {
    /// ADMM penalty ρ.
    pub rho: f64,
    /// Over-relaxation factor in (0, 2).
    pub alpha: f64,
    /// Proximal regularization of the linear system.
    pub sigma: f64,
    /// Absolute tolerance on the primal and dual residuals (∞-norm) and on
    /// the duality gap relative to max(1, |objective|).
    pub tol: f64,
    pub max_iters: usize,
    /// Residuals and certificates are evaluated every this many iterations.
    pub check_every: usize,
    /// Relative tolerance of the infeasibility and unboundedness certificates.
    pub certificate_tol: f64,
}

impl SolverOptions {
    pub const DEFAULT: SolverOptions = SolverOptions {
        rho: 1.0,
        alpha: 1.6,
        sigma: 1e-6,
        tol: 1e-9,
        max_iters: 200_000,
        check_every: 10,
        certificate_tol: 1e-8,
    };

    pub fn validate(&self) -> Result<()> {
        let ok = self.rho > 0.0
            && self.rho.is_finite()
            && self.alpha > 0.0
            && self.alpha < 2.0
            && self.sigma > 0.0
            && self.sigma.is_finite()
            && self.tol > 0.0
            && self.certificate_tol > 0.0
            && self.check_every > 0;
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidInput(format!("invalid solver options {self:?}")))
        }
    }
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self::DEFAULT
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolverStatus {
    Optimal,
    MaxIterations,
    /// A certificate of primal infeasibility was found.
    Infeasible,
    /// A certificate of dual infeasibility (unbounded objective) was found.
    Unbounded,
}

impl SolverStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            SolverStatus::Optimal => "optimal",
            SolverStatus::MaxIterations => "max_iterations",
            SolverStatus::Infeasible => "infeasible",
            SolverStatus::Unbounded => "unbounded",
        }
    }
}

#[derive(Debug, Clone)]
pub struct SolverResult {
    /// x[mu_index] at the last iterate.
    pub mu_star: f64,
    /// Full variable vector, on the equality subspace by construction.
    pub x: DVector<f64>,
    pub x_star: Option<ChoiMatrix>,
    pub objective: f64,
    pub primal_residual: f64,
    pub dual_residual: f64,
    pub gap: f64,
    pub iterations: usize,
    pub status: SolverStatus,
}

#[derive(Debug, Clone, Copy)]
enum Segment {
    Psd { offset: usize, dim: usize },
    Interval { offset: usize, lower: f64, upper: f64 },
}

impl Segment {
    fn range(&self) -> std::ops::Range<usize> {
        match *self {
            Segment::Psd { offset, dim } => offset..offset + dim * dim,
            Segment::Interval { offset, .. } => offset..offset + 1,
        }
    }
}

struct Reduced {
    m: DMatrix<f64>,
    h: DVector<f64>,
    q: DVector<f64>,
    segments: Vec<Segment>,
}

fn reduce(p: &ConicProgram) -> Reduced {
    let n = &p.affine.null_basis;
    let x0 = &p.affine.particular;
    let rows: usize = p.cones.iter().map(|c| c.map.dim * c.map.dim).sum::<usize>() + p.boxes.len();
    let mut m = DMatrix::zeros(rows, n.ncols());
    let mut h = DVector::zeros(rows);
    let mut segments = Vec::with_capacity(p.cones.len() + p.boxes.len());

    let blocks: Vec<(DMatrix<f64>, DVector<f64>)> = p
        .cones
        .par_iter()
        .map(|c| (&c.map.linear * n, c.map.coefficients(x0)))
        .collect();
    let mut offset = 0;
    for (c, (mb, hb)) in p.cones.iter().zip(blocks) {
        let d2 = c.map.dim * c.map.dim;
        m.rows_mut(offset, d2).copy_from(&mb);
        h.rows_mut(offset, d2).copy_from(&hb);
        segments.push(Segment::Psd { offset, dim: c.map.dim });
        offset += d2;
    }
    for b in &p.boxes {
        m.row_mut(offset).copy_from(&n.row(b.var));
        h[offset] = x0[b.var];
        segments.push(Segment::Interval { offset, lower: b.lower, upper: b.upper });
        offset += 1;
    }
    let q = -(n.transpose() * &p.objective);
    Reduced { m, h, q, segments }
}

/// Splits `v` into one mutable slice per segment, in order.
fn segment_slices<'a>(v: &'a mut [f64], segments: &[Segment]) -> Vec<&'a mut [f64]> {
    let mut out = Vec::with_capacity(segments.len());
    let mut rest = v;
    let mut consumed = 0;
    for s in segments {
        let r = s.range();
        let (_, tail) = rest.split_at_mut(r.start - consumed);
        let (head, tail) = tail.split_at_mut(r.len());
        out.push(head);
        rest = tail;
        consumed = r.end;
    }
    out
}

fn project_psd_coeffs(dim: usize, v: &mut [f64], tol: &Tolerances) {
    if dim == 1 {
        v[0] = v[0].max(0.0);
        return;
    }
    let e = jacobi_eigh(&hmat(dim, v), tol);
    if e.min() >= 0.0 {
        return;
    }
    hvec_into(&e.reconstruct_with(|l| l.max(0.0)), v);
}

fn project(v: &mut DVector<f64>, segments: &[Segment], tol: &Tolerances) {
    let slices = segment_slices(v.as_mut_slice(), segments);
    slices.into_par_iter().zip(segments.par_iter()).for_each(|(s, seg)| match *seg {
        Segment::Psd { dim, .. } => project_psd_coeffs(dim, s, tol),
        Segment::Interval { lower, upper, .. } => s[0] = s[0].clamp(lower, upper),
    });
}

/// Support function of K at y, with PSD blocks treated as polar-cone members
/// when λ_max ≤ slack. Returns None when y is outside that domain.
fn support(y: &DVector<f64>, segments: &[Segment], slack: f64, tol: &Tolerances) -> Option<f64> {
    let mut total = 0.0;
    for seg in segments {
        match *seg {
            Segment::Psd { dim, .. } => {
                let block = &y.as_slice()[seg.range()];
                let lmax = if dim == 1 { block[0] } else { jacobi_eigh(&hmat(dim, block), tol).max() };
                if lmax > slack {
                    return None;
                }
            }
            Segment::Interval { offset, lower, upper } => {
                let yi = y[offset];
                total += if yi > 0.0 { yi * upper } else { yi * lower };
            }
        }
    }
    Some(total)
}

/// Whether d lies in the recession cone of K within `slack`.
fn in_recession_cone(d: &DVector<f64>, segments: &[Segment], slack: f64, tol: &Tolerances) -> bool {
    segments.iter().all(|seg| match *seg {
        Segment::Psd { dim, .. } => {
            let block = &d.as_slice()[seg.range()];
            let lmin = if dim == 1 { block[0] } else { jacobi_eigh(&hmat(dim, block), tol).min() };
            lmin >= -slack
        }
        Segment::Interval { offset, lower, upper } => {
            (lower.is_finite() || d[offset] >= -slack)
                && (upper.is_finite() || d[offset] <= slack)
                && (!lower.is_finite() || !upper.is_finite() || d[offset].abs() <= slack)
        }
    })
}

pub fn solve(p: &ConicProgram, opts: &SolverOptions) -> Result<SolverResult> {
    opts.validate()?;
    let tol = Tolerances::DEFAULT;
    let Reduced { m, h, q, segments } = reduce(p);
    let nz = m.ncols();
    let mt = m.transpose();

    let mut kmat = &mt * &m * opts.rho;
    for i in 0..nz {
        kmat[(i, i)] += opts.sigma;
    }
    let chol = kmat.cholesky().ok_or(Error::NotPositiveDefinite)?;

    let (rho, alpha, sigma) = (opts.rho, opts.alpha, opts.sigma);
    let mut z = DVector::<f64>::zeros(nz);
    let mut s = h.clone();
    project(&mut s, &segments, &tol);
    let mut y = DVector::<f64>::zeros(h.len());
    let mut z_prev = z.clone();
    let mut y_prev = y.clone();

    let mut status = SolverStatus::MaxIterations;
    let (mut rp, mut rd, mut gap) = (f64::INFINITY, f64::INFINITY, f64::INFINITY);
    let mut iterations = 0;

    for k in 1..=opts.max_iters {
        let check = k % opts.check_every == 0 || k == opts.max_iters;
        if check {
            z_prev.copy_from(&z);
            y_prev.copy_from(&y);
        }

        let w = (&h - &s) * rho + &y;
        let rhs = &z * sigma - &q - &mt * w;
        let zt = chol.solve(&rhs);
        let st = &h + &m * &zt;
        z = &zt * alpha + &z * (1.0 - alpha);
        let sr = &st * alpha + &s * (1.0 - alpha);
        let mut s_new = &sr + &y / rho;
        project(&mut s_new, &segments, &tol);
        y += (&sr - &s_new) * rho;
        s = s_new;
        iterations = k;

        if !check {
            continue;
        }
        rp = (&m * &z + &h - &s).amax();
        rd = (&q + &mt * &y).amax();
        let pobj = q.dot(&z);
        let dobj = h.dot(&y) - support(&y, &segments, opts.tol.max(1e-12), &tol).unwrap_or(f64::INFINITY);
        gap = (pobj - dobj).abs();
        if rp <= opts.tol && rd <= opts.tol && gap <= opts.tol * pobj.abs().max(dobj.abs()).max(1.0) {
            status = SolverStatus::Optimal;
            break;
        }

        let eps = opts.certificate_tol;
        let dy = &y - &y_prev;
        let ny = dy.amax();
        if ny > 1e-10 {
            let dy = dy / ny;
            if (&mt * &dy).amax() <= eps {
                if let Some(sup) = support(&dy, &segments, eps, &tol) {
                    if h.dot(&dy) - sup > eps.sqrt() {
                        status = SolverStatus::Infeasible;
                        break;
                    }
                }
            }
        }
        let dz = &z - &z_prev;
        let nzv = dz.amax();
        if nzv > 1e-10 {
            let dz = dz / nzv;
            if q.dot(&dz) < -eps.sqrt() && in_recession_cone(&(&m * &dz), &segments, eps, &tol) {
                status = SolverStatus::Unbounded;
                break;
            }
        }
    }

    let x = &p.affine.particular + &p.affine.null_basis * &z;
    Ok(SolverResult {
        mu_star: x[p.mu_index],
        x_star: p.choi_of(&x),
        objective: p.objective.dot(&x),
        x,
        primal_residual: rp,
        dual_residual: rd,
        gap,
        iterations,
        status,
    })
}
