//! Independent optimality audit, recomputed from the solution vector alone.

use nalgebra::DVector;
use serde::{Deserialize, Serialize};

use super::program::ConicProgram;
use super::solver::SolverResult;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KktReport {
    /// ‖A x - b‖∞ over every original equality row.
    pub equality_residual: f64,
    /// Smallest eigenvalue over all cone outputs.
    pub min_cone_eigenvalue: f64,
    /// Largest violation of any scalar bound.
    pub bound_violation: f64,
    /// λ_min of the μ-carrying cone; zero when the objective constraint is tight.
    pub objective_cone_slack: Option<f64>,
    /// Cones with λ_min below 1e-6, i.e. touching the boundary.
    pub active_cones: usize,
    pub cones: usize,
}

impl KktReport {
    pub fn is_feasible(&self, tol: f64) -> bool {
        self.equality_residual <= tol && self.min_cone_eigenvalue >= -tol && self.bound_violation <= tol
    }
}

pub fn audit_point(p: &ConicProgram, x: &DVector<f64>) -> KktReport {
    let equality_residual = if p.eq_rhs.is_empty() { 0.0 } else { (&p.eq_matrix * x - &p.eq_rhs).amax() };
    let eigs: Vec<f64> = p.cones.iter().map(|c| c.map.evaluate(x).min_eigenvalue()).collect();
    let min_cone_eigenvalue = eigs.iter().copied().fold(f64::INFINITY, f64::min);
    let bound_violation = p
        .boxes
        .iter()
        .map(|b| (b.lower - x[b.var]).max(x[b.var] - b.upper).max(0.0))
        .fold(0.0, f64::max);
    KktReport {
        equality_residual,
        min_cone_eigenvalue,
        bound_violation,
        objective_cone_slack: p.objective_cone().map(|i| eigs[i]),
        active_cones: eigs.iter().filter(|&&l| l < 1e-6).count(),
        cones: eigs.len(),
    }
}

pub fn kkt_report(p: &ConicProgram, r: &SolverResult) -> KktReport {
    audit_point(p, &r.x)
}
