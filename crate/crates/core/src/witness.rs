//! Schrödinger predictions and the partial-transpose entanglement witness
//! for two-qubit states.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gravity::{evolution_unitary, phases, PhaseVector, PhysicalConstants, TwoMassGeometry};
use crate::linalg::basis::plus_plus;
use crate::linalg::{partial_transpose, DensityMatrix, HermitianOperator};

/// PT eigenvalues above -ROUNDOFF are treated as zero when deciding
/// entanglement and summing negativity; unit-trace 4×4 spectra are
/// accurate to a few ulps.
pub const ROUNDOFF: f64 = 1e-14;

fn negative_mass(ev: &[f64]) -> f64 {
    2.0 * ev.iter().filter(|&&l| l < -ROUNDOFF).map(|l| -l).sum::<f64>()
}

/// Uψ0 (Uψ0)† with U = e^{-itH/ħ}.
pub fn schrodinger_final_state(g: &TwoMassGeometry, c: &PhysicalConstants, psi0: &[Complex64]) -> Result<DensityMatrix> {
    if psi0.len() != 4 {
        return Err(Error::DimensionMismatch(format!("two-qubit state needs 4 amplitudes, got {}", psi0.len())));
    }
    let u = evolution_unitary(g, c)?;
    DensityMatrix::pure(&u.matvec(psi0)?)
}

fn pt_eigenvalues(rho: &HermitianOperator, factor: usize) -> Result<Vec<f64>> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch(format!("expected a two-qubit operator, got dimension {}", rho.dim())));
    }
    let pt = HermitianOperator::new(partial_transpose(rho, &[2, 2], factor)?)?;
    Ok(pt.eigenvalues())
}

/// λ_min(ρ^{T₁}); negative iff the two-qubit state is entangled.
pub fn ppt_min_eigenvalue(rho: &HermitianOperator) -> Result<f64> {
    Ok(pt_eigenvalues(rho, 0)?[0])
}

/// Same quantity with the transpose on the second factor.
pub fn ppt_min_eigenvalue_second(rho: &HermitianOperator) -> Result<f64> {
    Ok(pt_eigenvalues(rho, 1)?[0])
}

/// 2 Σ |λ| over the negative eigenvalues of ρ^{T₁}; a Bell state gives 1.
pub fn negativity(rho: &HermitianOperator) -> Result<f64> {
    Ok(negative_mass(&pt_eigenvalues(rho, 0)?))
}

/// Δφ = φ_LL + φ_RR - φ_LR - φ_RL
pub fn entanglement_phase(p: &PhaseVector) -> f64 {
    p.phi_ll + p.phi_rr - p.phi_lr - p.phi_rl
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WitnessRecord {
    /// Seconds.
    pub time: f64,
    pub phases: PhaseVector,
    pub entanglement_phase: f64,
    pub min_pt_eigenvalue: f64,
    pub negativity: f64,
}

impl WitnessRecord {
    pub fn entangled(&self) -> bool {
        self.min_pt_eigenvalue < -ROUNDOFF
    }
}

/// Witness of the evolved |++⟩ at time `g.time`.
pub fn witness_record(g: &TwoMassGeometry, c: &PhysicalConstants) -> Result<WitnessRecord> {
    let p = phases(g, c)?;
    let rho = schrodinger_final_state(g, c, &plus_plus())?;
    let ev = pt_eigenvalues(&rho, 0)?;
    Ok(WitnessRecord {
        time: g.time,
        phases: p,
        entanglement_phase: entanglement_phase(&p),
        min_pt_eigenvalue: ev[0],
        negativity: negative_mass(&ev),
    })
}

/// One record per entry of a non-decreasing time grid; `g.time` is ignored.
pub fn witness_timeseries(g: &TwoMassGeometry, c: &PhysicalConstants, t_grid: &[f64]) -> Result<Vec<WitnessRecord>> {
    if t_grid.windows(2).any(|w| w[0].is_nan() || w[1].is_nan() || w[0] > w[1]) {
        return Err(Error::InvalidInput("time grid must be non-decreasing".into()));
    }
    t_grid.iter().map(|&t| witness_record(&g.with_time(t), c)).collect()
}
