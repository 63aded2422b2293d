use std::collections::BTreeMap;

use gravcert_core::sdp::KktReport;
use gravcert_core::{
    AnalyticCertificate, PhysicalConstants, SingleInterferometerSetup, SolverOptions,
    SolverStatus, Tolerances, TwoMassGeometry, WitnessRecord,
};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::config::RunConfig;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Toolkit {
    pub name: String,
    pub version: String,
    pub core_version: String,
}

impl Toolkit {
    pub fn current() -> Self {
        Self {
            name: env!("CARGO_PKG_NAME").into(),
            version: env!("CARGO_PKG_VERSION").into(),
            core_version: gravcert_core::VERSION.into(),
        }
    }
}

/// What was actually run: the parsed config plus the resolved physics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub run: RunConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub geometry: Option<TwoMassGeometry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub setup: Option<SingleInterferometerSetup>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalyticSection {
    pub certificate: AnalyticCertificate,
    /// arg α and arg β in radians.
    pub alpha_phase: f64,
    pub beta_phase: f64,
    /// Largest |J_completed - J_block| over the constraint blocks.
    pub max_block_deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProgramShape {
    pub variables: usize,
    pub equality_rows: usize,
    pub equality_rank: usize,
    pub free_dimension: usize,
    pub cones: usize,
}

/// Everything here is a pure function of the config, so two runs with the
/// same config serialize identically.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SdpSection {
    pub seed: u64,
    pub num_states: usize,
    pub solver: SolverOptions,
    pub program: ProgramShape,
    pub status: SolverStatus,
    pub iterations: usize,
    pub mu_star: f64,
    pub primal_residual: f64,
    pub dual_residual: f64,
    pub gap: f64,
    pub kkt: KktReport,
    /// λ_min of the partial transpose of the Schrödinger final state.
    pub schrodinger_mu: f64,
    /// ‖X*(ρ₀) - U ρ₀ U†‖_F
    pub distance_to_schrodinger: f64,
    pub certified_entangled: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArmPhase {
    pub arm: String,
    pub source: u8,
    pub distance_m: f64,
    pub rate_rad_per_s: f64,
    pub phase_rad: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentSection {
    pub omega_q: f64,
    pub balance_distance: f64,
    /// Seconds; the accumulated phases below are rates times this.
    pub time: f64,
    pub relative_phase: f64,
    pub contributions: Vec<ArmPhase>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub passed: bool,
    pub message: String,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub total_s: f64,
    pub stages_s: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificationReport {
    pub schema_version: u32,
    pub toolkit: Toolkit,
    pub config: ConfigEcho,
    pub constants: PhysicalConstants,
    pub tolerances: Tolerances,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub analytic: Option<AnalyticSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sdp: Option<SdpSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub experiment: Option<ExperimentSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timeseries: Option<Vec<WitnessRecord>>,
    pub verdict: Verdict,
    /// Wall-clock measurements, kept apart so the other sections are
    /// reproducible byte for byte.
    pub timing: Timing,
}

impl CertificationReport {
    pub fn new(config: ConfigEcho, constants: PhysicalConstants, tolerances: Tolerances) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            toolkit: Toolkit::current(),
            config,
            constants,
            tolerances,
            analytic: None,
            sdp: None,
            witness: None,
            experiment: None,
            timeseries: None,
            verdict: Verdict { passed: false, message: String::new() },
            timing: Timing::default(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is always serializable")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    /// Paths of numeric fields that are NaN or infinite. serde_json writes
    /// those as null, and no field of the report is otherwise null.
    pub fn non_finite_fields(&self) -> Vec<String> {
        let mut out = Vec::new();
        collect_nulls(&serde_json::to_value(self).expect("report is always serializable"), "", &mut out);
        out
    }
}

fn collect_nulls(v: &Value, path: &str, out: &mut Vec<String>) {
    match v {
        Value::Null => out.push(path.to_string()),
        Value::Array(a) => a.iter().enumerate().for_each(|(i, x)| collect_nulls(x, &format!("{path}[{i}]"), out)),
        Value::Object(m) => m.iter().for_each(|(k, x)| collect_nulls(x, &format!("{path}.{k}"), out)),
        _ => {}
    }
}

pub const CSV_HEADER: [&str; 8] =
    ["time_s", "phi_LL", "phi_LR", "phi_RL", "phi_RR", "delta_phi", "min_pt_eig", "negativity"];

/// 12 significant digits, '.' decimal, no grouping.
pub fn csv_number(x: f64) -> String {
    format!("{x:.11e}")
}

pub fn write_csv<W: std::io::Write>(rows: &[WitnessRecord], w: W) -> csv::Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(CSV_HEADER)?;
    for r in rows {
        let p = r.phases;
        let fields = [r.time, p.phi_ll, p.phi_lr, p.phi_rl, p.phi_rr, r.entanglement_phase, r.min_pt_eigenvalue, r.negativity];
        out.write_record(fields.map(csv_number))?;
    }
    out.flush()?;
    Ok(())
}
