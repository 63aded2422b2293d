use std::time::Instant;

use gravcert_core::analytic::certify;
use gravcert_core::channel::{apply_via_choi, schrodinger_constraint_blocks};
use gravcert_core::gravity::{arm_phase_rates, omega_q};
use gravcert_core::linalg::basis::plus_plus;
use gravcert_core::linalg::frobenius_distance;
use gravcert_core::sdp::{build_program_with, kkt_report, sample_haar_states, solve};
use gravcert_core::witness::{ppt_min_eigenvalue, schrodinger_final_state, witness_record, witness_timeseries};
use gravcert_core::{PhysicalConstants, SolverStatus, Tolerances};

use crate::config::{Command, RunConfig};
use crate::error::CliError;
use crate::report::{
    AnalyticSection, ArmPhase, CertificationReport, ConfigEcho, ExperimentSection, ProgramShape, SdpSection, Verdict,
};
use crate::{EXIT_NOT_CERTIFIED, EXIT_NUMERICAL, EXIT_OK};

/// μ* must sit this far below zero before the run counts as certifying
/// entanglement, so solver round-off on a product output never does.
pub const ENTANGLEMENT_MARGIN: f64 = 1e-6;

const C: PhysicalConstants = PhysicalConstants::CODATA_2018;
const TOL: Tolerances = Tolerances::DEFAULT;

#[derive(Debug, Clone)]
pub struct Outcome {
    pub report: CertificationReport,
    pub exit_code: u8,
}

pub fn run(cfg: &RunConfig) -> Result<Outcome, CliError> {
    cfg.validate()?;
    let start = Instant::now();
    let mut out = match cfg.command {
        Command::Analytic => cmd_analytic(cfg),
        Command::Sdp => cmd_sdp(cfg),
        Command::Experiment => cmd_experiment(cfg),
        Command::Timeseries => cmd_timeseries(cfg),
    }?;
    out.report.timing.total_s = start.elapsed().as_secs_f64();
    let bad = out.report.non_finite_fields();
    if !bad.is_empty() {
        return Err(CliError::Numerical(format!("non-finite values in report: {}", bad.join(", "))));
    }
    Ok(out)
}

fn two_mass_report(cfg: &RunConfig) -> Result<CertificationReport, CliError> {
    let g = cfg.two_mass_geometry()?;
    let echo = ConfigEcho { run: cfg.clone(), geometry: Some(g), setup: None };
    Ok(CertificationReport::new(echo, C, TOL))
}

fn finish(mut report: CertificationReport, passed: bool, message: String, fail_code: u8) -> Outcome {
    let exit_code = if passed { EXIT_OK } else { fail_code };
    report.verdict = Verdict { passed, message };
    Outcome { report, exit_code }
}

pub fn cmd_analytic(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let mut report = two_mass_report(cfg)?;
    let g = cfg.two_mass_geometry()?;
    let (cert, j) = certify(&g, &C, &TOL).map_err(CliError::numerical)?;
    let blocks = schrodinger_constraint_blocks(&g, &C).map_err(CliError::numerical)?;
    let max_block_deviation = blocks
        .iter()
        .map(|b| frobenius_distance(&j.block(b.row, b.col), &b.output))
        .collect::<gravcert_core::Result<Vec<f64>>>()
        .map_err(CliError::numerical)?
        .into_iter()
        .fold(0.0, f64::max);
    let passed = cert.passed;
    let message = if passed {
        format!("unique CP completion is the unitary channel (distance {:.3e})", cert.distance_to_unitary)
    } else {
        format!(
            "certificate failed: distance {:.3e}, minors {:.3e} / {:.3e}, rank one {}",
            cert.distance_to_unitary, cert.det_beta_minor, cert.det_alpha_minor, cert.rank_one
        )
    };
    report.analytic = Some(AnalyticSection {
        alpha_phase: cert.alpha.arg(),
        beta_phase: cert.beta.arg(),
        certificate: cert,
        max_block_deviation,
    });
    report.witness = Some(witness_record(&g, &C).map_err(CliError::numerical)?);
    Ok(finish(report, passed, message, EXIT_NOT_CERTIFIED))
}

pub fn cmd_sdp(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let mut report = two_mass_report(cfg)?;
    let g = cfg.two_mass_geometry()?;
    let psi0 = plus_plus();

    let t = Instant::now();
    let blocks = schrodinger_constraint_blocks(&g, &C).map_err(CliError::numerical)?;
    let states = sample_haar_states(cfg.seed, cfg.num_states).map_err(CliError::numerical)?;
    let program = build_program_with(&blocks, &states, &psi0, &TOL).map_err(CliError::numerical)?;
    report.timing.stages_s.insert("build".into(), t.elapsed().as_secs_f64());

    let t = Instant::now();
    let r = solve(&program, &cfg.solver).map_err(CliError::numerical)?;
    report.timing.stages_s.insert("solve".into(), t.elapsed().as_secs_f64());

    let target = schrodinger_final_state(&g, &C, &psi0).map_err(CliError::numerical)?;
    let schrodinger_mu = ppt_min_eigenvalue(&target).map_err(CliError::numerical)?;
    let x_star = r.x_star.as_ref().ok_or_else(|| CliError::Numerical("program has no Choi variable".into()))?;
    let rho0 = gravcert_core::DensityMatrix::pure(&psi0).map_err(CliError::numerical)?;
    let recovered = apply_via_choi(x_star, rho0.matrix()).map_err(CliError::numerical)?;
    let distance_to_schrodinger = frobenius_distance(&recovered, target.matrix()).map_err(CliError::numerical)?;

    let optimal = r.status == SolverStatus::Optimal;
    let certified = optimal && r.mu_star < -ENTANGLEMENT_MARGIN;
    report.sdp = Some(SdpSection {
        seed: cfg.seed,
        num_states: cfg.num_states,
        solver: cfg.solver,
        program: ProgramShape {
            variables: program.num_vars,
            equality_rows: program.eq_matrix.nrows(),
            equality_rank: program.equality_rank(),
            free_dimension: program.reduced_dimension(),
            cones: program.cones.len(),
        },
        status: r.status,
        iterations: r.iterations,
        mu_star: r.mu_star,
        primal_residual: r.primal_residual,
        dual_residual: r.dual_residual,
        gap: r.gap,
        kkt: kkt_report(&program, &r),
        schrodinger_mu,
        distance_to_schrodinger,
        certified_entangled: certified,
    });
    report.witness = Some(witness_record(&g, &C).map_err(CliError::numerical)?);

    let diagnostics = format!(
        "status {}, μ* = {:.10}, {} iterations, primal residual {:.3e}, dual residual {:.3e}, gap {:.3e}",
        r.status.as_str(),
        r.mu_star,
        r.iterations,
        r.primal_residual,
        r.dual_residual,
        r.gap
    );
    Ok(if !optimal {
        finish(report, false, format!("solver did not converge: {diagnostics}"), EXIT_NUMERICAL)
    } else if certified {
        finish(report, true, format!("entanglement certified: {diagnostics}"), EXIT_OK)
    } else {
        finish(report, false, format!("no entanglement certified: {diagnostics}"), EXIT_NOT_CERTIFIED)
    })
}

pub fn cmd_experiment(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let s = cfg.single_setup()?;
    let echo = ConfigEcho { run: cfg.clone(), geometry: None, setup: Some(s) };
    let mut report = CertificationReport::new(echo, C, TOL);
    let w = omega_q(&s, &C).map_err(CliError::numerical)?;
    let rates = arm_phase_rates(&s, &C).map_err(CliError::numerical)?;
    let h = s.arm_separation / 2.0;
    let distances = [[s.distance_1 - h, s.distance_2 + h], [s.distance_1 + h, s.distance_2 - h]];
    let mut contributions = Vec::with_capacity(4);
    for (a, arm) in ["L", "R"].into_iter().enumerate() {
        for k in 0..2 {
            contributions.push(ArmPhase {
                arm: arm.into(),
                source: k as u8 + 1,
                distance_m: distances[a][k],
                rate_rad_per_s: rates[a][k],
                phase_rad: rates[a][k] * cfg.time,
            });
        }
    }
    let message = format!("ω_Q = {w:.6e} rad/s, d₂ = {:.6e} m", s.distance_2);
    report.experiment = Some(ExperimentSection {
        omega_q: w,
        balance_distance: s.distance_2,
        time: cfg.time,
        relative_phase: w * cfg.time,
        contributions,
    });
    Ok(finish(report, true, message, EXIT_OK))
}

pub fn cmd_timeseries(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let mut report = two_mass_report(cfg)?;
    let g = cfg.two_mass_geometry()?;
    let grid = cfg.grid.points()?;
    if grid.iter().any(|t| !(*t >= 0.0 && t.is_finite())) {
        return Err(CliError::Usage("grid times must be finite and non-negative".into()));
    }
    let rows = witness_timeseries(&g, &C, &grid).map_err(CliError::usage)?;
    let message = format!("{} time points", rows.len());
    report.timeseries = Some(rows);
    Ok(finish(report, true, message, EXIT_OK))
}
