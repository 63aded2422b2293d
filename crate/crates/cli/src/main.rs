use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gravcert_cli::units::{parse_length, parse_mass, parse_time, parse_time_list};
use gravcert_cli::{emit, run, Command, OutputFormat, RunConfig, TimeGrid, EXIT_USAGE};
use gravcert_core::Preset;

#[derive(Parser, Debug)]
#[command(name = "gravcert", version, about = "Certify gravity-mediated entanglement from its single-delocalized limits")]
struct Cli {
    #[command(subcommand)]
    command: Sub,

    #[command(flatten)]
    opts: Opts,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum Sub {
    /// Unique completely positive completion and rank-one certificate
    Analytic,
    /// Positivity-relaxed semidefinite program over sampled input states
    Sdp,
    /// Single-interferometer ω_Q, balance distance and arm phases
    Experiment,
    /// Phases and PPT witness along a time grid
    Timeseries,
}

#[derive(Clone, Debug)]
struct TimeList(Vec<f64>);

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Csv,
}

/// Lengths accept nm/um/mm/cm/m, times us/ms/s, masses mg/g/kg; bare
/// numbers are SI.
#[derive(Args, Debug)]
struct Opts {
    /// fig2-bose, appendixC or fig1-probing
    #[arg(long, global = true, value_parser = |s: &str| s.parse::<Preset>().map_err(|e| e.to_string()))]
    preset: Option<Preset>,
    /// Evolution time
    #[arg(long, global = true, value_parser = parse_time)]
    time: Option<f64>,
    /// Seed for the sampled input states
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Number of sampled input states N
    #[arg(long, global = true)]
    num_states: Option<usize>,
    /// Solver tolerance on residuals and relative gap
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Iteration budget of the solver
    #[arg(long, global = true)]
    max_iters: Option<usize>,
    /// Output file; stdout when omitted
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// json for reports, csv for timeseries
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Mass of each interferometer (of system 1 when --mass-2 is given)
    #[arg(long, global = true, value_parser = parse_mass)]
    mass: Option<f64>,
    #[arg(long, global = true, value_parser = parse_mass)]
    mass_2: Option<f64>,
    /// Centre-to-centre distance d between the interferometers
    #[arg(long, global = true, value_parser = parse_length)]
    separation: Option<f64>,
    /// Arm separation Δx
    #[arg(long, global = true, value_parser = parse_length)]
    arm_separation: Option<f64>,

    #[arg(long, global = true, value_parser = parse_mass)]
    probe_mass: Option<f64>,
    /// Source mass M₁
    #[arg(long, global = true, value_parser = parse_mass)]
    source_mass: Option<f64>,
    /// M₂ / M₁
    #[arg(long, global = true)]
    mass_ratio: Option<f64>,
    /// Distance d₁ from the probe centre to source 1
    #[arg(long, global = true, value_parser = parse_length)]
    distance_1: Option<f64>,

    /// Comma-separated time grid; overrides the range options
    #[arg(long, global = true, value_parser = |s: &str| parse_time_list(s).map(TimeList))]
    times: Option<TimeList>,
    #[arg(long, global = true, value_parser = parse_time)]
    t_start: Option<f64>,
    /// Defaults to --time
    #[arg(long, global = true, value_parser = parse_time)]
    t_stop: Option<f64>,
    #[arg(long, global = true, value_parser = parse_time)]
    t_step: Option<f64>,
}

fn config(cli: Cli) -> RunConfig {
    let command = match cli.command {
        Sub::Analytic => Command::Analytic,
        Sub::Sdp => Command::Sdp,
        Sub::Experiment => Command::Experiment,
        Sub::Timeseries => Command::Timeseries,
    };
    let o = cli.opts;
    let mut cfg = RunConfig::new(command);
    if let Some(p) = o.preset {
        cfg.preset = p;
    }
    if let Some(t) = o.time {
        cfg.time = t;
    }
    cfg.seed = o.seed.unwrap_or(cfg.seed);
    cfg.num_states = o.num_states.unwrap_or(cfg.num_states);
    cfg.solver.tol = o.tol.unwrap_or(cfg.solver.tol);
    cfg.solver.max_iters = o.max_iters.unwrap_or(cfg.solver.max_iters);
    cfg.out = o.out;
    if let Some(f) = o.format {
        cfg.format = match f {
            Format::Json => OutputFormat::Json,
            Format::Csv => OutputFormat::Csv,
        };
    }
    cfg.geometry.mass = o.mass;
    cfg.geometry.mass_2 = o.mass_2;
    cfg.geometry.separation = o.separation;
    cfg.setup.probe_mass = o.probe_mass;
    cfg.setup.source_mass = o.source_mass;
    cfg.setup.mass_ratio = o.mass_ratio;
    cfg.setup.distance_1 = o.distance_1;
    // Δx names the arm separation of whichever kind of setup runs.
    if command == Command::Experiment {
        cfg.setup.arm_separation = o.arm_separation;
    } else {
        cfg.geometry.arm_separation = o.arm_separation;
    }
    cfg.grid = match o.times {
        Some(TimeList(t)) => TimeGrid::Explicit(t),
        None => TimeGrid::Range {
            start: o.t_start.unwrap_or(0.0),
            stop: o.t_stop.unwrap_or(cfg.time),
            step: o.t_step.unwrap_or(0.1),
        },
    };
    cfg
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let cfg = config(cli);
    let result = run(&cfg).and_then(|outcome| emit(&cfg, &outcome).map(|()| outcome));
    match result {
        Ok(outcome) => {
            if outcome.exit_code != 0 {
                eprintln!("{}", outcome.report.verdict.message);
            }
            ExitCode::from(outcome.exit_code)
        }
        Err(e) => {
            eprintln!("gravcert: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
