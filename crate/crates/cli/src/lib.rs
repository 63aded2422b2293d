//! Reproduction harness: presets in, certification reports out.

pub mod commands;
pub mod config;
pub mod error;
pub mod report;
pub mod units;

pub use commands::{run, Outcome};
pub use config::{Command, OutputFormat, RunConfig, TimeGrid};
pub use error::CliError;
pub use report::CertificationReport;

/// Run finished and every certificate passed.
pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_NUMERICAL: u8 = 2;
/// Run finished cleanly but did not certify (e.g. no entanglement at t = 0).
pub const EXIT_NOT_CERTIFIED: u8 = 3;

/// Writes the run's output to `cfg.out`, or stdout when unset.
pub fn emit(cfg: &RunConfig, outcome: &Outcome) -> Result<(), CliError> {
    use std::io::Write;

    let mut sink: Box<dyn Write> = match &cfg.out {
        Some(path) => Box::new(std::fs::File::create(path).map_err(|e| {
            CliError::Io(format!("cannot create {}: {e}", path.display()))
        })?),
        None => Box::new(std::io::stdout().lock()),
    };
    match cfg.format {
        OutputFormat::Json => {
            sink.write_all(outcome.report.to_json().as_bytes())?;
            sink.write_all(b"\n")?;
        }
        OutputFormat::Csv => {
            let rows = outcome.report.timeseries.as_deref().unwrap_or(&[]);
            report::write_csv(rows, &mut sink).map_err(|e| CliError::Io(e.to_string()))?;
        }
    }
    sink.flush()?;
    Ok(())
}
