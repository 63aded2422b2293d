use std::path::PathBuf;

use gravcert_core::gravity::balance_distance;
use gravcert_core::{Preset, SingleInterferometerSetup, SolverOptions, TwoMassGeometry};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Analytic,
    Sdp,
    Experiment,
    Timeseries,
}

impl Command {
    pub fn default_preset(self) -> Preset {
        match self {
            Command::Experiment => Preset::AppendixC,
            _ => Preset::Fig2Bose,
        }
    }

    pub fn default_format(self) -> OutputFormat {
        match self {
            Command::Timeseries => OutputFormat::Csv,
            _ => OutputFormat::Json,
        }
    }
}

/// Two-interferometer parameters that replace the preset's values.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct GeometryOverrides {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mass: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mass_2: Option<f64>,
    /// Centre-to-centre distance d.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub separation: Option<f64>,
    /// Arm separation Δx.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub arm_separation: Option<f64>,
}

impl GeometryOverrides {
    fn is_empty(&self) -> bool {
        *self == Self::default()
    }
}

/// Single-interferometer parameters that replace the preset's values.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct SetupOverrides {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub probe_mass: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source_mass: Option<f64>,
    /// M₂ / M₁; d₂ is re-balanced from it.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mass_ratio: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub distance_1: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub arm_separation: Option<f64>,
}

/// Time grid for the timeseries command.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TimeGrid {
    Explicit(Vec<f64>),
    Range { start: f64, stop: f64, step: f64 },
}

impl TimeGrid {
    pub fn points(&self) -> Result<Vec<f64>, CliError> {
        match *self {
            TimeGrid::Explicit(ref t) => Ok(t.clone()),
            TimeGrid::Range { start, stop, step } => {
                if step.is_nan() || step <= 0.0 || stop < start {
                    return Err(CliError::Usage(format!(
                        "time range needs step > 0 and stop ≥ start, got {start}..{stop} step {step}"
                    )));
                }
                // Index-based so the points do not accumulate rounding.
                let n = ((stop - start) / step + 1e-9).floor() as usize + 1;
                Ok((0..n).map(|k| start + k as f64 * step).collect())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: Command,
    pub preset: Preset,
    pub geometry: GeometryOverrides,
    pub setup: SetupOverrides,
    /// Seconds.
    pub time: f64,
    pub seed: u64,
    pub num_states: usize,
    pub solver: SolverOptions,
    pub grid: TimeGrid,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    pub format: OutputFormat,
}

impl RunConfig {
    /// Defaults for `command`: the reference instance at t = 2.5 s with
    /// 1000 samples drawn from seed 42.
    pub fn new(command: Command) -> Self {
        Self {
            command,
            preset: command.default_preset(),
            geometry: GeometryOverrides::default(),
            setup: SetupOverrides::default(),
            time: Preset::DEFAULT_TIME,
            seed: gravcert_core::sdp::DEFAULT_SEED,
            num_states: 1000,
            solver: SolverOptions::DEFAULT,
            grid: TimeGrid::Range { start: 0.0, stop: Preset::DEFAULT_TIME, step: 0.1 },
            out: None,
            format: command.default_format(),
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if !(self.time >= 0.0 && self.time.is_finite()) {
            return Err(CliError::Usage(format!("time must be finite and non-negative, got {}", self.time)));
        }
        self.solver.validate().map_err(|e| CliError::Usage(e.to_string()))?;
        if self.command == Command::Sdp && self.num_states == 0 {
            return Err(CliError::Usage("sdp needs at least one sampled state (--num-states ≥ 1)".into()));
        }
        if self.format == OutputFormat::Csv && self.command != Command::Timeseries {
            return Err(CliError::Usage(format!("csv output is only available for timeseries, not {:?}", self.command)));
        }
        match self.command {
            Command::Experiment => {
                if !self.geometry.is_empty() {
                    return Err(CliError::Usage("two-interferometer options do not apply to experiment".into()));
                }
                self.single_setup().map(drop)
            }
            _ => self.two_mass_geometry().map(drop),
        }
    }

    /// The two-interferometer geometry at the configured time.
    pub fn two_mass_geometry(&self) -> Result<TwoMassGeometry, CliError> {
        let base = self.preset.two_mass_geometry(self.time).map_err(CliError::usage)?;
        if self.geometry.is_empty() {
            return Ok(base);
        }
        let dx = self.geometry.arm_separation.unwrap_or(base.x_r - base.x_l);
        let d = self.geometry.separation.unwrap_or((base.y_l + base.y_r - base.x_l - base.x_r) / 2.0);
        let m1 = self.geometry.mass.unwrap_or(base.mass_1);
        let m2 = self.geometry.mass_2.unwrap_or(m1);
        TwoMassGeometry::new(m1, m2, (-dx / 2.0, dx / 2.0), (d - dx / 2.0, d + dx / 2.0), self.time)
            .map_err(CliError::usage)
    }

    pub fn single_setup(&self) -> Result<SingleInterferometerSetup, CliError> {
        let o = &self.setup;
        let mut s = self.preset.single_setup(o.probe_mass, o.source_mass).map_err(CliError::usage)?;
        if let Some(m) = o.probe_mass {
            s.probe_mass = m;
        }
        if let Some(m) = o.source_mass {
            s.source_mass_1 = m;
        }
        if let Some(dx) = o.arm_separation {
            s.arm_separation = dx;
        }
        if let Some(d) = o.distance_1 {
            s.distance_1 = d;
        }
        let ratio = o.mass_ratio.unwrap_or(s.source_mass_2 / s.source_mass_1);
        s.source_mass_2 = ratio * s.source_mass_1;
        s.distance_2 = balance_distance(s.distance_1, ratio).map_err(CliError::usage)?;
        s.validate().map_err(CliError::usage)?;
        Ok(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_resolve() {
        for c in [Command::Analytic, Command::Sdp, Command::Experiment, Command::Timeseries] {
            RunConfig::new(c).validate().unwrap();
        }
        let g = RunConfig::new(Command::Sdp).two_mass_geometry().unwrap();
        assert_eq!(g, Preset::Fig2Bose.two_mass_geometry(2.5).unwrap());
    }

    #[test]
    fn overrides_apply() {
        let mut c = RunConfig::new(Command::Analytic);
        c.geometry.arm_separation = Some(100e-6);
        let g = c.two_mass_geometry().unwrap();
        assert!((g.x_r - g.x_l - 100e-6).abs() < 1e-18);
        assert!(((g.y_l + g.y_r) / 2.0 - 450e-6).abs() < 1e-18);
        // Centres one arm separation apart put R of system 1 on L of system 2.
        c.geometry.separation = Some(100e-6);
        assert!(matches!(c.validate(), Err(CliError::Usage(m)) if m.contains("coincide")));
    }

    #[test]
    fn balanced_equal_masses() {
        let mut c = RunConfig::new(Command::Experiment);
        c.setup.mass_ratio = Some(1.0);
        let s = c.single_setup().unwrap();
        assert_eq!(s.distance_1, s.distance_2);
        assert_eq!(s.source_mass_1, s.source_mass_2);
    }

    #[test]
    fn rejects_bad_configs() {
        let mut c = RunConfig::new(Command::Sdp);
        c.num_states = 0;
        assert!(c.validate().is_err());
        let mut c = RunConfig::new(Command::Analytic);
        c.time = -1.0;
        assert!(c.validate().is_err());
        c.time = 1.0;
        c.preset = Preset::AppendixC;
        assert!(c.validate().is_err());
        let mut c = RunConfig::new(Command::Experiment);
        c.preset = Preset::Fig1Probing;
        assert!(c.validate().is_err(), "fig1-probing needs masses");
        let mut c = RunConfig::new(Command::Sdp);
        c.format = OutputFormat::Csv;
        assert!(c.validate().is_err());
    }

    #[test]
    fn grid_points() {
        let g = TimeGrid::Range { start: 0.0, stop: 2.5, step: 0.1 }.points().unwrap();
        assert_eq!(g.len(), 26);
        assert_eq!(g[25], 2.5);
        assert_eq!(TimeGrid::Range { start: 0.0, stop: 0.0, step: 0.1 }.points().unwrap(), vec![0.0]);
        assert!(TimeGrid::Range { start: 1.0, stop: 0.0, step: 0.1 }.points().is_err());
        assert!(TimeGrid::Range { start: 0.0, stop: 1.0, step: 0.0 }.points().is_err());
    }
}
