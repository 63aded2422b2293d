//! Gravitational which-path model for two interferometers, and the
//! single-interferometer phase budget used to design the verification
//! experiment.
//!
//! All quantities are SI. Geometry is collinear: every arm sits on one line
//! and separations are absolute coordinate differences.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, HermitianOperator, WhichPath};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalConstants {
    /// Newton's constant, m³ kg⁻¹ s⁻².
    pub g: f64,
    /// Reduced Planck constant, J s.
    pub hbar: f64,
}

impl PhysicalConstants {
    /// CODATA 2018.
    pub const CODATA_2018: PhysicalConstants = PhysicalConstants { g: 6.67430e-11, hbar: 1.054571817e-34 };

    pub fn new(g: f64, hbar: f64) -> Result<Self> {
        if !(g > 0.0 && g.is_finite() && hbar > 0.0 && hbar.is_finite()) {
            return Err(Error::InvalidInput(format!("constants must be positive, got G = {g}, hbar = {hbar}")));
        }
        Ok(Self { g, hbar })
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::CODATA_2018
    }
}

/// Two masses, each in a two-arm superposition, and an interaction time.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwoMassGeometry {
    pub mass_1: f64,
    pub mass_2: f64,
    pub x_l: f64,
    pub x_r: f64,
    pub y_l: f64,
    pub y_r: f64,
    pub time: f64,
}

impl TwoMassGeometry {
    pub fn new(mass_1: f64, mass_2: f64, arms_1: (f64, f64), arms_2: (f64, f64), time: f64) -> Result<Self> {
        let g = Self { mass_1, mass_2, x_l: arms_1.0, x_r: arms_1.1, y_l: arms_2.0, y_r: arms_2.1, time };
        g.validate()?;
        Ok(g)
    }

    /// Two equal interferometers with arm separation `dx` whose centres are
    /// `d` apart: x = ∓dx/2, y = d ∓ dx/2.
    pub fn symmetric_pair(mass: f64, d: f64, dx: f64, time: f64) -> Result<Self> {
        Self::new(mass, mass, (-dx / 2.0, dx / 2.0), (d - dx / 2.0, d + dx / 2.0), time)
    }

    pub fn validate(&self) -> Result<()> {
        let all = [self.mass_1, self.mass_2, self.x_l, self.x_r, self.y_l, self.y_r, self.time];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidGeometry("non-finite parameter".into()));
        }
        if self.mass_1 <= 0.0 || self.mass_2 <= 0.0 {
            return Err(Error::InvalidGeometry(format!(
                "masses must be positive, got {} and {}",
                self.mass_1, self.mass_2
            )));
        }
        if self.time < 0.0 {
            return Err(Error::InvalidGeometry(format!("time must be non-negative, got {}", self.time)));
        }
        for (path, sep) in WhichPath::ALL.iter().zip(self.raw_separations()) {
            if sep <= 0.0 {
                return Err(Error::InvalidGeometry(format!("arms of path {path} coincide (separation {sep})")));
            }
        }
        Ok(())
    }

    fn raw_separations(&self) -> [f64; 4] {
        [
            (self.x_l - self.y_l).abs(),
            (self.x_l - self.y_r).abs(),
            (self.x_r - self.y_l).abs(),
            (self.x_r - self.y_r).abs(),
        ]
    }

    /// |x_a - y_b| in (LL, LR, RL, RR) order.
    pub fn separations(&self) -> Result<[f64; 4]> {
        self.validate()?;
        Ok(self.raw_separations())
    }

    pub fn with_time(&self, time: f64) -> Self {
        Self { time, ..*self }
    }

    /// Relabels system 1 as system 2 and vice versa.
    pub fn swapped(&self) -> Self {
        Self {
            mass_1: self.mass_2,
            mass_2: self.mass_1,
            x_l: self.y_l,
            x_r: self.y_r,
            y_l: self.x_l,
            y_r: self.x_r,
            time: self.time,
        }
    }
}

/// Phase accumulated by each joint arm configuration, in radians.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseVector {
    pub phi_ll: f64,
    pub phi_lr: f64,
    pub phi_rl: f64,
    pub phi_rr: f64,
}

impl PhaseVector {
    pub fn from_array(p: [f64; 4]) -> Self {
        Self { phi_ll: p[0], phi_lr: p[1], phi_rl: p[2], phi_rr: p[3] }
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.phi_ll, self.phi_lr, self.phi_rl, self.phi_rr]
    }

    pub fn get(&self, path: WhichPath) -> f64 {
        self.as_array()[path.index()]
    }

    pub fn shifted(&self, c: f64) -> Self {
        Self::from_array(self.as_array().map(|p| p + c))
    }

    /// diag(e^{iφ_LL}, e^{iφ_LR}, e^{iφ_RL}, e^{iφ_RR})
    pub fn unitary(&self) -> ComplexMatrix {
        ComplexMatrix::from_diagonal(&self.as_array().map(|p| Complex64::from_polar(1.0, p)))
    }

    /// e^{i(φ_a - φ_b)}
    pub fn relative(&self, a: WhichPath, b: WhichPath) -> Complex64 {
        Complex64::from_polar(1.0, self.get(a) - self.get(b))
    }
}

/// Diagonal Hamiltonian -G m₁ m₂ / |x_a - y_b| in which-path order.
pub fn build_hamiltonian(g: &TwoMassGeometry, c: &PhysicalConstants) -> Result<HermitianOperator> {
    let seps = g.separations()?;
    let coupling = c.g * g.mass_1 * g.mass_2;
    Ok(HermitianOperator::from_real_diagonal(&seps.map(|r| -coupling / r)))
}

/// φ_ab = G m₁ m₂ t / (ħ |x_a - y_b|), so that e^{-itH/ħ} = diag(e^{iφ}).
pub fn phases(g: &TwoMassGeometry, c: &PhysicalConstants) -> Result<PhaseVector> {
    let seps = g.separations()?;
    let k = c.g * g.mass_1 * g.mass_2 * g.time / c.hbar;
    Ok(PhaseVector::from_array(seps.map(|r| k / r)))
}

pub fn evolution_unitary(g: &TwoMassGeometry, c: &PhysicalConstants) -> Result<ComplexMatrix> {
    Ok(phases(g, c)?.unitary())
}

/// One interferometer (probe mass `m`, arm separation `Δx`) flanked by two
/// localized source masses on opposite sides of its centre line.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SingleInterferometerSetup {
    pub probe_mass: f64,
    pub arm_separation: f64,
    pub source_mass_1: f64,
    pub source_mass_2: f64,
    pub distance_1: f64,
    pub distance_2: f64,
}

impl SingleInterferometerSetup {
    pub fn validate(&self) -> Result<()> {
        let all = [
            self.probe_mass,
            self.arm_separation,
            self.source_mass_1,
            self.source_mass_2,
            self.distance_1,
            self.distance_2,
        ];
        if all.iter().any(|v| !v.is_finite() || *v < 0.0) {
            return Err(Error::InvalidGeometry(format!("setup parameters must be finite and non-negative: {self:?}")));
        }
        if self.probe_mass == 0.0 || self.source_mass_1 == 0.0 || self.source_mass_2 == 0.0 {
            return Err(Error::InvalidGeometry("masses must be positive".into()));
        }
        let half = self.arm_separation / 2.0;
        for d in [self.distance_1, self.distance_2] {
            if d * d - half * half <= 0.0 {
                return Err(Error::InvalidGeometry(format!(
                    "source distance {d} must exceed half the arm separation {half}"
                )));
            }
        }
        Ok(())
    }

    /// Source-mass terms M_k / (d_k² - Δx²/4), before the G m Δx / ħ prefactor.
    pub fn source_terms(&self) -> Result<(f64, f64)> {
        self.validate()?;
        let q = self.arm_separation * self.arm_separation / 4.0;
        Ok((
            self.source_mass_1 / (self.distance_1 * self.distance_1 - q),
            self.source_mass_2 / (self.distance_2 * self.distance_2 - q),
        ))
    }
}

/// ω_Q = (G m Δx / ħ) (M₁/(d₁² - Δx²/4) - M₂/(d₂² - Δx²/4)), in rad/s.
pub fn omega_q(s: &SingleInterferometerSetup, c: &PhysicalConstants) -> Result<f64> {
    let (t1, t2) = s.source_terms()?;
    Ok(c.g * s.probe_mass * s.arm_separation / c.hbar * (t1 - t2))
}

/// Phase rate of each probe arm due to each source, in rad/s: `[arm][source]`
/// with arm L nearer source 1. Source 1 sits d₁ from the probe centre on
/// the L side, source 2 d₂ away on the R side. Row L minus row R sums to ω_Q.
pub fn arm_phase_rates(s: &SingleInterferometerSetup, c: &PhysicalConstants) -> Result<[[f64; 2]; 2]> {
    s.validate()?;
    let h = s.arm_separation / 2.0;
    let k = c.g * s.probe_mass / c.hbar;
    let (m1, m2) = (s.source_mass_1, s.source_mass_2);
    let (d1, d2) = (s.distance_1, s.distance_2);
    Ok([
        [k * m1 / (d1 - h), k * m2 / (d2 + h)],
        [k * m1 / (d1 + h), k * m2 / (d2 - h)],
    ])
}

/// d₂ = d₁ √(M₂/M₁), the distance that cancels the classical M/d² pull.
pub fn balance_distance(d1: f64, mass_ratio: f64) -> Result<f64> {
    if !(d1 > 0.0 && d1.is_finite() && mass_ratio > 0.0 && mass_ratio.is_finite()) {
        return Err(Error::InvalidInput(format!(
            "balance distance needs positive inputs, got d1 = {d1}, ratio = {mass_ratio}"
        )));
    }
    Ok(d1 * mass_ratio.sqrt())
}

/// Named parameter sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Preset {
    /// Two 10⁻¹⁴ kg masses, Δx = 250 μm, centres 450 μm apart.
    #[serde(rename = "fig2-bose")]
    Fig2Bose,
    /// Single interferometer with 10⁻¹⁴ kg and 2·10⁻¹⁴ kg sources at 325 μm and d₁√2.
    #[serde(rename = "appendixC")]
    AppendixC,
    /// Δx = 10 cm, d₁ = 55 mm, M₂ = 2 M₁; masses supplied by the caller.
    #[serde(rename = "fig1-probing")]
    Fig1Probing,
}

impl Preset {
    pub const ALL: [Preset; 3] = [Preset::Fig2Bose, Preset::AppendixC, Preset::Fig1Probing];

    /// Hold time at which the two-interferometer preset is evaluated by default.
    pub const DEFAULT_TIME: f64 = 2.5;

    pub fn name(self) -> &'static str {
        match self {
            Preset::Fig2Bose => "fig2-bose",
            Preset::AppendixC => "appendixC",
            Preset::Fig1Probing => "fig1-probing",
        }
    }

    /// Two-interferometer geometry at time `t`; only `fig2-bose` has one.
    pub fn two_mass_geometry(self, time: f64) -> Result<TwoMassGeometry> {
        match self {
            Preset::Fig2Bose => TwoMassGeometry::symmetric_pair(1e-14, 450e-6, 250e-6, time),
            other => Err(Error::InvalidInput(format!("preset {other} describes a single interferometer"))),
        }
    }

    /// Single-interferometer setup. `fig1-probing` requires both masses;
    /// `appendixC` ignores them.
    pub fn single_setup(self, probe_mass: Option<f64>, source_mass: Option<f64>) -> Result<SingleInterferometerSetup> {
        match self {
            Preset::AppendixC => {
                let d1 = 125e-6 + 200e-6;
                Ok(SingleInterferometerSetup {
                    probe_mass: 1e-14,
                    arm_separation: 250e-6,
                    source_mass_1: 1e-14,
                    source_mass_2: 2e-14,
                    distance_1: d1,
                    distance_2: balance_distance(d1, 2.0)?,
                })
            }
            Preset::Fig1Probing => {
                let (Some(m), Some(m1)) = (probe_mass, source_mass) else {
                    return Err(Error::InvalidInput(
                        "preset fig1-probing requires the probe and source masses".into(),
                    ));
                };
                let d1 = 55e-3;
                let s = SingleInterferometerSetup {
                    probe_mass: m,
                    arm_separation: 0.10,
                    source_mass_1: m1,
                    source_mass_2: 2.0 * m1,
                    distance_1: d1,
                    distance_2: balance_distance(d1, 2.0)?,
                };
                s.validate()?;
                Ok(s)
            }
            Preset::Fig2Bose => Err(Error::InvalidInput("preset fig2-bose describes two interferometers".into())),
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Preset::ALL
            .into_iter()
            .find(|p| p.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidInput(format!("unknown preset '{s}' (expected fig2-bose, appendixC, fig1-probing)")))
    }
}
