//! Scenario configuration: a TOML file whose keys carry their unit.
//!
//! Every key has a default, so an empty file describes the silicon-nanowire
//! reference point (g = 1 MHz, u = 1 MHz, 10¹² pump photons/s, Ω = 10 GHz).

use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::antistokes::AntiStokesParams;
use crate::environment::{EnvironmentParams, RegimeThresholds};
use crate::error::Error;
use crate::model::{
    pump_steady_state, Branch, BranchDispersion, CouplingParams, PhononBranch, PumpDrive,
    PumpField, GHZ_PER_MHZ, HZ_PER_GHZ, HZ_PER_MHZ,
};
use crate::stokes::StokesParams;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("malformed config: {0}")]
    Parse(#[from] toml::de::Error),
    #[error("invalid config: {0}")]
    Invalid(String),
    #[error(transparent)]
    Model(#[from] Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct WaveguideSection {
    pub branch1_offset_ghz: f64,
    pub branch2_offset_ghz: f64,
    /// GHz per wavenumber unit, shared by both branches.
    pub group_velocity_ghz: f64,
}

impl Default for WaveguideSection {
    fn default() -> Self {
        WaveguideSection {
            branch1_offset_ghz: 200.0,
            branch2_offset_ghz: 100.0,
            group_velocity_ghz: 1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PhononSection {
    pub frequency_ghz: f64,
}

impl Default for PhononSection {
    fn default() -> Self {
        PhononSection {
            frequency_ghz: 10.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CouplingSection {
    pub g_s_mhz: f64,
    pub g_s_phase_rad: f64,
    pub g_as_mhz: f64,
    pub g_as_phase_rad: f64,
}

impl Default for CouplingSection {
    fn default() -> Self {
        CouplingSection {
            g_s_mhz: 1.0,
            g_s_phase_rad: 0.0,
            g_as_mhz: 1.0,
            g_as_phase_rad: 0.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PumpSection {
    pub n_in_per_s: f64,
    pub u_mhz: f64,
    pub omega_hz: f64,
    pub k_p: f64,
    /// 1 or 2.
    pub branch: u8,
}

impl Default for PumpSection {
    fn default() -> Self {
        PumpSection {
            n_in_per_s: 1e12,
            u_mhz: 1.0,
            omega_hz: 1e15,
            k_p: 900.0,
            branch: 2,
        }
    }
}

/// Half detunings `δ` used by single-point commands.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OperatingPointSection {
    pub delta_s_ghz: f64,
    pub delta_as_ghz: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EnvironmentSection {
    pub temperature_k: f64,
    pub phonon_damping_mhz: f64,
    pub photon_damping_mhz: f64,
    pub strong_coupling_ratio: f64,
}

impl Default for EnvironmentSection {
    fn default() -> Self {
        EnvironmentSection {
            temperature_k: 0.01,
            phonon_damping_mhz: 1.0,
            photon_damping_mhz: 0.1,
            strong_coupling_ratio: 10.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepSection {
    pub min_ghz: f64,
    pub max_ghz: f64,
    pub points: usize,
}

impl Default for SweepSection {
    fn default() -> Self {
        SweepSection {
            min_ghz: -5.0,
            max_ghz: 5.0,
            points: 201,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OracleSection {
    pub truncation: usize,
}

impl Default for OracleSection {
    fn default() -> Self {
        OracleSection { truncation: 30 }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputSection {
    pub format: OutputFormat,
    pub path: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScenarioConfig {
    pub waveguide: WaveguideSection,
    pub phonon: PhononSection,
    pub coupling: CouplingSection,
    pub pump: PumpSection,
    pub operating_point: OperatingPointSection,
    pub environment: EnvironmentSection,
    pub sweep: SweepSection,
    pub oracle: OracleSection,
    pub output: OutputSection,
}

impl ScenarioConfig {
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_toml(&text)
    }

    pub fn from_toml(text: &str) -> Result<Self, ConfigError> {
        let cfg: ScenarioConfig = toml::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        self.dispersion()?;
        self.phonon()?;
        self.pump_field()?;
        self.sweep_range()?;
        if self.pump.branch != 1 && self.pump.branch != 2 {
            return Err(ConfigError::Invalid(format!(
                "pump.branch must be 1 or 2, got {}",
                self.pump.branch
            )));
        }
        let env = &self.environment;
        if !(env.temperature_k > 0.0) {
            return Err(ConfigError::Invalid(
                "environment.temperature_k must be positive".into(),
            ));
        }
        if !(env.phonon_damping_mhz >= 0.0 && env.photon_damping_mhz >= 0.0) {
            return Err(ConfigError::Invalid("damping rates must be non-negative".into()));
        }
        if !(env.strong_coupling_ratio > 0.0) {
            return Err(ConfigError::Invalid(
                "environment.strong_coupling_ratio must be positive".into(),
            ));
        }
        for (key, v) in [
            ("coupling.g_s_mhz", self.coupling.g_s_mhz),
            ("coupling.g_as_mhz", self.coupling.g_as_mhz),
            ("coupling.g_s_phase_rad", self.coupling.g_s_phase_rad),
            ("coupling.g_as_phase_rad", self.coupling.g_as_phase_rad),
            ("operating_point.delta_s_ghz", self.operating_point.delta_s_ghz),
            ("operating_point.delta_as_ghz", self.operating_point.delta_as_ghz),
        ] {
            if !v.is_finite() {
                return Err(ConfigError::Invalid(format!("{key} must be finite")));
            }
        }
        Ok(())
    }

    pub fn dispersion(&self) -> Result<BranchDispersion, Error> {
        BranchDispersion::new(
            self.waveguide.branch1_offset_ghz,
            self.waveguide.branch2_offset_ghz,
            self.waveguide.group_velocity_ghz,
        )
    }

    pub fn phonon(&self) -> Result<PhononBranch, Error> {
        PhononBranch::new(self.phonon.frequency_ghz)
    }

    pub fn pump_drive(&self) -> PumpDrive {
        PumpDrive {
            n_in: self.pump.n_in_per_s,
            u_hz: self.pump.u_mhz * HZ_PER_MHZ,
            omega_hz: self.pump.omega_hz,
            k: self.pump.k_p,
            branch: if self.pump.branch == 1 {
                Branch::One
            } else {
                Branch::Two
            },
        }
    }

    pub fn pump_field(&self) -> Result<PumpField, Error> {
        pump_steady_state(&self.pump_drive())
    }

    /// Bare couplings converted to GHz.
    pub fn couplings(&self) -> CouplingParams {
        let c = &self.coupling;
        CouplingParams {
            stokes: Complex64::from_polar(c.g_s_mhz * GHZ_PER_MHZ, c.g_s_phase_rad),
            anti_stokes: Complex64::from_polar(c.g_as_mhz * GHZ_PER_MHZ, c.g_as_phase_rad),
        }
    }

    /// Real Stokes coupling `|g_s|·√n_p` in GHz; the phase of `g_s` is
    /// absorbed into the phonon mode.
    pub fn stokes_coupling(&self) -> Result<f64, Error> {
        let pump = self.pump_field()?;
        Ok(crate::model::effective_coupling(self.couplings().stokes, &pump).norm())
    }

    pub fn antistokes_coupling(&self) -> Result<Complex64, Error> {
        let pump = self.pump_field()?;
        Ok(crate::model::effective_coupling(self.couplings().anti_stokes, &pump))
    }

    pub fn stokes_params(&self, delta_s: f64) -> Result<StokesParams, Error> {
        Ok(StokesParams::from_half_detuning(
            delta_s,
            self.phonon.frequency_ghz,
            self.stokes_coupling()?,
        ))
    }

    pub fn antistokes_params(&self, delta_as: f64) -> Result<AntiStokesParams, Error> {
        Ok(AntiStokesParams::from_half_detuning(
            delta_as,
            self.phonon.frequency_ghz,
            self.antistokes_coupling()?,
        ))
    }

    pub fn environment_params(&self) -> EnvironmentParams {
        EnvironmentParams {
            temperature_k: self.environment.temperature_k,
            phonon_freq_hz: self.phonon.frequency_ghz * HZ_PER_GHZ,
            phonon_damping_hz: self.environment.phonon_damping_mhz * HZ_PER_MHZ,
            photon_damping_hz: self.environment.photon_damping_mhz * HZ_PER_MHZ,
        }
    }

    pub fn regime_thresholds(&self) -> RegimeThresholds {
        RegimeThresholds {
            strong_coupling_ratio: self.environment.strong_coupling_ratio,
            ..RegimeThresholds::default()
        }
    }

    pub fn sweep_range(&self) -> Result<SweepRange, ConfigError> {
        SweepRange::new(self.sweep.min_ghz, self.sweep.max_ghz, self.sweep.points)
    }
}

/// Evenly spaced sweep `min..=max` with `points ≥ 2` samples.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRange {
    pub min: f64,
    pub max: f64,
    pub points: usize,
}

impl SweepRange {
    pub fn new(min: f64, max: f64, points: usize) -> Result<Self, ConfigError> {
        if !(min.is_finite() && max.is_finite() && min < max) {
            return Err(ConfigError::Invalid(format!(
                "sweep needs finite min < max, got [{min}, {max}]"
            )));
        }
        if points < 2 {
            return Err(ConfigError::Invalid(format!(
                "sweep needs at least 2 points, got {points}"
            )));
        }
        Ok(SweepRange { min, max, points })
    }

    pub fn linear(&self) -> Vec<f64> {
        let step = (self.max - self.min) / (self.points - 1) as f64;
        (0..self.points)
            .map(|i| {
                if i == self.points - 1 {
                    self.max
                } else {
                    self.min + step * i as f64
                }
            })
            .collect()
    }

    /// Log-spaced samples; requires `min > 0`.
    pub fn geometric(&self) -> Result<Vec<f64>, ConfigError> {
        if !(self.min > 0.0) {
            return Err(ConfigError::Invalid(format!(
                "geometric sweep needs min > 0, got {}",
                self.min
            )));
        }
        let (lo, hi) = (self.min.ln(), self.max.ln());
        let step = (hi - lo) / (self.points - 1) as f64;
        Ok((0..self.points)
            .map(|i| match i {
                0 => self.min,
                i if i == self.points - 1 => self.max,
                i => (lo + step * i as f64).exp(),
            })
            .collect())
    }
}
