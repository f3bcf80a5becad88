//! Thermal phonon occupation and coupling-regime checks.
//!
//! The thermal formula uses ordinary frequency (`h·ν`, not `ħ·ω`).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Planck constant, J·s (exact SI value).
pub const PLANCK: f64 = 6.626_070_15e-34;
/// Boltzmann constant, J/K (exact SI value).
pub const BOLTZMANN: f64 = 1.380_649e-23;

/// Bose-Einstein occupation `1/(exp(hν/k_BT) − 1)`. `T = 0` gives 0.
pub fn thermal_occupation(freq_hz: f64, temperature_k: f64) -> Result<f64> {
    if !(freq_hz.is_finite() && freq_hz > 0.0) {
        return Err(Error::invalid(
            "frequency",
            format!("must be positive, got {freq_hz} Hz"),
        ));
    }
    if !(temperature_k >= 0.0) || temperature_k.is_infinite() {
        return Err(Error::invalid(
            "temperature",
            format!("must be finite and non-negative, got {temperature_k} K"),
        ));
    }
    if temperature_k == 0.0 {
        return Ok(0.0);
    }
    let x = PLANCK * freq_hz / (BOLTZMANN * temperature_k);
    // exp_m1 overflows to +inf, which maps to 0 for frozen-out modes
    Ok(1.0 / x.exp_m1())
}

/// Temperature at which the occupation of a mode at `freq_hz` equals one:
/// `hν / (k_B ln 2)`.
pub fn unit_occupation_temperature(freq_hz: f64) -> f64 {
    PLANCK * freq_hz / (BOLTZMANN * std::f64::consts::LN_2)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnvironmentParams {
    pub temperature_k: f64,
    /// Ordinary phonon frequency.
    pub phonon_freq_hz: f64,
    /// Γ.
    pub phonon_damping_hz: f64,
    /// γ.
    pub photon_damping_hz: f64,
}

/// Thresholds for the "≫" and "≪" comparisons.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegimeThresholds {
    /// `f / Γ` must exceed this for strong coupling.
    pub strong_coupling_ratio: f64,
    /// `f / γ` must exceed this for negligible photon loss.
    pub photon_loss_ratio: f64,
    /// Thermal occupation must stay below this.
    pub max_thermal_occupation: f64,
}

impl Default for RegimeThresholds {
    fn default() -> Self {
        RegimeThresholds {
            strong_coupling_ratio: 10.0,
            photon_loss_ratio: 10.0,
            max_thermal_occupation: 0.01,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegimeReport {
    pub n_thermal: f64,
    /// `f / Γ`; infinite when `Γ = 0`.
    pub coupling_to_phonon_damping: f64,
    /// `f / γ`; infinite when `γ = 0`.
    pub coupling_to_photon_damping: f64,
    pub strong_coupling: bool,
    pub photon_loss_negligible: bool,
    pub thermal_negligible: bool,
}

fn ratio(num: f64, den: f64) -> f64 {
    if den == 0.0 {
        f64::INFINITY
    } else {
        num / den
    }
}

/// Classifies an effective coupling `coupling_hz` against the environment.
pub fn regime_check(
    coupling_hz: f64,
    env: &EnvironmentParams,
    thresholds: &RegimeThresholds,
) -> Result<RegimeReport> {
    for (name, v) in [
        ("phonon damping", env.phonon_damping_hz),
        ("photon damping", env.photon_damping_hz),
    ] {
        if !(v >= 0.0) {
            return Err(Error::invalid(name, format!("must be non-negative, got {v}")));
        }
    }
    let n_thermal = thermal_occupation(env.phonon_freq_hz, env.temperature_k)?;
    let coupling_hz = coupling_hz.abs();
    let to_phonon = ratio(coupling_hz, env.phonon_damping_hz);
    let to_photon = ratio(coupling_hz, env.photon_damping_hz);
    Ok(RegimeReport {
        n_thermal,
        coupling_to_phonon_damping: to_phonon,
        coupling_to_photon_damping: to_photon,
        strong_coupling: to_phonon > thresholds.strong_coupling_ratio,
        photon_loss_negligible: to_photon > thresholds.photon_loss_ratio,
        thermal_negligible: n_thermal < thresholds.max_thermal_occupation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn room_temperature_and_millikelvin() {
        // 30-digit reference evaluation of the Bose-Einstein formula
        let hot = thermal_occupation(1e10, 300.0).unwrap();
        assert_relative_eq!(hot, 624.598_707_012_129_1, max_relative = 1e-12);
        let cold = thermal_occupation(1e10, 0.01).unwrap();
        assert_relative_eq!(cold, 1.435_992_458_990_322_4e-21, max_relative = 1e-10);
    }

    #[test]
    fn zero_temperature_limit() {
        assert_eq!(thermal_occupation(1e10, 0.0).unwrap(), 0.0);
        assert_eq!(thermal_occupation(1e10, 1e-6).unwrap(), 0.0);
        assert!(thermal_occupation(0.0, 1.0).is_err());
        assert!(thermal_occupation(1e10, -1.0).is_err());
        assert!(thermal_occupation(1e10, f64::NAN).is_err());
    }

    #[test]
    fn unit_occupation_crossing() {
        let t = unit_occupation_temperature(1e10);
        assert_relative_eq!(t, 0.692_384_418_196_615_5, max_relative = 1e-14);
        assert_relative_eq!(thermal_occupation(1e10, t).unwrap(), 1.0, max_relative = 1e-12);
    }

    #[test]
    fn monotone_in_frequency_and_temperature() {
        let mut prev = f64::INFINITY;
        for i in 1..200 {
            let n = thermal_occupation(1e8 * i as f64, 1.0).unwrap();
            assert!(n < prev);
            prev = n;
        }
        let mut prev = 0.0;
        for i in 1..200 {
            let n = thermal_occupation(1e10, 0.05 * i as f64).unwrap();
            assert!(n > prev);
            prev = n;
        }
    }

    #[test]
    fn occupation_inverts_boltzmann_factor() {
        for (nu, t) in [(1e10, 300.0), (1e10, 1.0), (5e9, 0.1), (1e12, 30.0)] {
            let n = thermal_occupation(nu, t).unwrap();
            let x = PLANCK * nu / (BOLTZMANN * t);
            assert!((n * x.exp_m1() - 1.0).abs() < 1e-12);
        }
    }

    fn env(gamma_phonon: f64) -> EnvironmentParams {
        EnvironmentParams {
            temperature_k: 0.01,
            phonon_freq_hz: 1e10,
            phonon_damping_hz: gamma_phonon,
            photon_damping_hz: 1e5,
        }
    }

    #[test]
    fn strong_coupling_classification() {
        let t = RegimeThresholds::default();
        let r = regime_check(1e9, &env(1e6), &t).unwrap();
        assert!(r.strong_coupling);
        assert_eq!(r.coupling_to_phonon_damping, 1000.0);
        assert!(r.thermal_negligible);
        assert!(r.photon_loss_negligible);

        let r = regime_check(1e6, &env(1e6), &t).unwrap();
        assert!(!r.strong_coupling);
        assert_eq!(r.coupling_to_phonon_damping, 1.0);

        let r = regime_check(1e6, &env(0.0), &t).unwrap();
        assert!(r.strong_coupling);
        assert!(r.coupling_to_phonon_damping.is_infinite());

        let hot = EnvironmentParams {
            temperature_k: 300.0,
            ..env(1e6)
        };
        assert!(!regime_check(1e9, &hot, &t).unwrap().thermal_negligible);
        assert!(regime_check(1e9, &env(-1.0), &t).is_err());
    }
}
