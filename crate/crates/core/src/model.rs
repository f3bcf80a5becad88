//! Phase matching and pump linearization.
//!
//! Frequencies and couplings are stored in GHz with ħ factored out, so an
//! "energy" is always reported as a frequency. Kinematic quantities (branch
//! offsets and wavenumbers) only need to be mutually consistent:
//! a wavenumber is measured in the units that make `v_g·k` a frequency.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const GHZ_PER_MHZ: f64 = 1e-3;
pub const HZ_PER_GHZ: f64 = 1e9;
pub const HZ_PER_MHZ: f64 = 1e6;

/// One of the two optical spatial branches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Branch {
    One,
    Two,
}

impl Branch {
    pub fn other(self) -> Branch {
        match self {
            Branch::One => Branch::Two,
            Branch::Two => Branch::One,
        }
    }

    fn index(self) -> usize {
        match self {
            Branch::One => 0,
            Branch::Two => 1,
        }
    }
}

/// Linear dispersion `ω_i(k) = ω_i0 + v_g·k` of the two optical branches,
/// which share one group velocity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BranchDispersion {
    pub offsets: [f64; 2],
    pub group_velocity: f64,
}

impl BranchDispersion {
    pub fn new(offset_one: f64, offset_two: f64, group_velocity: f64) -> Result<Self> {
        if !(group_velocity.is_finite() && group_velocity > 0.0) {
            return Err(Error::ZeroGroupVelocity(group_velocity));
        }
        for offset in [offset_one, offset_two] {
            if !(offset.is_finite() && offset >= 0.0) {
                return Err(Error::invalid(
                    "branch offset",
                    format!("must be finite and non-negative, got {offset}"),
                ));
            }
        }
        Ok(BranchDispersion {
            offsets: [offset_one, offset_two],
            group_velocity,
        })
    }

    pub fn offset(&self, branch: Branch) -> f64 {
        self.offsets[branch.index()]
    }

    pub fn photon_frequency(&self, branch: Branch, k: f64) -> f64 {
        photon_frequency(self.offset(branch), self.group_velocity, k)
    }

    /// Inverse of the dispersion on `branch`.
    pub fn wavenumber(&self, branch: Branch, omega: f64) -> Result<f64> {
        if self.group_velocity == 0.0 || !self.group_velocity.is_finite() {
            return Err(Error::ZeroGroupVelocity(self.group_velocity));
        }
        Ok((omega - self.offset(branch)) / self.group_velocity)
    }
}

pub fn photon_frequency(offset: f64, group_velocity: f64, k: f64) -> f64 {
    offset + group_velocity * k
}

/// Dispersionless optical phonon.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhononBranch {
    pub frequency: f64,
}

impl PhononBranch {
    pub fn new(frequency: f64) -> Result<Self> {
        if !(frequency.is_finite() && frequency >= 0.0) {
            return Err(Error::invalid(
                "phonon frequency",
                format!("must be finite and non-negative, got {frequency}"),
            ));
        }
        Ok(PhononBranch { frequency })
    }
}

/// Photon-phonon coupling constants in GHz. Complex phases are allowed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CouplingParams {
    pub stokes: Complex64,
    pub anti_stokes: Complex64,
}

/// External drive of the pump mode through the input multiplexer.
///
/// `n_in` is a photon flux (photons/s) and `u_hz` a rate (Hz); their ratio is
/// used directly as the intracavity photon number.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PumpDrive {
    pub n_in: f64,
    pub u_hz: f64,
    /// Absolute optical frequency. Only defines the rotating frame.
    pub omega_hz: f64,
    pub k: f64,
    pub branch: Branch,
}

impl PumpDrive {
    /// The pump's (ω, k) point, placed on its own branch dispersion.
    pub fn point(&self, dispersion: &BranchDispersion) -> PumpPoint {
        PumpPoint {
            branch: self.branch,
            omega: dispersion.photon_frequency(self.branch, self.k),
            k: self.k,
        }
    }
}

/// A pump photon in kinematic units. It need not lie on its branch's
/// dispersion: the matching solvers take it as given.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PumpPoint {
    pub branch: Branch,
    pub omega: f64,
    pub k: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Process {
    Stokes,
    AntiStokes,
}

/// Phase-matched (ω, k) triplet for one scattering process.
///
/// `q_phonon` is signed: its sign reports whether the phonon co- or
/// counter-propagates with the photons for the given branch geometry.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProcessKinematics {
    pub process: Process,
    pub omega_pump: f64,
    pub k_pump: f64,
    pub scattered_branch: Branch,
    pub omega_scattered: f64,
    pub k_scattered: f64,
    pub q_phonon: f64,
    pub omega_phonon: f64,
}

impl ProcessKinematics {
    /// `ω_pump − ω_scattered ± Ω`, zero for an exactly matched process.
    pub fn energy_mismatch(&self) -> f64 {
        match self.process {
            Process::Stokes => self.omega_pump - self.omega_scattered - self.omega_phonon,
            Process::AntiStokes => self.omega_scattered - self.omega_pump - self.omega_phonon,
        }
    }

    pub fn momentum_mismatch(&self) -> f64 {
        self.k_pump - self.k_scattered - self.q_phonon
    }
}

fn solve_matching(
    process: Process,
    dispersion: &BranchDispersion,
    phonon: &PhononBranch,
    pump: &PumpPoint,
) -> Result<ProcessKinematics> {
    let scattered_branch = pump.branch.other();
    let omega_scattered = match process {
        Process::Stokes => pump.omega - phonon.frequency,
        Process::AntiStokes => pump.omega + phonon.frequency,
    };
    let k_scattered = dispersion.wavenumber(scattered_branch, omega_scattered)?;
    Ok(ProcessKinematics {
        process,
        omega_pump: pump.omega,
        k_pump: pump.k,
        scattered_branch,
        omega_scattered,
        k_scattered,
        q_phonon: pump.k - k_scattered,
        omega_phonon: phonon.frequency,
    })
}

/// Stokes matching: `ω_s = ω_p − Ω` on the other branch, `q_s = k_p − k_s`.
pub fn solve_stokes_matching(
    dispersion: &BranchDispersion,
    phonon: &PhononBranch,
    pump: &PumpPoint,
) -> Result<ProcessKinematics> {
    solve_matching(Process::Stokes, dispersion, phonon, pump)
}

/// Anti-Stokes matching: `ω_as = ω_p + Ω` on the other branch, `q_as = k_p − k_as`.
pub fn solve_antistokes_matching(
    dispersion: &BranchDispersion,
    phonon: &PhononBranch,
    pump: &PumpPoint,
) -> Result<ProcessKinematics> {
    solve_matching(Process::AntiStokes, dispersion, phonon, pump)
}

/// Classical steady-state pump inside the waveguide.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PumpField {
    pub n_p: f64,
    pub amplitude: f64,
}

/// Steady state of `dã_p/dt = −u ã_p + √u c̃_in`: `n_p = n_in / u`.
pub fn pump_steady_state(drive: &PumpDrive) -> Result<PumpField> {
    if !(drive.u_hz.is_finite() && drive.u_hz > 0.0) {
        return Err(Error::InvalidMultiplexerCoupling(drive.u_hz));
    }
    if !(drive.n_in.is_finite() && drive.n_in >= 0.0) {
        return Err(Error::invalid(
            "n_in",
            format!("pump flux must be finite and non-negative, got {}", drive.n_in),
        ));
    }
    let n_p = drive.n_in / drive.u_hz;
    Ok(PumpField {
        n_p,
        amplitude: n_p.sqrt(),
    })
}

/// Pump-enhanced coupling `f = g·√n_p`. The phase of `g` is kept.
pub fn effective_coupling(g: Complex64, pump: &PumpField) -> Complex64 {
    g * pump.amplitude
}
