//! Anti-Stokes process: beam-splitter mixing of photon and phonon into
//! polaritons.
//!
//! `H = Δω a†a + Ω b†b + f* b†a + f a†b` is diagonalized by the collective
//! operators `A± = X± b + Y± a` with
//!
//! ```text
//! X± = ±√((Δ ∓ δ)/2Δ),   Y± = f*/√(2Δ(Δ ∓ δ)),   Ω± = (Δω + Ω)/2 ± Δ
//! ```
//!
//! where `δ = (Δω − Ω)/2` and `Δ = √(δ² + |f|²)`. `X` is the phonon
//! amplitude and `Y` the photon amplitude.
//!
//! Frequencies in GHz are read as angular frequencies (rad/ns), so times are
//! in ns and the dynamics carry no factor 2π.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AntiStokesParams {
    /// `Δω_as = ω_as − ω_p`.
    pub detuning: f64,
    /// `Ω_as`.
    pub phonon: f64,
    /// `f_as`; its phase enters only the photon amplitudes.
    pub coupling: Complex64,
}

impl AntiStokesParams {
    pub fn new(detuning: f64, phonon: f64, coupling: Complex64) -> Self {
        AntiStokesParams {
            detuning,
            phonon,
            coupling,
        }
    }

    /// `Δω_as = Ω_as + 2δ_as`.
    pub fn from_half_detuning(delta_as: f64, phonon: f64, coupling: Complex64) -> Self {
        AntiStokesParams::new(phonon + 2.0 * delta_as, phonon, coupling)
    }

    /// `δ_as = (Δω_as − Ω_as)/2`.
    pub fn half_detuning(&self) -> f64 {
        0.5 * (self.detuning - self.phonon)
    }

    /// `Δ_as = √(δ_as² + |f_as|²)`.
    pub fn splitting(&self) -> f64 {
        self.half_detuning().hypot(self.coupling.norm())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Polariton {
    Upper,
    Lower,
}

impl Polariton {
    fn sign(self) -> f64 {
        match self {
            Polariton::Upper => 1.0,
            Polariton::Lower => -1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PolaritonDiagonalization {
    pub omega_plus: f64,
    pub omega_minus: f64,
    pub x_plus: Complex64,
    pub x_minus: Complex64,
    pub y_plus: Complex64,
    pub y_minus: Complex64,
    /// `Δ_as`.
    pub splitting: f64,
    /// `δ_as`.
    pub half_detuning: f64,
}

impl PolaritonDiagonalization {
    pub fn frequency(&self, mode: Polariton) -> f64 {
        match mode {
            Polariton::Upper => self.omega_plus,
            Polariton::Lower => self.omega_minus,
        }
    }

    /// Phonon amplitude `X±`.
    pub fn phonon_amplitude(&self, mode: Polariton) -> Complex64 {
        match mode {
            Polariton::Upper => self.x_plus,
            Polariton::Lower => self.x_minus,
        }
    }

    /// Photon amplitude `Y±`.
    pub fn photon_amplitude(&self, mode: Polariton) -> Complex64 {
        match mode {
            Polariton::Upper => self.y_plus,
            Polariton::Lower => self.y_minus,
        }
    }

    /// `|X±|² = (Δ ∓ δ)/2Δ`, evaluated without the square roots.
    pub fn phonon_fraction(&self, mode: Polariton) -> f64 {
        (self.splitting - mode.sign() * self.half_detuning) / (2.0 * self.splitting)
    }

    /// `|Y±|² = (Δ ± δ)/2Δ`.
    pub fn photon_fraction(&self, mode: Polariton) -> f64 {
        (self.splitting + mode.sign() * self.half_detuning) / (2.0 * self.splitting)
    }
}

pub fn diagonalize_antistokes(p: &AntiStokesParams) -> Result<PolaritonDiagonalization> {
    if !(p.detuning.is_finite() && p.phonon.is_finite()) {
        return Err(Error::invalid("anti-Stokes detuning", "must be finite"));
    }
    if !(p.coupling.re.is_finite() && p.coupling.im.is_finite()) {
        return Err(Error::invalid("anti-Stokes coupling", "must be finite"));
    }
    let delta = p.half_detuning();
    let splitting = p.splitting();
    if splitting == 0.0 {
        return Err(Error::DegenerateCoupling);
    }
    let mean = 0.5 * (p.detuning + p.phonon);
    // f*/√(2Δ(Δ ∓ δ)) = e^{−iφ}√((Δ ± δ)/2Δ) since |f|² = (Δ − δ)(Δ + δ);
    // the right-hand form stays finite in the uncoupled limit.
    let phase = Complex64::from_polar(1.0, -p.coupling.arg());
    let root = |s: f64| ((splitting + s * delta) / (2.0 * splitting)).sqrt();
    Ok(PolaritonDiagonalization {
        omega_plus: mean + splitting,
        omega_minus: mean - splitting,
        x_plus: Complex64::new(root(-1.0), 0.0),
        x_minus: Complex64::new(-root(1.0), 0.0),
        y_plus: phase * root(1.0),
        y_minus: phase * root(-1.0),
        splitting,
        half_detuning: delta,
    })
}

/// One term `amplitude · |photons, phonons⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FockTerm {
    pub photons: usize,
    pub phonons: usize,
    pub amplitude: Complex64,
}

/// `A±†|n, m⟩ = Y±* √(n+1) |n+1, m⟩ + X±* √(m+1) |n, m+1⟩`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CollectiveExcitation {
    pub terms: [FockTerm; 2],
}

impl CollectiveExcitation {
    pub fn norm(&self) -> f64 {
        self.terms
            .iter()
            .map(|t| t.amplitude.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn normalized(&self) -> CollectiveExcitation {
        let norm = self.norm();
        let mut out = self.clone();
        for t in out.terms.iter_mut() {
            t.amplitude /= norm;
        }
        out
    }
}

pub fn apply_collective_creation(
    mode: Polariton,
    photons: usize,
    phonons: usize,
    diag: &PolaritonDiagonalization,
) -> CollectiveExcitation {
    let y = diag.photon_amplitude(mode).conj();
    let x = diag.phonon_amplitude(mode).conj();
    CollectiveExcitation {
        terms: [
            FockTerm {
                photons: photons + 1,
                phonons,
                amplitude: y * ((photons + 1) as f64).sqrt(),
            },
            FockTerm {
                photons,
                phonons: phonons + 1,
                amplitude: x * ((phonons + 1) as f64).sqrt(),
            },
        ],
    }
}

/// Photon population after time `t` (ns) starting from `|1, 0⟩`:
/// `1 − (|f|²/Δ²) sin²(Δt)`.
pub fn photon_population_dynamics(p: &AntiStokesParams, t: f64) -> f64 {
    let splitting = p.splitting();
    if splitting == 0.0 {
        return 1.0;
    }
    let mixing = p.coupling.norm_sqr() / (splitting * splitting);
    1.0 - mixing * (splitting * t).sin().powi(2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2};

    fn real(f: f64) -> Complex64 {
        Complex64::new(f, 0.0)
    }

    #[test]
    fn resonance() {
        let d = diagonalize_antistokes(&AntiStokesParams::new(10.0, 10.0, real(1.0))).unwrap();
        assert_eq!(d.omega_plus, 11.0);
        assert_eq!(d.omega_minus, 9.0);
        assert_eq!(d.omega_plus - d.omega_minus, 2.0);
        for mode in [Polariton::Upper, Polariton::Lower] {
            assert_eq!(d.phonon_fraction(mode), 0.5);
            assert_eq!(d.photon_fraction(mode), 0.5);
        }
        assert_relative_eq!(d.x_plus.re, FRAC_1_SQRT_2, max_relative = 1e-15);
        assert_relative_eq!(d.x_minus.re, -FRAC_1_SQRT_2, max_relative = 1e-15);
        assert_relative_eq!(d.y_plus.re, FRAC_1_SQRT_2, max_relative = 1e-15);
        assert_relative_eq!(d.y_minus.re, FRAC_1_SQRT_2, max_relative = 1e-15);
    }

    #[test]
    fn detuned_amplitudes() {
        let d = diagonalize_antistokes(&AntiStokesParams::from_half_detuning(1.0, 10.0, real(1.0)))
            .unwrap();
        assert_relative_eq!(d.splitting, 2f64.sqrt(), max_relative = 1e-15);
        assert_relative_eq!(d.omega_plus, 12.414_213_562_373_096, max_relative = 1e-15);
        assert_relative_eq!(d.omega_minus, 9.585_786_437_626_905, max_relative = 1e-15);
        assert_relative_eq!(d.x_plus.re, 0.382_683_432_365_089_8, max_relative = 1e-14);
        assert_relative_eq!(d.y_plus.re, 0.923_879_532_511_286_7, max_relative = 1e-14);
        assert_relative_eq!(d.x_minus.re, -0.923_879_532_511_286_7, max_relative = 1e-14);
        assert_relative_eq!(d.y_minus.re, 0.382_683_432_365_089_8, max_relative = 1e-14);
        assert_relative_eq!(d.phonon_fraction(Polariton::Upper), 0.146_446_609_406_726_24, max_relative = 1e-14);
        assert_relative_eq!(d.photon_fraction(Polariton::Upper), 0.853_553_390_593_273_8, max_relative = 1e-14);
    }

    #[test]
    fn amplitudes_match_the_printed_photon_formula() {
        // Y± = f*/√(2Δ(Δ ∓ δ)) away from the uncoupled limit
        let f = Complex64::from_polar(0.8, 1.1);
        let p = AntiStokesParams::from_half_detuning(0.6, 10.0, f);
        let d = diagonalize_antistokes(&p).unwrap();
        let big = d.splitting;
        let delta = d.half_detuning;
        let y_plus = f.conj() / (2.0 * big * (big - delta)).sqrt();
        let y_minus = f.conj() / (2.0 * big * (big + delta)).sqrt();
        assert!((d.y_plus - y_plus).norm() < 1e-14);
        assert!((d.y_minus - y_minus).norm() < 1e-14);
    }

    #[test]
    fn uncoupled_limit() {
        let d = diagonalize_antistokes(&AntiStokesParams::from_half_detuning(2.0, 10.0, real(0.0)))
            .unwrap();
        assert_eq!(d.omega_plus, 14.0);
        assert_eq!(d.omega_minus, 10.0);
        assert_eq!(d.x_plus.norm(), 0.0);
        assert_eq!(d.y_plus.norm(), 1.0);
        assert_eq!(d.x_minus.norm(), 1.0);
        assert_eq!(d.y_minus.norm(), 0.0);

        let d = diagonalize_antistokes(&AntiStokesParams::from_half_detuning(-2.0, 10.0, real(0.0)))
            .unwrap();
        assert_eq!(d.omega_plus, 10.0);
        assert_eq!(d.phonon_fraction(Polariton::Upper), 1.0);
        assert_eq!(d.photon_fraction(Polariton::Lower), 1.0);
    }

    #[test]
    fn degenerate_point_is_an_error() {
        assert_eq!(
            diagonalize_antistokes(&AntiStokesParams::new(10.0, 10.0, real(0.0))),
            Err(Error::DegenerateCoupling)
        );
    }

    #[test]
    fn collective_creation_on_vacuum_gives_bell_pair() {
        let d = diagonalize_antistokes(&AntiStokesParams::new(10.0, 10.0, real(1.0))).unwrap();
        let plus = apply_collective_creation(Polariton::Upper, 0, 0, &d).normalized();
        assert_eq!((plus.terms[0].photons, plus.terms[0].phonons), (1, 0));
        assert_eq!((plus.terms[1].photons, plus.terms[1].phonons), (0, 1));
        assert_relative_eq!(plus.terms[0].amplitude.re, FRAC_1_SQRT_2, max_relative = 1e-15);
        assert_relative_eq!(plus.terms[1].amplitude.re, FRAC_1_SQRT_2, max_relative = 1e-15);

        let minus = apply_collective_creation(Polariton::Lower, 0, 0, &d).normalized();
        assert_relative_eq!(minus.terms[0].amplitude.re, FRAC_1_SQRT_2, max_relative = 1e-15);
        assert_relative_eq!(minus.terms[1].amplitude.re, -FRAC_1_SQRT_2, max_relative = 1e-15);
    }

    #[test]
    fn collective_creation_on_occupied_state() {
        let d = diagonalize_antistokes(&AntiStokesParams::new(10.0, 10.0, real(1.0))).unwrap();
        let raw = apply_collective_creation(Polariton::Upper, 1, 1, &d);
        assert_relative_eq!(raw.terms[0].amplitude.re, 1.0, max_relative = 1e-15);
        assert_relative_eq!(raw.terms[1].amplitude.re, 1.0, max_relative = 1e-15);
        assert_eq!((raw.terms[0].photons, raw.terms[0].phonons), (2, 1));
        assert_eq!((raw.terms[1].photons, raw.terms[1].phonons), (1, 2));
        let n = raw.normalized();
        assert_relative_eq!(n.norm(), 1.0, max_relative = 1e-15);
        assert_relative_eq!(n.terms[0].amplitude.re, FRAC_1_SQRT_2, max_relative = 1e-15);
    }

    #[test]
    fn rabi_dynamics_points() {
        let res = AntiStokesParams::new(10.0, 10.0, real(1.0));
        assert_eq!(photon_population_dynamics(&res, 0.0), 1.0);
        assert!(photon_population_dynamics(&res, FRAC_PI_2).abs() < 1e-15);
        let det = AntiStokesParams::from_half_detuning(1.0, 10.0, real(1.0));
        let t = std::f64::consts::PI / (2.0 * 2f64.sqrt());
        assert_relative_eq!(photon_population_dynamics(&det, t), 0.5, max_relative = 1e-14);
        let uncoupled = AntiStokesParams::new(10.0, 10.0, real(0.0));
        assert_eq!(photon_population_dynamics(&uncoupled, 3.0), 1.0);
    }

    #[test]
    fn fraction_crossover() {
        let far = |delta: f64| {
            diagonalize_antistokes(&AntiStokesParams::from_half_detuning(delta, 10.0, real(1.0)))
                .unwrap()
        };
        // Lower polariton follows the lower bare mode: the phonon when the
        // photon detuning sits above it.
        let d = far(1e4);
        assert!(d.phonon_fraction(Polariton::Lower) > 1.0 - 1e-7);
        assert!(d.photon_fraction(Polariton::Upper) > 1.0 - 1e-7);
        let d = far(-1e4);
        assert!(d.photon_fraction(Polariton::Lower) > 1.0 - 1e-7);
        assert!(d.phonon_fraction(Polariton::Upper) > 1.0 - 1e-7);
    }

    proptest! {
        #[test]
        fn polariton_identities(delta in -5.0f64..5.0, mag in 0.01f64..3.0, phase in -3.1f64..3.1) {
            let f = Complex64::from_polar(mag, phase);
            let p = AntiStokesParams::from_half_detuning(delta, 10.0, f);
            let d = diagonalize_antistokes(&p).unwrap();
            for mode in [Polariton::Upper, Polariton::Lower] {
                let n = d.phonon_amplitude(mode).norm_sqr() + d.photon_amplitude(mode).norm_sqr();
                prop_assert!((n - 1.0).abs() < 1e-12);
                // eigenvector of [[Δω, f], [f*, Ω]] in (photon, phonon) order
                let v = [d.photon_amplitude(mode).conj(), d.phonon_amplitude(mode).conj()];
                let w = d.frequency(mode);
                let r0 = p.detuning * v[0] + f * v[1] - w * v[0];
                let r1 = f.conj() * v[0] + p.phonon * v[1] - w * v[1];
                prop_assert!(r0.norm() < 1e-12 && r1.norm() < 1e-12);
            }
            let overlap = d.x_plus.conj() * d.x_minus + d.y_plus.conj() * d.y_minus;
            prop_assert!(overlap.norm() < 1e-12);
            prop_assert!((d.omega_plus - d.omega_minus - 2.0 * d.splitting).abs() < 1e-12);
            prop_assert!((d.omega_plus + d.omega_minus - p.detuning - p.phonon).abs() < 1e-12);
            prop_assert!(d.splitting >= delta.abs());
        }

        #[test]
        fn populations_sum_to_one(delta in -5.0f64..5.0, mag in 0.0f64..3.0, t in 0.0f64..100.0) {
            let p = AntiStokesParams::from_half_detuning(delta, 10.0, Complex64::new(mag, 0.0));
            let photon = photon_population_dynamics(&p, t);
            prop_assert!((0.0..=1.0 + 1e-15).contains(&photon));
        }
    }
}
