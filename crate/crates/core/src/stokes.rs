//! Stokes process: two-mode squeezing between the scattered photon and the
//! phonon.
//!
//! In the frame rotating with the pump,
//!
//! ```text
//! H = Δω a†a + Ω b†b + f (a†b† + a b)
//! ```
//!
//! is diagonalized by `α = cosh r a + sinh r b†`, `β = cosh r b + sinh r a†`
//! into `ω₀ + ω_α α†α + ω_β β†β`. With `ω̄ = (Δω + Ω)/2`, `δ = (Δω − Ω)/2`
//! and `Δ = √(ω̄² − f²)` the closed forms are
//! `cosh²r = (ω̄ + Δ)/2Δ`, `sinh²r = (ω̄ − Δ)/2Δ`,
//! `ω_α = Δ + δ`, `ω_β = Δ − δ` and `ω₀ = Δ − ω̄`.
//!
//! The squeeze operator `S(r) = exp(r(a†b† − ab))` maps the Fock vacuum onto
//! `|r⟩ = Σ tanhⁿr / cosh r |n,n⟩`. The vacuum of `α` and `β` for `f > 0` is
//! `S(−r)|0,0⟩`, which differs from `|r⟩` only by the phonon parity
//! `(−1)^{N_b}`, a local unitary; see [`SqueezedStateExpansion::ground_state_amplitudes`].

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Linearized Stokes Hamiltonian parameters, all in GHz.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StokesParams {
    /// `Δω_s = ω_p − ω_s`.
    pub detuning: f64,
    /// `Ω_s`.
    pub phonon: f64,
    /// Real, non-negative effective coupling `f_s`.
    pub coupling: f64,
}

impl StokesParams {
    pub fn new(detuning: f64, phonon: f64, coupling: f64) -> Self {
        StokesParams {
            detuning,
            phonon,
            coupling,
        }
    }

    /// Builds the parameters from the half detuning `δ_s`, i.e. `Δω_s = Ω_s + 2δ_s`.
    pub fn from_half_detuning(delta_s: f64, phonon: f64, coupling: f64) -> Self {
        StokesParams::new(phonon + 2.0 * delta_s, phonon, coupling)
    }

    /// `ω̄ = (Δω_s + Ω_s)/2`.
    pub fn omega_bar(&self) -> f64 {
        0.5 * (self.detuning + self.phonon)
    }

    /// `δ_s = (Δω_s − Ω_s)/2`.
    pub fn half_detuning(&self) -> f64 {
        0.5 * (self.detuning - self.phonon)
    }

    pub fn is_stable(&self) -> bool {
        self.omega_bar() > self.coupling
    }
}

/// Closed-form Bogoliubov diagonalization of the Stokes Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StokesDiagonalization {
    pub r: f64,
    pub cosh2: f64,
    pub sinh2: f64,
    /// `Δ_s = √(ω̄² − f_s²)`.
    pub splitting: f64,
    pub half_detuning: f64,
    pub omega_alpha: f64,
    pub omega_beta: f64,
    pub omega_0: f64,
}

impl StokesDiagonalization {
    /// `cosh r · sinh r = f_s / 2Δ_s`.
    pub fn cosh_sinh(&self) -> f64 {
        (self.cosh2 * self.sinh2).sqrt()
    }
}

pub fn diagonalize_stokes(p: &StokesParams) -> Result<StokesDiagonalization> {
    let f = p.coupling;
    if !(f.is_finite() && f >= 0.0) {
        return Err(Error::invalid(
            "stokes coupling",
            format!("must be real, finite and non-negative, got {f}"),
        ));
    }
    if !(p.detuning.is_finite() && p.phonon.is_finite()) {
        return Err(Error::invalid("stokes detuning", "must be finite"));
    }
    let omega_bar = p.omega_bar();
    if omega_bar <= f {
        return Err(Error::StabilityViolation {
            omega_bar,
            coupling: f,
        });
    }
    let splitting = ((omega_bar - f) * (omega_bar + f)).sqrt();
    // ω̄ − Δ = f²/(ω̄ + Δ) avoids cancellation when f ≪ ω̄
    let bar_minus = f * f / (omega_bar + splitting);
    let cosh2 = (omega_bar + splitting) / (2.0 * splitting);
    let sinh2 = bar_minus / (2.0 * splitting);
    let half_detuning = p.half_detuning();

    // r = ln(cosh r + sinh r), written as ln_1p of (cosh r − 1) + sinh r
    let sinh_r = sinh2.sqrt();
    let cosh_r = cosh2.sqrt();
    let r = (sinh2 / (cosh_r + 1.0) + sinh_r).ln_1p();

    Ok(StokesDiagonalization {
        r,
        cosh2,
        sinh2,
        splitting,
        half_detuning,
        omega_alpha: splitting + half_detuning,
        omega_beta: splitting - half_detuning,
        omega_0: -bar_minus,
    })
}

/// Residual of the off-diagonal elimination condition
/// `2ω̄ cosh r sinh r = f_s (cosh²r + sinh²r)`, evaluated from `r` alone.
pub fn bogoliubov_coefficients_check(p: &StokesParams) -> Result<f64> {
    let d = diagonalize_stokes(p)?;
    let (c, s) = (d.r.cosh(), d.r.sinh());
    Ok((2.0 * p.omega_bar() * c * s - p.coupling * (c * c + s * s)).abs())
}

/// Fock expansion `c_n = tanhⁿr / cosh r` of `|r⟩ = S(r)|0,0⟩` on the
/// diagonal pair states `|n,n⟩`, `n = 0..=n_max`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SqueezedStateExpansion {
    pub r: f64,
    pub n_max: usize,
    pub amplitudes: Vec<f64>,
}

impl SqueezedStateExpansion {
    /// Squared norm of the truncated expansion; `1 − tanh^{2(n_max+1)} r`.
    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|c| c * c).sum()
    }

    /// Pair amplitudes of the α/β vacuum of `H` with `f_s ≥ 0`:
    /// `(−tanh r)ⁿ / cosh r`, i.e. `S(−r)|0,0⟩`.
    pub fn ground_state_amplitudes(&self) -> Vec<f64> {
        self.amplitudes
            .iter()
            .enumerate()
            .map(|(n, c)| if n % 2 == 0 { *c } else { -c })
            .collect()
    }
}

pub fn squeezed_amplitudes(r: f64, n_max: usize) -> Result<SqueezedStateExpansion> {
    check_squeeze(r)?;
    let t = r.tanh();
    let mut c = 1.0 / r.cosh();
    let mut amplitudes = Vec::with_capacity(n_max + 1);
    for _ in 0..=n_max {
        amplitudes.push(c);
        c *= t;
    }
    Ok(SqueezedStateExpansion {
        r,
        n_max,
        amplitudes,
    })
}

fn check_squeeze(r: f64) -> Result<()> {
    if !(r.is_finite() && r >= 0.0) {
        return Err(Error::invalid(
            "squeeze parameter",
            format!("must be finite and non-negative, got {r}"),
        ));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SqueezedStatistics {
    /// `⟨N_a⟩ = ⟨N_b⟩ = sinh²r`.
    pub mean_pairs: f64,
    /// Photon-phonon entanglement entropy in nats.
    pub entanglement_entropy: f64,
}

pub fn squeezed_statistics(r: f64) -> Result<SqueezedStatistics> {
    check_squeeze(r)?;
    let s2 = r.sinh().powi(2);
    let c2 = 1.0 + s2;
    let entropy = if s2 == 0.0 {
        0.0
    } else {
        c2 * c2.ln() - s2 * s2.ln()
    };
    Ok(SqueezedStatistics {
        mean_pairs: s2,
        entanglement_entropy: entropy,
    })
}

/// Two-term truncation `∝ |0,0⟩ + r|1,1⟩` of the squeezed state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BellApproximation {
    /// Normalized amplitudes on `|0,0⟩` and `|1,1⟩`.
    pub two_term_state: [f64; 2],
    /// `|⟨r|ψ₂⟩|²` against the untruncated expansion.
    pub fidelity: f64,
}

pub fn bell_approximation(r: f64) -> Result<BellApproximation> {
    check_squeeze(r)?;
    let norm = (1.0 + r * r).sqrt();
    let psi = [1.0 / norm, r / norm];
    let c0 = 1.0 / r.cosh();
    let c1 = r.tanh() * c0;
    let overlap = psi[0] * c0 + psi[1] * c1;
    Ok(BellApproximation {
        two_term_state: psi,
        fidelity: overlap * overlap,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    // Reference values below come from 30-digit evaluation of the closed forms.

    #[test]
    fn reference_point_at_zero_detuning() {
        let d = diagonalize_stokes(&StokesParams::new(10.0, 10.0, 1.0)).unwrap();
        assert_relative_eq!(d.splitting, 99f64.sqrt(), max_relative = 1e-15);
        assert_relative_eq!(d.omega_alpha, 9.949_874_371_066_2, max_relative = 1e-14);
        assert_relative_eq!(d.omega_beta, 9.949_874_371_066_2, max_relative = 1e-14);
        assert_relative_eq!(d.omega_0, -0.050_125_628_933_800_45, max_relative = 1e-13);
        assert_relative_eq!(d.cosh2, 1.002_518_907_629_606, max_relative = 1e-14);
        assert_relative_eq!(d.sinh2, 0.002_518_907_629_606_038, max_relative = 1e-12);
        assert_relative_eq!(d.r, 0.050_167_673_865_537_79, max_relative = 1e-12);
        assert_eq!(d.half_detuning, 0.0);
    }

    #[test]
    fn detuned_point() {
        let d = diagonalize_stokes(&StokesParams::new(12.0, 10.0, 1.0)).unwrap();
        assert_relative_eq!(d.splitting, 120f64.sqrt(), max_relative = 1e-15);
        assert_relative_eq!(d.omega_alpha, 11.954_451_150_103_32, max_relative = 1e-14);
        assert_relative_eq!(d.omega_beta, 9.954_451_150_103_322, max_relative = 1e-14);
        assert_relative_eq!(d.omega_0, -0.045_548_849_896_677_73, max_relative = 1e-13);
    }

    #[test]
    fn uncoupled_is_identity_transformation() {
        let d = diagonalize_stokes(&StokesParams::new(13.0, 10.0, 0.0)).unwrap();
        assert_eq!(d.r, 0.0);
        assert_eq!(d.sinh2, 0.0);
        assert_eq!(d.cosh2, 1.0);
        assert_eq!(d.splitting, 11.5);
        assert_eq!(d.omega_alpha, 13.0);
        assert_eq!(d.omega_beta, 10.0);
        assert_eq!(d.omega_0, 0.0);
        assert_eq!(bogoliubov_coefficients_check(&StokesParams::new(13.0, 10.0, 0.0)).unwrap(), 0.0);
    }

    #[test]
    fn instability_is_an_error() {
        let p = StokesParams::new(0.5, 1.0, 0.75);
        assert!(!p.is_stable());
        assert_eq!(
            diagonalize_stokes(&p),
            Err(Error::StabilityViolation {
                omega_bar: 0.75,
                coupling: 0.75
            })
        );
        assert!(matches!(
            diagonalize_stokes(&StokesParams::new(0.5, 1.0, 2.0)),
            Err(Error::StabilityViolation { .. })
        ));
        assert!(matches!(
            diagonalize_stokes(&StokesParams::new(10.0, 10.0, -1.0)),
            Err(Error::InvalidParameter { .. })
        ));
    }

    #[test]
    fn elimination_residual_vanishes() {
        assert!(bogoliubov_coefficients_check(&StokesParams::new(10.0, 10.0, 1.0)).unwrap() < 1e-12);
        for i in 0..=100 {
            let delta = -5.0 + 0.1 * i as f64;
            let p = StokesParams::from_half_detuning(delta, 10.0, 1.0);
            assert!(bogoliubov_coefficients_check(&p).unwrap() < 1e-12, "delta = {delta}");
        }
    }

    #[test]
    fn ground_frequency_sign() {
        for f in [0.0, 1e-6, 0.1, 1.0, 4.9] {
            let d = diagonalize_stokes(&StokesParams::new(10.0, 10.0, f)).unwrap();
            assert!(d.omega_0 <= 0.0);
            assert_eq!(d.omega_0 == 0.0, f == 0.0);
        }
        let tiny = diagonalize_stokes(&StokesParams::new(10.0, 10.0, 1e-8)).unwrap();
        assert!(tiny.omega_0.abs() < 1e-16);
    }

    #[test]
    fn amplitudes_vacuum_and_reference_r() {
        let e = squeezed_amplitudes(0.0, 4).unwrap();
        assert_eq!(e.amplitudes, vec![1.0, 0.0, 0.0, 0.0, 0.0]);

        let e = squeezed_amplitudes(0.050_167_6, 2).unwrap();
        assert_relative_eq!(e.amplitudes[0], 0.998_742_924_235_507_5, max_relative = 1e-14);
        assert_relative_eq!(e.amplitudes[1], 0.050_062_543_633_164_01, max_relative = 1e-13);
        assert_relative_eq!(e.amplitudes[2], 0.002_509_412_797_032_708, max_relative = 1e-13);
        let g = e.ground_state_amplitudes();
        assert_eq!(g[1], -e.amplitudes[1]);
        assert_eq!(g[2], e.amplitudes[2]);
    }

    #[test]
    fn amplitude_errors() {
        assert!(squeezed_amplitudes(-0.1, 3).is_err());
        assert!(squeezed_amplitudes(f64::NAN, 3).is_err());
        assert!(squeezed_statistics(-1.0).is_err());
        assert!(bell_approximation(f64::INFINITY).is_err());
    }

    #[test]
    fn statistics_values() {
        let s = squeezed_statistics(0.0).unwrap();
        assert_eq!((s.mean_pairs, s.entanglement_entropy), (0.0, 0.0));
        let s = squeezed_statistics(0.050_167_673_865_537_79).unwrap();
        assert_relative_eq!(s.mean_pairs, 0.002_518_907_629_606_038, max_relative = 1e-12);
        assert_relative_eq!(s.entanglement_entropy, 0.017_595_044_227_578_3, max_relative = 1e-10);
    }

    #[test]
    fn entropy_increases_with_squeezing() {
        let mut prev = 0.0;
        for i in 1..=400 {
            let r = 0.005 * i as f64;
            let s = squeezed_statistics(r).unwrap().entanglement_entropy;
            assert!(s > prev, "r = {r}");
            prev = s;
        }
    }

    #[test]
    fn bell_fidelity_values() {
        let b = bell_approximation(0.0).unwrap();
        assert_eq!(b.fidelity, 1.0);
        assert_eq!(b.two_term_state, [1.0, 0.0]);
        let b = bell_approximation(0.05).unwrap();
        assert_relative_eq!(b.fidelity, 0.999_993_769_062_536_1, max_relative = 1e-13);
        let b = bell_approximation(0.3).unwrap();
        assert_relative_eq!(b.fidelity, 0.992_734_901_422_337_2, max_relative = 1e-13);
    }

    #[test]
    fn bell_fidelity_against_truncated_expansion() {
        for r in [0.01, 0.05, 0.1, 0.3] {
            let full = squeezed_amplitudes(r, 50).unwrap();
            let b = bell_approximation(r).unwrap();
            let overlap = b.two_term_state[0] * full.amplitudes[0]
                + b.two_term_state[1] * full.amplitudes[1];
            assert_relative_eq!(b.fidelity, overlap * overlap, max_relative = 1e-14);
        }
    }

    #[test]
    fn sweep_shapes_hold_inside_range() {
        // The 1% bounds on ω_β and the [1, 1.01] band on cosh²r are first
        // crossed at δ_s ≈ −4.93 (cosh²r) and δ_s = −4.95 (ω_β).
        for i in 0..=200 {
            let delta = -5.0 + 0.05 * i as f64;
            let d = diagonalize_stokes(&StokesParams::from_half_detuning(delta, 10.0, 1.0)).unwrap();
            assert!((d.cosh2 - d.sinh2 - 1.0).abs() < 1e-12);
            let inside = delta > -4.92;
            if inside {
                assert!((d.omega_beta - 10.0).abs() / 10.0 < 0.01, "delta = {delta}");
                assert!(d.cosh2 >= 1.0 && d.cosh2 <= 1.01);
                assert!(d.sinh2 >= 0.0 && d.sinh2 <= 0.01);
            }
        }
        let edge = diagonalize_stokes(&StokesParams::from_half_detuning(-5.0, 10.0, 1.0)).unwrap();
        assert_relative_eq!(edge.omega_beta, 5.0 + 24f64.sqrt(), max_relative = 1e-15);
        assert_relative_eq!(edge.cosh2, (5.0 + 24f64.sqrt()) / (2.0 * 24f64.sqrt()), max_relative = 1e-15);
    }

    #[test]
    fn omega_alpha_is_nearly_linear() {
        let pts: Vec<(f64, f64)> = (0..=200)
            .map(|i| {
                let delta = -5.0 + 0.05 * i as f64;
                let d = diagonalize_stokes(&StokesParams::from_half_detuning(delta, 10.0, 1.0)).unwrap();
                (delta, d.omega_alpha)
            })
            .collect();
        let (x0, y0) = pts[0];
        let (x1, y1) = pts[pts.len() - 1];
        let slope = (y1 - y0) / (x1 - x0);
        let range = y1 - y0;
        let worst = pts
            .iter()
            .map(|(x, y)| (y - (y0 + slope * (x - x0))).abs())
            .fold(0.0, f64::max);
        assert!(worst < 0.01 * range, "worst = {worst}");
    }

    proptest! {
        #[test]
        fn closed_form_identities(delta in -5.0f64..5.0, f in 0.0f64..4.0) {
            let p = StokesParams::from_half_detuning(delta, 10.0, f);
            prop_assume!(p.is_stable());
            let d = diagonalize_stokes(&p).unwrap();
            prop_assert!((d.cosh2 - d.sinh2 - 1.0).abs() < 1e-12);
            let expected = (f / (2.0 * d.splitting)).powi(2);
            prop_assert!((d.cosh2 * d.sinh2 - expected).abs() <= 1e-12 * expected.max(1e-300));
            prop_assert!((d.omega_alpha + d.omega_beta - 2.0 * d.splitting).abs() < 1e-12);
            prop_assert!((d.omega_alpha - d.omega_beta - 2.0 * delta).abs() < 1e-12);
            prop_assert!((d.r.cosh().powi(2) - d.cosh2).abs() < 1e-12);
            prop_assert!(d.r >= 0.0);
        }

        #[test]
        fn amplitudes_are_geometric(r in 0.0f64..3.0, n_max in 0usize..40) {
            let e = squeezed_amplitudes(r, n_max).unwrap();
            prop_assert_eq!(e.amplitudes.len(), n_max + 1);
            for w in e.amplitudes.windows(2) {
                prop_assert!(w[1] >= 0.0);
                if w[0] > 1e-300 {
                    prop_assert!((w[1] / w[0] - r.tanh()).abs() < 1e-12);
                }
            }
            let t2 = r.tanh().powi(2);
            let expected = 1.0 - t2.powi(n_max as i32 + 1);
            prop_assert!((e.norm_sqr() - expected).abs() < 1e-12);
        }
    }
}
