//! C ABI over the `brillouin` crate.
//!
//! Every entry point returns a [`BrlStatus`]; results go through out-pointers.
//! On failure a message is kept per thread and can be read with
//! [`brl_last_error`]. Panics are caught at the boundary and reported as
//! [`BrlStatus::Panic`].
//!
//! Frequencies are in GHz and times in ns, except where a parameter name says
//! otherwise (`_hz`, `_k`).

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use brillouin::antistokes::{diagonalize_antistokes, photon_population_dynamics, AntiStokesParams, Polariton};
use brillouin::environment::thermal_occupation;
use brillouin::fock::{
    build_antistokes_hamiltonian, build_squeeze_operator, build_stokes_hamiltonian, FockOperator,
    FockState, SqueezeMethod,
};
use brillouin::model::{
    effective_coupling, pump_steady_state, solve_antistokes_matching, solve_stokes_matching,
    Branch, BranchDispersion, PhononBranch, PumpDrive, PumpPoint,
};
use brillouin::stokes::{
    bell_approximation, diagonalize_stokes, squeezed_amplitudes, squeezed_statistics, StokesParams,
};
use brillouin::Error;
use num_complex::Complex64;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BrlStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    StabilityViolation = 3,
    DegenerateCoupling = 4,
    NonHermitian = 5,
    BufferTooSmall = 6,
    Numerical = 7,
    Panic = 8,
}

pub const BRL_PROCESS_STOKES: u32 = 0;
pub const BRL_PROCESS_ANTI_STOKES: u32 = 1;

pub const BRL_SQUEEZE_EXPONENTIAL: u32 = 0;
pub const BRL_SQUEEZE_FACTORED: u32 = 1;

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct BrlStokesModes {
    pub r: f64,
    pub cosh2: f64,
    pub sinh2: f64,
    pub splitting: f64,
    pub omega_alpha: f64,
    pub omega_beta: f64,
    pub omega_0: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct BrlPolaritons {
    pub omega_plus: f64,
    pub omega_minus: f64,
    pub x_plus_sq: f64,
    pub y_plus_sq: f64,
    pub x_minus_sq: f64,
    pub y_minus_sq: f64,
    pub splitting: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct BrlKinematics {
    /// 1 or 2.
    pub scattered_branch: u32,
    pub omega_scattered: f64,
    pub k_scattered: f64,
    pub q_phonon: f64,
    pub energy_mismatch: f64,
    pub momentum_mismatch: f64,
}

/// Dense operator on a truncated two-mode Fock space.
pub struct BrlFockOperator {
    inner: FockOperator,
}

struct Failure {
    status: BrlStatus,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::StabilityViolation { .. } => BrlStatus::StabilityViolation,
            Error::DegenerateCoupling => BrlStatus::DegenerateCoupling,
            Error::NonHermitian(_) => BrlStatus::NonHermitian,
            Error::EigensolverFailed => BrlStatus::Numerical,
            Error::ZeroGroupVelocity(_)
            | Error::InvalidMultiplexerCoupling(_)
            | Error::DimensionMismatch { .. }
            | Error::InvalidParameter { .. } => BrlStatus::InvalidArgument,
        };
        Failure {
            status,
            message: e.to_string(),
        }
    }
}

fn fail(status: BrlStatus, message: impl Into<String>) -> Failure {
    Failure {
        status,
        message: message.into(),
    }
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = c);
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> BrlStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error("");
            BrlStatus::Ok
        }
        Ok(Err(failure)) => {
            set_last_error(&failure.message);
            failure.status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_last_error(&format!("internal panic: {msg}"));
            BrlStatus::Panic
        }
    }
}

unsafe fn out<'a, T>(p: *mut T, name: &str) -> Result<&'a mut T, Failure> {
    p.as_mut()
        .ok_or_else(|| fail(BrlStatus::NullPointer, format!("{name} is null")))
}

unsafe fn slice_mut<'a>(p: *mut f64, len: usize, name: &str) -> Result<&'a mut [f64], Failure> {
    if p.is_null() {
        return Err(fail(BrlStatus::NullPointer, format!("{name} is null")));
    }
    Ok(std::slice::from_raw_parts_mut(p, len))
}

unsafe fn slice<'a>(p: *const f64, len: usize, name: &str) -> Result<&'a [f64], Failure> {
    if p.is_null() {
        return Err(fail(BrlStatus::NullPointer, format!("{name} is null")));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

fn branch(b: u32) -> Result<Branch, Failure> {
    match b {
        1 => Ok(Branch::One),
        2 => Ok(Branch::Two),
        _ => Err(fail(BrlStatus::InvalidArgument, format!("branch must be 1 or 2, got {b}"))),
    }
}

/// Message for the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn brl_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Library version as a NUL-terminated static string.
#[no_mangle]
pub extern "C" fn brl_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// `f = g·√(n_in/u)` with `g` in GHz, `n_in` in photons/s and `u_hz` in Hz.
///
/// # Safety
/// `out_re` and `out_im` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn brl_effective_coupling(
    g_re: f64,
    g_im: f64,
    n_in: f64,
    u_hz: f64,
    out_re: *mut f64,
    out_im: *mut f64,
) -> BrlStatus {
    guard(|| {
        let (re, im) = (out(out_re, "out_re")?, out(out_im, "out_im")?);
        let pump = pump_steady_state(&PumpDrive {
            n_in,
            u_hz,
            omega_hz: 0.0,
            k: 0.0,
            branch: Branch::One,
        })?;
        let f = effective_coupling(Complex64::new(g_re, g_im), &pump);
        (*re, *im) = (f.re, f.im);
        Ok(())
    })
}

/// Phase matching for a pump at `(omega_p, k_p)` on `pump_branch`; the
/// scattered photon lands on the other branch.
///
/// # Safety
/// `result` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn brl_phase_matching(
    process: u32,
    branch1_offset: f64,
    branch2_offset: f64,
    group_velocity: f64,
    phonon_frequency: f64,
    pump_branch: u32,
    omega_p: f64,
    k_p: f64,
    result: *mut BrlKinematics,
) -> BrlStatus {
    guard(|| {
        let result = out(result, "result")?;
        let dispersion = BranchDispersion::new(branch1_offset, branch2_offset, group_velocity)?;
        let phonon = PhononBranch::new(phonon_frequency)?;
        let pump = PumpPoint {
            branch: branch(pump_branch)?,
            omega: omega_p,
            k: k_p,
        };
        let k = match process {
            BRL_PROCESS_STOKES => solve_stokes_matching(&dispersion, &phonon, &pump)?,
            BRL_PROCESS_ANTI_STOKES => solve_antistokes_matching(&dispersion, &phonon, &pump)?,
            other => return Err(fail(BrlStatus::InvalidArgument, format!("unknown process {other}"))),
        };
        *result = BrlKinematics {
            scattered_branch: match k.scattered_branch {
                Branch::One => 1,
                Branch::Two => 2,
            },
            omega_scattered: k.omega_scattered,
            k_scattered: k.k_scattered,
            q_phonon: k.q_phonon,
            energy_mismatch: k.energy_mismatch(),
            momentum_mismatch: k.momentum_mismatch(),
        };
        Ok(())
    })
}

/// Bogoliubov normal modes of the Stokes Hamiltonian.
///
/// # Safety
/// `result` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn brl_stokes_diagonalize(
    detuning: f64,
    phonon: f64,
    coupling: f64,
    result: *mut BrlStokesModes,
) -> BrlStatus {
    guard(|| {
        let result = out(result, "result")?;
        let d = diagonalize_stokes(&StokesParams::new(detuning, phonon, coupling))?;
        *result = BrlStokesModes {
            r: d.r,
            cosh2: d.cosh2,
            sinh2: d.sinh2,
            splitting: d.splitting,
            omega_alpha: d.omega_alpha,
            omega_beta: d.omega_beta,
            omega_0: d.omega_0,
        };
        Ok(())
    })
}

/// Writes `c_n = tanhⁿ r / cosh r` for `n < len`.
///
/// # Safety
/// `amplitudes` must be valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn brl_squeezed_amplitudes(r: f64, amplitudes: *mut f64, len: usize) -> BrlStatus {
    guard(|| {
        let dst = slice_mut(amplitudes, len, "amplitudes")?;
        if len == 0 {
            return Ok(());
        }
        let e = squeezed_amplitudes(r, len - 1)?;
        dst.copy_from_slice(&e.amplitudes);
        Ok(())
    })
}

/// Mean pair number `sinh² r` and entanglement entropy (nats).
///
/// # Safety
/// Both out-pointers must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn brl_squeezed_statistics(r: f64, mean_pairs: *mut f64, entropy: *mut f64) -> BrlStatus {
    guard(|| {
        let (n, s) = (out(mean_pairs, "mean_pairs")?, out(entropy, "entropy")?);
        let stats = squeezed_statistics(r)?;
        (*n, *s) = (stats.mean_pairs, stats.entanglement_entropy);
        Ok(())
    })
}

/// Fidelity of the two-term `|0,0⟩ + r|1,1⟩` state with the squeezed vacuum.
///
/// # Safety
/// `fidelity` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn brl_bell_fidelity(r: f64, fidelity: *mut f64) -> BrlStatus {
    guard(|| {
        let f = out(fidelity, "fidelity")?;
        *f = bell_approximation(r)?.fidelity;
        Ok(())
    })
}

/// Polariton frequencies and phonon/photon fractions.
///
/// # Safety
/// `result` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn brl_antistokes_diagonalize(
    detuning: f64,
    phonon: f64,
    coupling_re: f64,
    coupling_im: f64,
    result: *mut BrlPolaritons,
) -> BrlStatus {
    guard(|| {
        let result = out(result, "result")?;
        let p = AntiStokesParams::new(detuning, phonon, Complex64::new(coupling_re, coupling_im));
        let d = diagonalize_antistokes(&p)?;
        *result = BrlPolaritons {
            omega_plus: d.omega_plus,
            omega_minus: d.omega_minus,
            x_plus_sq: d.phonon_fraction(Polariton::Upper),
            y_plus_sq: d.photon_fraction(Polariton::Upper),
            x_minus_sq: d.phonon_fraction(Polariton::Lower),
            y_minus_sq: d.photon_fraction(Polariton::Lower),
            splitting: d.splitting,
        };
        Ok(())
    })
}

/// Photon population at time `t` starting from one photon and no phonon.
///
/// # Safety
/// `population` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn brl_photon_population(
    detuning: f64,
    phonon: f64,
    coupling_re: f64,
    coupling_im: f64,
    t: f64,
    population: *mut f64,
) -> BrlStatus {
    guard(|| {
        let dst = out(population, "population")?;
        if !t.is_finite() {
            return Err(fail(BrlStatus::InvalidArgument, "time must be finite"));
        }
        let p = AntiStokesParams::new(detuning, phonon, Complex64::new(coupling_re, coupling_im));
        *dst = photon_population_dynamics(&p, t);
        Ok(())
    })
}

/// Bose-Einstein occupation of a mode at `freq_hz` (ordinary frequency).
///
/// # Safety
/// `occupation` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn brl_thermal_occupation(freq_hz: f64, temperature_k: f64, occupation: *mut f64) -> BrlStatus {
    guard(|| {
        let dst = out(occupation, "occupation")?;
        *dst = thermal_occupation(freq_hz, temperature_k)?;
        Ok(())
    })
}

unsafe fn store_operator(op: FockOperator, dst: *mut *mut BrlFockOperator) -> Result<(), Failure> {
    let dst = out(dst, "handle")?;
    *dst = Box::into_raw(Box::new(BrlFockOperator { inner: op }));
    Ok(())
}

unsafe fn handle_ref<'a>(handle: *const BrlFockOperator) -> Result<&'a BrlFockOperator, Failure> {
    handle
        .as_ref()
        .ok_or_else(|| fail(BrlStatus::NullPointer, "handle is null"))
}

/// Truncated Stokes Hamiltonian, `n_max` quanta per mode. Release with
/// [`brl_fock_operator_free`].
///
/// # Safety
/// `handle` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn brl_fock_stokes_hamiltonian(
    detuning: f64,
    phonon: f64,
    coupling: f64,
    n_max: usize,
    handle: *mut *mut BrlFockOperator,
) -> BrlStatus {
    guard(|| {
        let h = build_stokes_hamiltonian(&StokesParams::new(detuning, phonon, coupling), n_max)?;
        store_operator(h, handle)
    })
}

/// Truncated anti-Stokes Hamiltonian. Release with [`brl_fock_operator_free`].
///
/// # Safety
/// `handle` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn brl_fock_antistokes_hamiltonian(
    detuning: f64,
    phonon: f64,
    coupling_re: f64,
    coupling_im: f64,
    n_max: usize,
    handle: *mut *mut BrlFockOperator,
) -> BrlStatus {
    guard(|| {
        let p = AntiStokesParams::new(detuning, phonon, Complex64::new(coupling_re, coupling_im));
        store_operator(build_antistokes_hamiltonian(&p, n_max)?, handle)
    })
}

/// Two-mode squeeze operator; `method` is `BRL_SQUEEZE_EXPONENTIAL` or
/// `BRL_SQUEEZE_FACTORED`.
///
/// # Safety
/// `handle` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn brl_fock_squeeze_operator(
    r: f64,
    n_max: usize,
    method: u32,
    handle: *mut *mut BrlFockOperator,
) -> BrlStatus {
    guard(|| {
        let method = match method {
            BRL_SQUEEZE_EXPONENTIAL => SqueezeMethod::Exponential,
            BRL_SQUEEZE_FACTORED => SqueezeMethod::Factored,
            other => return Err(fail(BrlStatus::InvalidArgument, format!("unknown squeeze method {other}"))),
        };
        store_operator(build_squeeze_operator(r, n_max, method)?, handle)
    })
}

/// Hilbert-space dimension `(n_max + 1)²`. Basis state `|n, m⟩` (n photons,
/// m phonons) has index `n·(n_max + 1) + m`.
///
/// # Safety
/// `handle` must be live or null; `dim` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn brl_fock_operator_dim(handle: *const BrlFockOperator, dim: *mut usize) -> BrlStatus {
    guard(|| {
        let op = handle_ref(handle)?;
        *out(dim, "dim")? = op.inner.dim();
        Ok(())
    })
}

/// Ascending eigenvalues of a Hermitian operator. `len` must be at least the
/// dimension, otherwise `BUFFER_TOO_SMALL` is returned and nothing is written.
///
/// # Safety
/// `handle` must be live or null; `eigenvalues` must be valid for
/// `len` writes.
#[no_mangle]
pub unsafe extern "C" fn brl_fock_operator_eigenvalues(
    handle: *const BrlFockOperator,
    eigenvalues: *mut f64,
    len: usize,
) -> BrlStatus {
    guard(|| {
        let op = handle_ref(handle)?;
        let dst = slice_mut(eigenvalues, len, "eigenvalues")?;
        let dim = op.inner.dim();
        if len < dim {
            return Err(fail(BrlStatus::BufferTooSmall, format!("need {dim} entries, got {len}")));
        }
        dst[..dim].copy_from_slice(&op.inner.eigenvalues()?);
        Ok(())
    })
}

/// `exp(−iHt) ψ` for a Hermitian operator `H`. Input and output states are
/// split into real and imaginary parts of length `len`, which must equal the
/// dimension. Output buffers may alias the inputs.
///
/// # Safety
/// `handle` must be live or null; each buffer must be valid for
/// `len` elements.
#[no_mangle]
pub unsafe extern "C" fn brl_fock_operator_evolve(
    handle: *const BrlFockOperator,
    psi_re: *const f64,
    psi_im: *const f64,
    len: usize,
    t: f64,
    out_re: *mut f64,
    out_im: *mut f64,
) -> BrlStatus {
    guard(|| {
        let op = handle_ref(handle)?;
        if !t.is_finite() {
            return Err(fail(BrlStatus::InvalidArgument, "time must be finite"));
        }
        let amplitudes: Vec<Complex64> = slice(psi_re, len, "psi_re")?
            .iter()
            .zip(slice(psi_im, len, "psi_im")?)
            .map(|(re, im)| Complex64::new(*re, *im))
            .collect();
        let psi = FockState::from_amplitudes(op.inner.basis(), amplitudes)?;
        let evolved = op.inner.eigen()?.evolve(&psi, t)?;
        let (re, im) = (slice_mut(out_re, len, "out_re")?, slice_mut(out_im, len, "out_im")?);
        for (i, z) in evolved.amplitudes().iter().enumerate() {
            re[i] = z.re;
            im[i] = z.im;
        }
        Ok(())
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `handle` must be null or not yet freed.
#[no_mangle]
pub unsafe extern "C" fn brl_fock_operator_free(handle: *mut BrlFockOperator) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}
