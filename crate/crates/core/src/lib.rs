//! Photon-phonon entangled states from inter-modal stimulated Brillouin
//! scattering.
//!
//! Frequencies are angular frequencies in GHz and times in ns unless a name
//! carries another unit (`_hz`, `_mhz`, `_k`).
//!
//! * [`model`]: waveguide branches and phase matching, plus the pump-enhanced coupling.
//! * [`stokes`]: Bogoliubov diagonalization and the two-mode squeezed vacuum.
//! * [`antistokes`]: polariton modes and Rabi exchange.
//! * [`fock`]: dense truncated Fock-space oracle.
//! * [`environment`]: thermal occupation and regime checks.
//! * [`config`] and [`sweep`]: the command-line tables.
//! * [`verify`]: closed forms checked against the oracle.

pub mod antistokes;
pub mod config;
pub mod environment;
pub mod error;
pub mod fock;
pub mod model;
pub mod stokes;
pub mod sweep;
pub mod verify;

pub use error::{Error, Result};
