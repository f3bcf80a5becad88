use thiserror::Error;

/// Errors raised by the model, the closed-form diagonalizations and the
/// truncated-Fock oracle.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("group velocity must be finite and non-zero, got {0}")]
    ZeroGroupVelocity(f64),

    #[error("multiplexer coupling must be positive, got {0} Hz")]
    InvalidMultiplexerCoupling(f64),

    /// The mean Stokes detuning does not exceed the effective coupling, so the
    /// Bogoliubov transformation has no real solution.
    #[error(
        "Stokes stability violated: mean detuning {omega_bar} GHz must exceed coupling {coupling} GHz"
    )]
    StabilityViolation { omega_bar: f64, coupling: f64 },

    /// Resonant and uncoupled anti-Stokes point: the polariton transformation is undefined.
    #[error("degenerate anti-Stokes coupling: zero detuning and zero coupling")]
    DegenerateCoupling,

    #[error("operator is not Hermitian (max |H - H^dagger| = {0:e})")]
    NonHermitian(f64),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("eigensolver did not converge")]
    EigensolverFailed,

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
