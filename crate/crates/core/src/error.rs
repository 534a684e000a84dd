use thiserror::Error;

/// Errors produced by the photonloc computations.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A quadrature error estimate stayed above the requested tolerance.
    #[error("quadrature did not converge: error estimate {estimate:.3e} exceeds {tolerance:.3e}")]
    NonConvergence { estimate: f64, tolerance: f64 },

    /// A closed form hit a removable or genuine singularity (e.g. a Wigner
    /// phase whose numerator and denominator both vanish).
    #[error("degenerate configuration: {0}")]
    Degenerate(String),

    #[error("tail window too short: {0}")]
    WindowTooShort(String),

    #[error("degenerate fit: {0}")]
    DegenerateFit(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
