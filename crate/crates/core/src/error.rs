use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// A user supplied function produced a non-finite value.
    #[error("evaluation error: {0}")]
    Evaluation(String),
    /// Inconsistent configuration (e.g. a quadrature rule too coarse for the data).
    #[error("configuration error: {0}")]
    Config(String),
    /// The operation is not defined for the requested dimension.
    #[error("unsupported dimension: {0}")]
    Unsupported(String),
    /// A numerical precondition (orthogonality, singularity) did not hold.
    #[error("diagnostic: {0}")]
    Diagnostic(String),
    /// An invariant that should be impossible to violate was violated.
    #[error("internal error: {0}")]
    Internal(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
