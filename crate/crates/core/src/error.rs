use thiserror::Error;

/// Errors raised by evaluation, quadrature and comb pairing.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("pole at {0}")]
    Pole(String),
    #[error("singular endpoint: {0}")]
    SingularEndpoint(String),
    #[error("quadrature did not converge: {0}")]
    NonConvergent(String),
    #[error("series did not converge: {0}")]
    NotConverged(String),
    #[error("resource limit: {0}")]
    Resource(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Whether the error is a convergence failure (as opposed to a bad input).
    pub fn is_convergence(&self) -> bool {
        matches!(self, Error::NonConvergent(_) | Error::NotConverged(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
