use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("pole at {at} (distance {distance:e} below tolerance)")]
    Pole { at: String, distance: f64 },
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("series did not converge after {terms} terms")]
    Convergence { terms: usize },
    #[error("{0}")]
    OutOfDomain(String),
    #[error("sequences do not interlace: {0}")]
    Interlacing(String),
    #[error("argument outside domain: {0}")]
    Domain(String),
    #[error("truncation at {terms} terms insufficient at x = {x}")]
    Truncation { terms: usize, x: f64 },
    #[error("wrong regime: {0}")]
    Regime(String),
    #[error("density diverges at x = {0}")]
    Divergence(f64),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
