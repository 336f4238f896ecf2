use thiserror::Error;

/// Errors raised by the exact-arithmetic pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("operation undefined for the zero polynomial: {0}")]
    ZeroPolynomial(&'static str),
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("system is consistent but rank deficient ({rank} < {unknowns} unknowns)")]
    Ambiguous { rank: usize, unknowns: usize },
    #[error("polynomials use different variables: {0} vs {1}")]
    VariableMismatch(String, String),
    #[error("lattice invariant violated: {0}")]
    Lattice(String),
}

pub type Result<T> = std::result::Result<T, Error>;
