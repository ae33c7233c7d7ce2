use thiserror::Error;

/// Errors raised by the geometry kernel and the symmetrization operators.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("empty input")]
    EmptyInput,
    #[error("halfspace system is unbounded")]
    Unbounded,
    #[error("halfspace system is infeasible")]
    Empty,
    #[error("degenerate body: {0}")]
    Degenerate(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid subspace: {0}")]
    InvalidSubspace(String),
    #[error("invalid M-polygon: {0}")]
    InvalidM(String),
    #[error("the origin is not inside the body (minimum support value {0})")]
    OriginNotInside(f64),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("vertex cap exceeded at step {step}: {vertices} > {cap}")]
    CapExceeded { step: usize, vertices: usize, cap: usize },
    #[error("i/o: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
