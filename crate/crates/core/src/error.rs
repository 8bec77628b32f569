use thiserror::Error;

/// Errors produced by construction and verification operations.
#[derive(Debug, Error)]
pub enum Error {
    #[error("algebra mismatch: {0}")]
    AlgebraMismatch(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("matrix is not Hermitian: deviation {deviation:.3e} exceeds {tol:.3e}")]
    NotHermitian { deviation: f64, tol: f64 },

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("quotient is degenerate: the pair Gram matrix has no positive spectrum")]
    DegenerateQuotient,

    #[error("structure mismatch: point does not belong to this Kähler structure")]
    StructureMismatch,

    #[error("cyclicity failure: spanning set has rank {rank}, need {need}")]
    CyclicityFailure { rank: usize, need: usize },

    #[error("numerical failure: {0}")]
    NumericalFailure(String),
}

pub type Result<T> = std::result::Result<T, Error>;
