use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    /// A mathematical invariant of a domain type was violated
    /// (negative entry in a nonnegative matrix, NaN in a vector, ...).
    #[error("invariant violation: {0}")]
    Invariant(String),

    /// A hypothesis of one of the theorems does not hold
    /// (s <= rho_K, B*rho_K >= 1, B >= lambda_1, C*rho_K >= 1).
    #[error("admissibility hypothesis violated: {0}")]
    Admissibility(String),

    #[error("numeric failure: {0}")]
    Numeric(String),

    #[error("bad parameter: {0}")]
    Parameter(String),

    #[error("resource limit exceeded: {0}")]
    Resource(String),

    #[error("convergence failure: {0}")]
    Convergence(String),

    #[error("schema error: {0}")]
    Schema(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code the CLI maps this error to. Admissibility failures
    /// are hypothesis violations, not program faults, and get their own code.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Admissibility(_) => 2,
            _ => 1,
        }
    }
}
