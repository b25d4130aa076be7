use thiserror::Error;

/// Errors raised by the numerical routines in this crate.
///
/// Bound violations and non-divergence are never errors; they are reported as
/// data in the corresponding result types.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("degenerate or reversed interval [{a}, {b}]")]
    BadInterval { a: String, b: String },

    #[error("tolerance must be positive, got {0}")]
    BadTolerance(String),

    #[error("pole: Laurent polynomial evaluated at k = 0")]
    Pole,

    #[error("range tolerance {tol} unreachable within {cells} refinement cells")]
    ToleranceUnreachable { tol: String, cells: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("budget exceeded: {what} needs {needed}, budget is {budget}")]
    Budget {
        what: &'static str,
        needed: u128,
        budget: u128,
    },

    #[error("construction failed: {0}")]
    Construction(String),

    #[error("LP solver failure: {0}")]
    Solver(String),

    #[error(
        "underdetermined fit: {samples} samples for {unknowns} unknowns (need at least {needed})"
    )]
    Underdetermined {
        samples: usize,
        unknowns: usize,
        needed: usize,
    },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("symmetry reduction inconsistent: {0}")]
    Reduction(String),

    #[error("eigensolver failed: {0}")]
    Eigen(String),
}

pub type Result<T> = std::result::Result<T, Error>;
