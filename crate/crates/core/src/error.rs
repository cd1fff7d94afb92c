//! Error type shared across the crate.

use thiserror::Error;

/// Everything that can go wrong constructing states, running the channel,
/// or searching for crossings.
#[derive(Debug, Error)]
pub enum Error {
    /// Matrix dimensions do not match what the operation requires.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    /// A matrix that must be Hermitian is not, beyond tolerance.
    #[error("matrix is not Hermitian (max deviation {max_dev:.3e})")]
    NotHermitian { max_dev: f64 },

    /// A density matrix failed validation (trace, positivity, shape).
    #[error("invalid density matrix: {reason}")]
    InvalidState { reason: String },

    /// A family or channel parameter is outside its admissible range.
    #[error("parameter {name} = {value} outside {range}")]
    ParamRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    /// Evolution times must be non-negative.
    #[error("time must be non-negative, got {0}")]
    NegativeTime(f64),

    /// The eigensolver did not reach its off-diagonal tolerance.
    #[error("eigensolver did not converge within {0} sweeps")]
    NoConvergence(usize),

    /// Bisection was asked to refine an interval whose endpoints do not
    /// straddle a sign change.
    #[error("no sign change on [{a}, {b}]")]
    NoBracket { a: f64, b: f64 },

    /// A sweep or scan was requested over an empty time grid.
    #[error("time grid is empty")]
    EmptyGrid,
}

pub type Result<T> = std::result::Result<T, Error>;
