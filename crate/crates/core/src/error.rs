//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A (p,q) pair that does not describe a torus knot.
    #[error("invalid torus knot T({p},{q}): {reason}")]
    InvalidKnot { p: u64, q: u64, reason: String },

    /// Expression syntax error, with a byte offset into the input.
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    /// An operation was called outside its stated preconditions.
    #[error("{0}")]
    Precondition(String),

    /// Evaluation point outside the domain [0,2].
    #[error("evaluation point {0} is outside [0,2]")]
    OutOfDomain(String),

    /// A split hypothesis failed: an entry of the middle block exceeds the bound.
    #[error("split hypothesis violated at index {index}: entry {entry} exceeds {bound}")]
    SplitHypothesis {
        index: usize,
        entry: u64,
        bound: u64,
    },

    /// Certificate construction or re-verification failure.
    #[error("certificate check failed: {0}")]
    Certificate(String),

    /// Value does not fit the integer range used by the JSON emitters.
    #[error("value {0} does not fit in the JSON integer range")]
    JsonRange(String),
}
