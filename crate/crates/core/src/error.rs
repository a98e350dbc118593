use thiserror::Error;

/// Everything that can go wrong in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid chain: {0}")]
    InvalidChain(String),

    #[error("probability {0} is outside [0, 1]")]
    InvalidProbability(f64),

    /// A closed-form expression was asked for outside the chain sizes it
    /// holds for.
    #[error("{formula} needs N >= {min}, got N = {n}; use the size dispatcher instead")]
    UnsupportedSize {
        formula: &'static str,
        n: usize,
        min: usize,
    },

    #[error("dimension mismatch: expected {expected} spins, got {got}")]
    Dimension { expected: usize, got: usize },

    /// Exact simulation is capped to keep the 2^N state tractable.
    #[error("{n} spins exceeds the limit of {max} for this operation")]
    Resource { n: usize, max: usize },

    #[error("invalid pair coupling set: {0}")]
    InvalidPairSet(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
