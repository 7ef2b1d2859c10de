use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid problem `{id}`: {reason}")]
    InvalidProblem { id: String, reason: String },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("unknown benchmark function `{0}` (expected F1..F19)")]
    UnknownFunction(String),

    #[error("`{id}` expects {expected} variables, got {actual}")]
    DimensionMismatch { id: String, expected: usize, actual: usize },

    #[error("golden ratio needs at least two dimensions, problem `{0}` has one")]
    GoldenRatioDimension(String),

    #[error("cannot summarize an empty sample")]
    EmptySample,

    #[error("rank-sum test needs at least two observations per sample (got {0} and {1})")]
    SampleTooSmall(usize, usize),

    #[error("function `{func}` does not share the algorithm set of the first row")]
    InconsistentAlgorithms { func: String },
}
