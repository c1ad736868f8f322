use thiserror::Error;

/// Errors raised by the library. Crystal operators signal `Bottom` through
/// `Option`, never through this type.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("rank must be at least 1, got {0}")]
    InvalidRank(usize),

    #[error("rank {rank} exceeds the supported bound {max} for {what}")]
    RankTooLarge { rank: usize, max: usize, what: &'static str },

    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("not a reduced word of the longest element: {0:?}")]
    NotReduced(Vec<usize>),

    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),

    #[error("invalid permutation images {0:?}")]
    InvalidPermutation(Vec<usize>),

    #[error("invalid Maya diagram {members:?} for rank {rank}")]
    InvalidMaya { rank: usize, members: Vec<usize> },

    #[error("BZ datum has flavor {found}, expected {expected}")]
    FlavorMismatch { expected: &'static str, found: &'static str },

    #[error("vertex {0} is neither a sink nor a source")]
    NotSinkOrSource(usize),

    #[error("orientation tables inconsistent for {maya}: {detail}")]
    InconsistentOrientation { maya: String, detail: String },

    #[error("enumeration of {count} items exceeds cap {cap}")]
    ResourceLimit { count: u128, cap: u128 },

    #[error("{0} is not a prime above 2^15")]
    InvalidPrime(u64),

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
