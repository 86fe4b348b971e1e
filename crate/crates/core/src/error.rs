use thiserror::Error;

/// Errors produced by the partition toolkit.
#[derive(Debug, Error)]
pub enum Error {
    /// An array failed the partition monotonicity check at `index`.
    #[error("not a partition: entry {value} at {index:?} is smaller than {next} at {next_index:?}")]
    InvalidPartition {
        index: Vec<usize>,
        value: u64,
        next_index: Vec<usize>,
        next: u64,
    },

    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },

    #[error("operation `{op}` does not support rank {rank}")]
    UnsupportedRank { op: &'static str, rank: usize },

    /// A set that should be an order ideal is missing `missing` below `cell`.
    #[error("not a lower set: {cell:?} is present but {missing:?} is not")]
    NotLowerSet {
        cell: Vec<usize>,
        missing: Vec<usize>,
    },

    #[error("index {index:?} is out of range for bounds {bounds:?}")]
    OutOfBounds { index: Vec<usize>, bounds: Vec<usize> },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// An enumeration was requested without any finite bound.
    #[error("unbounded enumeration: {0}")]
    Unbounded(String),

    /// A documented soft limit was exceeded.
    #[error("resource limit exceeded: {what} is {actual}, limit is {limit}")]
    ResourceLimit {
        what: &'static str,
        actual: usize,
        limit: usize,
    },

    #[error("malformed input: {0}")]
    Malformed(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
