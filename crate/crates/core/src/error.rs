use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("group is not transitive")]
    NotTransitive,

    #[error("partition is not invariant under the group")]
    NotInvariant,

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("level {0} is not a large level")]
    NotLargeLevel(usize),

    #[error("position {position} out of range for linking factor {t}")]
    PositionOutOfRange { position: usize, t: usize },

    #[error("no linking automorphism consistent with the diagonal subgroup")]
    NoLinkingAutomorphism,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("search limit exceeded: {0}")]
    LimitExceeded(String),

    #[error("unknown catalog group: {0}")]
    UnknownGroup(String),

    #[error("self-verification failed: {0}")]
    SelfCheck(String),

    #[error("distinguishing search exceeded {0} parts")]
    TooManyParts(usize),

    #[error("document error: {0}")]
    Document(String),
}
