use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cyclotomic index must be positive")]
    ZeroIndex,
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("element {0:?} does not belong to the group")]
    NotInGroup(Vec<u64>),
    #[error("duplicate top cell {0:?}")]
    DuplicateCell(Vec<u64>),
    #[error("invalid prime tuple: {0}")]
    InvalidPrimes(String),
    #[error("invalid index set: {0}")]
    InvalidIndexSet(String),
    #[error("the formula is stated for nonempty index sets")]
    EmptyIndexSet,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
