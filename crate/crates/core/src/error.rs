use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("index {index} out of range for sequence of length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("requested length {requested} exceeds the {available} available bits")]
    LengthExceeded { requested: usize, available: usize },

    #[error("invalid character {found:?} at line {line}, column {column}")]
    InvalidSymbol {
        found: char,
        line: usize,
        column: usize,
    },

    #[error("declared period {period} contradicts the data at index {index}")]
    InconsistentPeriod { period: usize, index: usize },

    #[error("sequence has no declared period")]
    MissingPeriod,

    #[error("invalid shift set: {0}")]
    InvalidShiftSet(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("connection polynomial is not primitive: state cycle length {observed}, expected {expected}")]
    NotPrimitive { observed: usize, expected: usize },

    #[error("polynomial pair is not preferred: {0}")]
    NotPreferred(String),

    #[error("search cost {cost} exceeds budget {budget}")]
    BudgetExceeded { cost: u128, budget: u128 },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}
