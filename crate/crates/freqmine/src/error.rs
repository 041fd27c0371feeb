use thiserror::Error;

use crate::transactions::Tid;

#[derive(Debug, Error)]
pub enum Error {
    #[error("input contains no transactions")]
    EmptyDatabase,
    #[error("blank transaction on line {0}")]
    BlankLine(usize),
    #[error("partition base must be at least 2, got {0}")]
    InvalidBase(u32),
    #[error("cannot split {m} transactions into {parts} partitions")]
    TooManyPartitions { parts: usize, m: usize },
    #[error("item `{0}` is not in the F1 index")]
    IndexMiss(String),
    #[error("transaction id T{0} is out of range for this database")]
    CorruptIndex(Tid),
    #[error("item `{0}` is not in the header table")]
    UnknownItem(String),
    #[error("missing support for subset {{{0}}}")]
    InconsistentInput(String),
    #[error("invalid generator config: {0}")]
    ConfigError(String),
    #[error("invalid fraction `{0}`")]
    InvalidFraction(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
