use thiserror::Error;

/// Errors raised while building or querying an index.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid symbol code {0}")]
    InvalidSymbol(u8),

    #[error("invalid base {byte:?} in record {record} at offset {offset}")]
    InvalidBase {
        record: usize,
        offset: usize,
        byte: char,
    },

    #[error("empty collection")]
    EmptyCollection,

    #[error("read {0} is empty")]
    EmptyRead(usize),

    #[error("position {pos} out of range for length {len}")]
    OutOfRange { pos: usize, len: usize },

    #[error("span of length {len} at position {pos} crosses a string boundary")]
    CrossesBoundary { pos: usize, len: usize },

    #[error("run of length {0} does not fit in 32 bits")]
    RunTooLong(usize),

    #[error("corrupt collection: {0}")]
    Corrupt(String),

    #[error("invalid parameter: {0}")]
    InvalidParam(String),

    #[error("malformed FASTA: {0}")]
    Fasta(String),

    #[error("index file: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
