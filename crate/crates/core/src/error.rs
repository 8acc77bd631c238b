use std::path::PathBuf;

/// Errors produced by the library.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("order must be at least 1")]
    ZeroOrder,

    #[error("modulus must be positive, got {0}")]
    NonPositiveModulus(i64),

    #[error("residuum of an empty line is undefined")]
    EmptyLine,

    #[error("square of order {order} needs {expected} cells, got {actual}")]
    CellCount {
        order: usize,
        expected: usize,
        actual: usize,
    },

    #[error("cell values must be positive integers")]
    NonPositiveCell,

    #[error("order {0} is not supported here: {1}")]
    UnsupportedOrder(usize, &'static str),

    #[error("index ({i}, {j}) out of range for order {n}")]
    IndexOutOfRange { i: i64, j: i64, n: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("base square is not a magic square of subtraction")]
    NotMagic,

    #[error("block multiplier k must be at least 1")]
    ZeroMultiplier,

    #[error("cell values overflow for k = {0}")]
    Overflow(usize),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid search configuration: {0}")]
    Config(String),

    #[error("slots_remaining {slots} exceeds {available} available values")]
    NotEnoughValues { slots: usize, available: usize },

    #[error("squares of different orders in one stream ({0} vs {1})")]
    MixedOrders(usize, usize),

    #[error("catalog record rejected: {0}")]
    InvalidRecord(String),

    #[error("catalog {path}: malformed record at line {line}: {msg}")]
    CatalogCorrupt {
        path: PathBuf,
        line: usize,
        msg: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
