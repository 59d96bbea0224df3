use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid recurrence spec: {0}")]
    InvalidSpec(String),

    #[error("invalid order {0}: the characteristic polynomial needs m >= 2")]
    InvalidOrder(usize),

    #[error("invalid range: lo {lo} > hi {hi}")]
    Range { lo: u64, hi: u64 },

    #[error("enumeration of {count} terms exceeds the cap of {cap}")]
    CapExceeded { count: u128, cap: u64 },

    #[error("polynomial is not symmetric")]
    NotSymmetric,

    #[error("internal error: {0}")]
    Internal(String),

    #[error("ring shape mismatch: ({m1}, arity {a1}) vs ({m2}, arity {a2})")]
    ShapeMismatch { m1: usize, a1: usize, m2: usize, a2: usize },

    #[error("generator slot {slot} out of range for arity {arity}")]
    SlotOutOfRange { slot: usize, arity: usize },

    #[error("lex error at offset {offset}: unexpected character {found:?}")]
    Lex { offset: usize, found: char },

    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("evaluation error at offset {offset}: {message}")]
    Eval { offset: usize, message: String },

    #[error("b-file line {line}: {message}")]
    BFile { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
