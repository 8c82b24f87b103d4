use thiserror::Error;

use crate::syntax::Formula;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("type mismatch{}: expected {expected}, found {found}", fmt_position(.position))]
    TypeMismatch {
        expected: Formula,
        found: Formula,
        position: Option<usize>,
    },

    #[error("permutation size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("arity mismatch: shape has arity {expected}, got {found} arguments")]
    ArityMismatch { expected: usize, found: usize },

    #[error("index {index} out of range: {detail}")]
    IndexOutOfRange { index: usize, detail: String },

    #[error("shape contains the unit, which is not allowed here")]
    UnitNotAllowed,

    #[error("unknown equation label {0:?}")]
    UnknownLabel(String),

    #[error("missing binding for metavariable {0}")]
    MissingBinding(String),

    #[error("cannot assign indices: {0}")]
    UnsatisfiableIndices(String),

    #[error("closure exceeded budget of {budget} elements")]
    BudgetExceeded { budget: u64 },

    #[error("arrow terms belong to different dialects")]
    DialectMismatch,
}

fn fmt_position(position: &Option<usize>) -> String {
    match position {
        Some(offset) => format!(" at byte {offset}"),
        None => String::new(),
    }
}

pub type Result<T> = std::result::Result<T, Error>;
