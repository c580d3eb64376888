use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    /// Some starred subexpression has a constant term that is not starrable.
    #[error("invalid expression: constant term {constant} of `{subexpression}` is not starrable")]
    Invalid {
        subexpression: String,
        constant: String,
    },

    #[error("not starrable: {0}")]
    NotStarrable(String),

    #[error("monoid mismatch: {0}")]
    MonoidMismatch(String),

    #[error("unsupported operation: {0}")]
    Unsupported(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("not a morphism: {0}")]
    NotAMorphism(#[from] crate::automaton::MorphismViolation),

    #[error("invalid state map: {0}")]
    StateMap(String),

    /// One of the running invariants of the derived-term construction failed.
    /// This is a bug, never an input error.
    #[error("derived-term invariant violated at `{expression}`: {detail}")]
    Invariant { expression: String, detail: String },
}
