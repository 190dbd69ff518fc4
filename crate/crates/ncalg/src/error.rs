use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgError {
    #[error("duplicate idempotent label `{0}`")]
    DuplicateLabel(String),
    #[error("base ring needs at least one idempotent")]
    EmptyBase,
    #[error("unknown idempotent label `{0}`")]
    UnknownLabel(String),
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("generator `{0}` is not invertible")]
    NotInvertible(String),
    #[error("malformed element: {0}")]
    Malformed(String),
    #[error("cannot invert non-monomial element {0}")]
    UnsupportedInverse(String),
    #[error("parse error at column {col}: {msg}")]
    Parse { col: usize, msg: String },
}
