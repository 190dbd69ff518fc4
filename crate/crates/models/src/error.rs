use dbracket::DbError;
use ncalg::AlgError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("malformed quiver: {0}")]
    Quiver(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("arrow `{0}` joins vertices of the same type")]
    SameTypes(String),
    #[error(transparent)]
    Db(#[from] DbError),
    #[error(transparent)]
    Alg(#[from] AlgError),
}
