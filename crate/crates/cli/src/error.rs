use thiserror::Error;

use crate::dsl::ParseError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Spec(String),
    #[error(transparent)]
    Model(#[from] models::ModelError),
    #[error(transparent)]
    Db(#[from] dbracket::DbError),
    #[error(transparent)]
    Alg(#[from] ncalg::AlgError),
    #[error(transparent)]
    Rep(#[from] repspace::RepError),
    #[error(transparent)]
    Flow(#[from] kontsevich::KError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
