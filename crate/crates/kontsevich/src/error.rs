use thiserror::Error;

#[derive(Debug, Error)]
pub enum KError {
    #[error("flow config: {0}")]
    Config(String),
    #[error("{which} became numerically singular at step {step} (condition {cond:e})")]
    Singular { step: usize, which: String, cond: f64 },
    #[error("flow diverged at step {0}")]
    NonFinite(usize),
    #[error(transparent)]
    Model(#[from] models::ModelError),
    #[error(transparent)]
    Alg(#[from] ncalg::AlgError),
    #[error(transparent)]
    Rep(#[from] repspace::RepError),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
