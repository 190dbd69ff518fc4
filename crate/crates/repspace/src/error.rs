use thiserror::Error;

#[derive(Debug, Error)]
pub enum RepError {
    #[error("invalid dimension vector: {0}")]
    Dims(String),
    #[error("twisted mode needs every vertex typed; `{0}` is untyped")]
    Untyped(String),
    #[error("sampling failed after {attempts} attempts (seed {seed}): {msg}")]
    Sampling { seed: u64, attempts: usize, msg: String },
    #[error("generator `{0}` has no matrix assigned")]
    Unassigned(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("twist relation violated for `{gen}` (error {err:e})")]
    Twist { gen: String, err: f64 },
    #[error("bad point data: {0}")]
    Import(String),
    #[error(transparent)]
    Alg(#[from] ncalg::AlgError),
}
