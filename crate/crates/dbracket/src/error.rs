use ncalg::AlgError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DbError {
    #[error(transparent)]
    Alg(#[from] AlgError),
    #[error("bracket entry ⟪{a},{b}⟫ lies outside e_t(b) A e_h(a) ⊗ e_t(a) A e_h(b)")]
    Block { a: String, b: String },
    #[error("cyclic antisymmetry fails on ({a},{b}): ⟪{b},{a}⟫ ≠ −⟪{a},{b}⟫°")]
    Antisymmetry { a: String, b: String },
    #[error("moment component for `{0}` does not lie in its corner e_s A e_s")]
    MomentCorner(String),
    #[error("moment component for `{0}` is not invertible")]
    MomentNotInvertible(String),
    #[error("not a moment map: {0}")]
    NotAMomentMap(String),
    #[error("fusion needs two distinct idempotents")]
    FuseSame,
    #[error("typed fusion needs equal types at `{0}` and `{1}`")]
    TypedFusionMismatch(String, String),
    #[error("direct sum needs operands of the same kind: {0}")]
    Incompatible(String),
}
