//! Double brackets on path algebras: evaluation by the derivation rules,
//! double Jacobiators, (quasi-)Poisson certification, compatibility with
//! anti-involutions, moment maps, the opposite algebra and fusion.

mod certify;
mod compat;
mod context;
mod dump;
mod error;
mod fusion;
mod moment;
mod opposite;
mod table;
mod triple;

pub use certify::{certify, certify_fuzz, CertReport, TripleFailure};
pub use compat::{check_compat, CompatFailure, CompatReport};
pub use context::Context;
pub use dump::dump_json;
pub use error::DbError;
pub use fusion::{direct_sum, fuse, fusion_correction, FusedContext, FusionKind};
pub use moment::{
    check_moment_map, normalize_moment_map, MomentCheck, MomentFailure, MomentKind, MomentMap,
    Normalized,
};
pub use opposite::{op_algebra, op_element, opposite, opposite_antihom, opposite_context, opposite_moment};
pub use table::{BracketTable, Claim};
pub use triple::{quasi_defect, triple_bracket, triple_bracket_right};
