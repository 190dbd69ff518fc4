//! Concrete double (quasi-)Poisson data: quiver cotangent algebras,
//! multiplicative quiver algebras, surface algebras, the linear bracket on a
//! free algebra and the alternating-type quiver case. Each builder returns a
//! [`dbracket::Context`] carrying bracket, anti-involution and moment map.

mod case_two;
mod cotangent;
mod error;
mod multiplicative;
mod pieces;
mod quiver;
mod surface;

pub use case_two::build_case_two;
pub use cotangent::build_cotangent;
pub use error::ModelError;
pub use multiplicative::{build_multiplicative, ordering_sign};
pub use pieces::fuse_from_pieces;
pub use quiver::{Arrow, QuiverSpec};
pub use surface::{build_g0r1, build_g1r0, build_linear, build_surface};
