//! Twisted representation spaces: index and sign tables, sampling of
//! points, the induced bracket on matrix entries, Jacobiators, the Cartan
//! trivector action and moment-map identities.

mod bracket;
mod cartan;
mod dims;
mod error;
mod group;
mod index;
mod jacobi;
pub mod lie;
mod moment;
mod numeric;
mod point;

pub use bracket::{gen_element, induced_bracket, PairEval, RepBracket};
pub use cartan::{block_basis, cartan_action, comm_sparse, Sparse};
pub use dims::{Mode, TypedDims};
pub use error::RepError;
pub use group::{cond, gaussian, omega, sample_group, sample_orthogonal, sample_structure_group, sample_symplectic};
pub use index::{max_abs, IndexTables};
pub use jacobi::{jacobiator, ClosedJacobiator, JacMode, Scaled, ABS_FLOOR};
pub use moment::{check_moment_map_rep, MomentRepReport};
pub use numeric::{Entry, NumTensor2, NumTensor3};
pub use point::{sample_point, sample_point_with, RepPoint, SampleOptions};
