//! The modified Kontsevich system on the handle algebra: symbolic vector
//! fields from the double bracket, the commutation checks behind its first
//! integrals, and RK4 flows on representation spaces.

mod displays;
mod error;
mod flow;
mod system;

pub use displays::{
    commute_report, displays, phi_commute_check, reduction_rhs, render_display, sharp_commute_check, sharp_commute_check_for,
    CommuteReport, DisplayCheck,
};
pub use error::KError;
pub use flow::{flow, order_check, ConservationReport, FlowConfig, OrderCheck, Sample, Trajectory, COND_LIMIT};
pub use system::{closed_form, compact_point, vector_field, vector_field_pencil, HamiltonianSpec, KSystem, VectorField};
