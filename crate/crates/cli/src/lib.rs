pub mod build;
pub mod dsl;
pub mod error;
pub mod report;
pub mod suite;

pub use build::{algebra, build_base, build_context, dims, fuse_labels, quiver, rep};
pub use dsl::{parse_model, AlgebraSection, KontsevichSection, ModelKind, ModelSpec, ParseError, PointKind, RepSection, Suite, Tamper};
pub use error::CliError;
pub use report::{emit_report, CheckRecord, Format, Report, Status, Summary};
pub use suite::{all_entries, effective_spec, flow_config, flow_point, hamiltonian, run_suite, RunOptions};
