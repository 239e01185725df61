//! The `glu` pipeline: validation, moves, quotients, fundamental groups,
//! geometrization and comparison, each producing a JSON report.

pub mod bound;
pub mod commands;
pub mod config;
pub mod error;

pub use bound::{kalelkar_phanse_bound, KpBound};
pub use commands::{
    cmd_compare, cmd_geometrize, cmd_moves_apply, cmd_moves_enumerate, cmd_pi1, cmd_quotients,
    cmd_validate, load_triangulation, Outcome, Status,
};
pub use config::{Mode, PipelineConfig};
pub use error::CliError;
