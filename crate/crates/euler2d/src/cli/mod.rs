//! Config-file driven commands backing the `euler2d` binary.
//!
//! A configuration is a JSON document selecting one solution family with
//! its parameters (expressions as strings in the [`crate::expr`] grammar),
//! a label/time grid for verification, and optional trajectory, Eulerian
//! and PDE sections. See the crate README for the full schema and
//! `examples/configs/` for ready-made files.
//!
//! Exit codes: 0 all checks pass, 1 check or runtime failure, 2 usage or
//! configuration error.

mod builtin;
mod commands;
mod config;

pub use builtin::{builtin_figure, builtin_gerstner, builtin_kirchhoff};
pub use commands::{
    cmd_field, cmd_figure, cmd_trajectories, cmd_verify, field_csv, run_suite, trajectory_csv,
    SuiteOutcome,
};
pub use config::{
    load_config, Config, EulerSection, FamilyConfig, GridSection, OutputSection, PdeSection,
    TrajectorySection,
};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad usage or configuration: exit code 2.
    #[error("config error: {0}")]
    Config(String),
    /// Runtime or check failure: exit code 1.
    #[error("{0}")]
    Runtime(String),
    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    /// The process exit code this error maps to.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Runtime(_) | CliError::Io { .. } => 1,
        }
    }
}

/// Fixed 17-significant-digit float formatting used by every CSV writer,
/// so identical configurations produce byte-identical files.
pub(crate) fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}
