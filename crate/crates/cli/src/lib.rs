//! Parameter sweeps and table output for the `gasshift` binary.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod gnuplot;
pub mod quantity;
pub mod reports;
pub mod spec;
pub mod sweep;
pub mod table;

pub use config::RunConfig;
pub use spec::{Axis, OutputFormat, OutputSpec, Spacing, SweepSpec};
pub use sweep::run_sweep;
pub use table::{Cell, Column, ResultTable};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("spec error: {0}")]
    Spec(String),
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Core(#[from] gasshift_core::Error),
}

impl CliError {
    pub fn spec(msg: impl Into<String>) -> Self {
        CliError::Spec(msg.into())
    }

    pub fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit code for this failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Spec(_) | CliError::Core(_) => 1,
            CliError::Io { .. } => 3,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

pub const EXIT_OK: i32 = 0;
pub const EXIT_SOLVER_FAILURE: i32 = 2;
