//! Library side of the `dffv` command: configuration, output files and the
//! acceptance suite.

pub mod accept;
pub mod config;
pub mod output;
pub mod run;

pub use config::{ConfigError, OutputFormat, Overrides, RunConfig};
pub use run::{execute, RunSummary};

/// Environment variable capping the worker pool.
pub const THREADS_VAR: &str = "DFFV_THREADS";
