//! File formats, configuration and command implementations behind the
//! `phasetomo` binary.

pub mod commands;
pub mod config;
pub mod error;
pub mod formats;

pub use commands::{Outcome, Status};
pub use config::{Overrides, Plan, RunConfig};
pub use error::{CliError, CliResult};

/// Environment variable holding the worker thread count.
pub const THREADS_ENV: &str = "PHASETOMO_THREADS";
