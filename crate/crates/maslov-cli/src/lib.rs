//! Front end for the `maslov` binary: run settings, command
//! implementations and the acceptance suite.

pub mod commands;
pub mod config;
pub mod error;
pub mod suite;

pub use config::{Format, RunConfig};
pub use error::{CliError, Result, Verdict};
