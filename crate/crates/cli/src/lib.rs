//! File formats and subcommands for the `hder` binary.

pub mod commands;
pub mod error;
pub mod records;

pub use commands::{CommandOutput, Workspace};
pub use error::CliError;
