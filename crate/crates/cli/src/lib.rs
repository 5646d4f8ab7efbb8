//! Command implementations behind the `latpoly` binary.

pub mod commands;
pub mod report;
pub mod verify;

pub use report::{CliError, Output, RunReport, Settings};
