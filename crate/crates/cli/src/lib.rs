//! Command implementations behind the `qbridge` binary.
//!
//! Each command returns its report or CSV as a `String`; the binary prints it
//! or writes it atomically, and maps [`CliError`] onto exit codes.

pub mod commands;
pub mod output;
pub mod sweep;

use thiserror::Error;

pub use commands::*;
pub use sweep::{fmt7, Axis, SweepSpec};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    OutOfRegion(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Io(_) => 3,
            CliError::OutOfRegion(_) => 4,
        }
    }
}

impl From<qbridge_core::Error> for CliError {
    fn from(e: qbridge_core::Error) -> Self {
        match e {
            qbridge_core::Error::OutOfRegion { .. } => CliError::OutOfRegion(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}
