//! Library side of the `logroll` command: input documents, command logic,
//! and reports. `main.rs` only parses arguments and prints.

pub mod commands;
pub mod input;
pub mod report;

use thiserror::Error;

pub use commands::{Command, Options, SolveMode};
pub use input::CommitteeDocument;
pub use report::Report;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Io(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("model violation: {0}")]
    Model(#[from] logroll_core::Error),
    #[error("verification failed: {0}")]
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) => 1,
            CliError::Parse(_) => 2,
            CliError::Model(logroll_core::Error::InstanceTooLarge { .. }) => 5,
            CliError::Model(_) => 3,
            CliError::Verification(_) => 4,
        }
    }
}
