//! Command-line front end for `pomset-core`: JSON problem files, the
//! command runner and report rendering.

pub mod commands;
pub mod problem;
mod report;

pub use commands::{run, Command, OracleCommand, Options};
pub use problem::{Problem, ProblemFile};
pub use report::{Outcome, Report};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] pomset_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use pomset_core::Error;
        match self {
            CliError::Core(Error::BudgetExceeded { .. }) => 3,
            CliError::Core(Error::Inconsistent(_)) => 1,
            _ => 2,
        }
    }
}
