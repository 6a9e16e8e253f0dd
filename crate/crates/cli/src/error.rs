use std::process::ExitCode;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Lib(#[from] tropfm::Error),

    #[error("{0}")]
    Io(#[from] std::io::Error),

    #[error("{0}")]
    Usage(String),
}

pub const EXIT_OTHER: u8 = 1;
pub const EXIT_PARSE: u8 = 2;
pub const EXIT_NOT_OPTIMAL: u8 = 3;
pub const EXIT_BUDGET: u8 = 4;

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Parse(_) | CliError::Lib(tropfm::Error::Parse(_)) => EXIT_PARSE,
            CliError::Lib(tropfm::Error::NotOptimal) => EXIT_NOT_OPTIMAL,
            CliError::Lib(tropfm::Error::BudgetExceeded(_)) => EXIT_BUDGET,
            _ => EXIT_OTHER,
        }
    }

    pub fn exit(&self) -> ExitCode {
        ExitCode::from(self.code())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(std::io::Error::other(e))
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Io(std::io::Error::other(e))
    }
}
