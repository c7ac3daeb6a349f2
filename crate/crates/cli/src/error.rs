//! Command failures and their exit codes.

use hypred::Error;
use thiserror::Error as ThisError;

pub const EXIT_OK: i32 = 0;
pub const EXIT_SUITE_FAILURE: i32 = 1;
pub const EXIT_MATH: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_PARSE: i32 = 65;
pub const EXIT_CANT_CREATE: i32 = 73;

#[derive(Debug, ThisError)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("cannot write output: {0}")]
    Output(String),
    #[error("{0}")]
    Math(Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Parse(_) => EXIT_PARSE,
            CliError::Output(_) => EXIT_CANT_CREATE,
            CliError::Math(_) => EXIT_MATH,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Syntax { .. } | Error::UnknownVariable { .. } | Error::ExponentOverflow { .. } | Error::Json(_) => {
                CliError::Parse(e.to_string())
            }
            Error::UnknownName(_) | Error::InvalidField(_) => CliError::Usage(e.to_string()),
            other => CliError::Math(other),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn codes() {
        assert_eq!(CliError::from(Error::Json("x".into())).exit_code(), EXIT_PARSE);
        assert_eq!(CliError::from(Error::UnknownName("x".into())).exit_code(), EXIT_USAGE);
        assert_eq!(CliError::from(Error::NonIntegral("1/2".into())).exit_code(), EXIT_MATH);
        assert_eq!(CliError::from(Error::BudgetExceeded(3)).exit_code(), EXIT_MATH);
    }
}
