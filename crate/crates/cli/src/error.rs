use std::fmt;

use moment_lab::Error;

/// Failure of a subcommand, carrying its process exit code.
#[derive(Debug)]
pub enum CliError {
    Config(String),
    /// A computed quantity breached its tolerance.
    Numeric(String),
    Resource(String),
    Core(Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numeric(_) => 3,
            CliError::Resource(_) => 4,
            CliError::Core(e) => match e {
                Error::IncompleteData { .. } | Error::Resource(_) | Error::Io(_) => 4,
                Error::Pole { .. } | Error::NonConvergent(_) => 3,
                _ => 2,
            },
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "configuration error: {m}"),
            CliError::Numeric(m) => write!(f, "tolerance breached: {m}"),
            CliError::Resource(m) => write!(f, "resource error: {m}"),
            CliError::Core(e) => e.fmt(f),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Resource(e.to_string())
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
