use std::path::PathBuf;

use uncrel::{BoundsError, QuantumError};

/// CLI-level failures. Everything here maps to exit code 2 (usage, parse or
/// validation); a degenerate bound during `eval` is not an error — the
/// report is still written and the process exits with code 3.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Parse {
        path: PathBuf,
        message: String,
    },
    Validation(String),
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "usage error: {msg}"),
            CliError::Parse { path, message } => {
                write!(f, "parse error in {}: {message}", path.display())
            }
            CliError::Validation(msg) => write!(f, "validation error: {msg}"),
            CliError::Io { path, source } => {
                write!(f, "io error on {}: {source}", path.display())
            }
        }
    }
}

impl std::error::Error for CliError {}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        2
    }

    pub(crate) fn validation_from_quantum(err: &QuantumError, field: &str) -> Self {
        CliError::Validation(format!("{field}: ({}) {err}", err.code()))
    }

    pub(crate) fn validation_from_bounds(err: &BoundsError, field: &str) -> Self {
        CliError::Validation(format!("{field}: ({}) {err}", err.code()))
    }
}
