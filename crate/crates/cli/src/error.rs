use std::io;
use std::path::PathBuf;

use thiserror::Error;

/// Exit code for invalid flags or malformed inputs.
pub const EXIT_USAGE: i32 = 1;
/// Exit code for filesystem failures.
pub const EXIT_IO: i32 = 2;
/// Exit code for broken internal invariants.
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error("{context}: {source}")]
    Context {
        context: String,
        #[source]
        source: Box<CliError>,
    },
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    pub fn context(self, context: impl Into<String>) -> Self {
        CliError::Context {
            context: context.into(),
            source: Box::new(self),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Io { .. } => EXIT_IO,
            CliError::Internal(_) => EXIT_INTERNAL,
            CliError::Context { source, .. } => source.exit_code(),
        }
    }
}

impl From<genobound_core::Error> for CliError {
    fn from(e: genobound_core::Error) -> Self {
        if e.is_input_error() {
            CliError::Usage(e.to_string())
        } else {
            CliError::Internal(e.to_string())
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
