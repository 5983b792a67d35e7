//! Crate-wide error type.

use std::path::PathBuf;

/// Errors produced by builders, evaluators, and the experiment drivers.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A precondition on an argument was violated.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A scale guard was exceeded (grid too large, oracle too big).
    #[error("capacity exceeded: {0}")]
    Capacity(String),

    /// A frequency-data file could not be parsed.
    #[error("failed to parse {path}: {source}")]
    GridParse {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },

    /// A frequency-data file parsed but violated a validity constraint.
    #[error("invalid frequency data in {path}: {detail}")]
    GridValidation { path: PathBuf, detail: String },

    /// An experiment rung failed; partial results were already handed to the sink.
    #[error("ladder rung R = {r} failed: {source}")]
    LadderRung {
        r: f64,
        #[source]
        source: Box<Error>,
    },

    /// Filesystem failure, tagged with the path involved.
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
