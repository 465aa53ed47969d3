use thiserror::Error;

/// Errors shared by every module of the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    /// A precondition on an argument was violated.
    #[error("invalid input: {0}")]
    Input(String),

    /// A text file failed to parse; `line` is 1-based.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// The graph is too large for the exhaustive search algorithms.
    #[error("graph has {order} vertices, above the supported bound of {limit}")]
    ScaleExceeded { order: usize, limit: usize },

    /// An operation that needs a connected graph was given a disconnected one.
    #[error("graph is disconnected: {0}")]
    Disconnected(String),

    /// A verified construction produced an object violating its own
    /// guarantees.  Never expected to fire; treated as a bug signal.
    #[error("construction self-check failed: {0}")]
    Construction(String),

    /// Two independently computed facts contradict a proven equivalence.
    /// Never expected to fire; treated as a bug signal.
    #[error("consistency check failed: {0}")]
    Inconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }
}
