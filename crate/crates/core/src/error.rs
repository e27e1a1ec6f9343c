use thiserror::Error;

/// Errors raised by the toolkit.
///
/// The variants map onto the command-line exit codes: argument and size
/// problems are usage-level, domain errors are mathematical preconditions
/// that the input graph does not meet, and invariant errors are bug traps.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("size limit exceeded: {0}")]
    Size(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn arg(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn size(msg: impl Into<String>) -> Self {
        Error::Size(msg.into())
    }

    pub(crate) fn not_strongly_connected(what: &str) -> Self {
        Error::Domain(format!("{what} requires a strongly connected digraph"))
    }
}
