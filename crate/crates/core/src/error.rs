use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// An operation needed an even (or odd) value, or more trailing zeros than present.
    #[error("parity error: {0}")]
    Parity(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("resource limit: {0}")]
    Resource(String),

    /// An iteration hit its step cap before reaching 1.
    #[error("truncated after {cap} steps")]
    Truncated { cap: u64 },

    #[error("checkpoint error: {0}")]
    Checkpoint(String),

    #[error("render error: {0}")]
    Render(String),

    #[error("internal consistency violated: {0}")]
    Internal(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
