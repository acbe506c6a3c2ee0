use thiserror::Error;

/// Errors surfaced by parsing, validation, and resource-limited searches.
///
/// `Parse` and `Invalid` map to CLI exit code 1, `ResourceLimit` to exit
/// code 2. Resource limits are never silently converted into answers: an
/// operation that would exceed a configured budget reports the limit
/// instead of returning a possibly wrong result.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
}

impl Error {
    /// CLI exit code for this error class.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) | Error::Invalid(_) => 1,
            Error::ResourceLimit(_) => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
