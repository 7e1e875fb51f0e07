use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A caller violated an operation's precondition.
    #[error("usage error: {0}")]
    Usage(String),

    #[error("division error: {0}")]
    Division(String),

    /// Two routes that must agree exactly did not.
    #[error("internal consistency error: {0}")]
    Consistency(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("numerical error: {message} (after {iterations} iterations)")]
    Numerical { message: String, iterations: usize },
}

impl Error {
    pub fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub fn consistency(msg: impl Into<String>) -> Self {
        Error::Consistency(msg.into())
    }

    /// Short machine-readable tag, used in error records emitted by the CLI.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Usage(_) => "usage",
            Error::Division(_) => "division",
            Error::Consistency(_) => "consistency",
            Error::Domain(_) => "domain",
            Error::Numerical { .. } => "numerical",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
