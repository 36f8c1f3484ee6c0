use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("unsupported configuration: {0}")]
    Config(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("incompatible family: {0}")]
    Incompatible(String),
    #[error("internal consistency failure: {0}")]
    Consistency(String),
    #[error("completeness failure: {0}")]
    Completeness(String),
    #[error("inconclusive: {0}")]
    Inconclusive(String),
}

impl Error {
    /// Short machine-readable tag.
    pub fn reason(&self) -> &'static str {
        match self {
            Error::Config(_) => "config",
            Error::Domain(_) => "domain",
            Error::Incompatible(_) => "incompatible_family",
            Error::Consistency(_) => "consistency",
            Error::Completeness(_) => "completeness",
            Error::Inconclusive(_) => "inconclusive",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
