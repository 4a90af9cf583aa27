//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// The requested series or constant diverges.
    #[error("divergent: {0}")]
    Divergent(String),

    /// A closed-form hypothesis is violated; the message names it.
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    /// Malformed argument outside any mathematical hypothesis.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Bad engine or CLI configuration.
    #[error("configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
