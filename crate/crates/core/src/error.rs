use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A denominator factor of a coefficient formula vanishes at the chosen
    /// parameter point.
    #[error("resonant parameter point: factor `{factor}` vanishes (try different parameter values)")]
    Resonant { factor: String },

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn resonant(factor: impl Into<String>) -> Self {
        Error::Resonant { factor: factor.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
