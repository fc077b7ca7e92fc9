use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unsupported root system {kind}{rank}")]
    UnsupportedType { kind: String, rank: usize },

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("resource cap exceeded: {what} would need {needed}, cap is {cap}")]
    ResourceCap {
        what: &'static str,
        needed: usize,
        cap: usize,
    },

    #[error("truncation orders differ: {left} vs {right}")]
    OrderMismatch { left: String, right: String },

    #[error("not a character: division leaves remainder at {0}")]
    NotDivisible(String),

    #[error("unsupported sector: {0}")]
    UnsupportedSector(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn arg<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Argument(msg.into()))
}
