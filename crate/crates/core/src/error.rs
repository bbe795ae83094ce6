use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error("theorem violation: {0}")]
    TheoremViolation(String),
    #[error("not defined: {0}")]
    NotDefined(String),
    #[error("singular places are not rational: {0}")]
    NonRationalPosition(String),
    #[error("reducible curve with factors {0:?}")]
    ReducibleCurve(Vec<String>),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn pre<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Precondition(msg.into()))
}
