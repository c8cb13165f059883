use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("breakpoints must be strictly increasing (index {index})")]
    UnsortedBreakpoints { index: usize },
    #[error("expected {expected} slopes for {breakpoints} breakpoints, got {got}")]
    SlopeCountMismatch {
        breakpoints: usize,
        expected: usize,
        got: usize,
    },
    #[error("monomial form has no finite term")]
    NoFiniteTerm,
    #[error("empty interval")]
    EmptyInterval,
    #[error("function is not strictly increasing")]
    NotStrictlyIncreasing,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("invalid polygonal line: {0}")]
    InvalidPolyline(String),
    #[error("internal check failed: {0}")]
    Verification(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn precondition<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Precondition(msg.into()))
}
