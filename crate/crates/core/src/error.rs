use thiserror::Error;

/// Failures shared by every module of the crate.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("numerical non-convergence: {0}")]
    NonConvergence(String),
    #[error("no decay envelope: {0}")]
    EnvelopeMissing(String),
    #[error("conjugate diverges at s = {0}")]
    ConjugateDiverges(f64),
    #[error("decay budget violated: {0}")]
    DecayBudget(String),
    #[error("unknown condition `{0}`")]
    UnknownCondition(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Coarse classification used by front ends to pick exit codes.
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Parse(_) | Error::UnknownCondition(_) => ErrorKind::Usage,
            Error::NonConvergence(_) => ErrorKind::Numeric,
            _ => ErrorKind::Precondition,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Usage,
    Precondition,
    Numeric,
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

pub(crate) fn precondition(msg: impl Into<String>) -> Error {
    Error::Precondition(msg.into())
}

/// First error raised inside a closure that must return a plain value
/// (quadrature integrands); later errors are dropped.
#[derive(Debug, Default)]
pub(crate) struct ErrorSlot(std::sync::Mutex<Option<Error>>);

impl ErrorSlot {
    pub(crate) fn new() -> Self {
        ErrorSlot::default()
    }

    /// Unwraps `r`, recording the error and substituting `fallback`.
    pub(crate) fn take_or<T>(&self, r: Result<T>, fallback: T) -> T {
        match r {
            Ok(v) => v,
            Err(e) => {
                self.0.lock().unwrap().get_or_insert(e);
                fallback
            }
        }
    }

    pub(crate) fn finish<T>(self, value: Result<T>) -> Result<T> {
        match self.0.into_inner().unwrap() {
            Some(e) => Err(e),
            None => value,
        }
    }
}
