use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Caller passed mismatched or malformed arguments.
    #[error("usage error: {0}")]
    Usage(String),
    /// Mathematically undefined operation (division by zero).
    #[error("domain error: {0}")]
    Domain(String),
    #[error("parse error: {0}")]
    Parse(String),
    /// The operation is not supported for this input, e.g. enumeration over Q.
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// An enumeration would exceed its configured cap.
    #[error("budget exceeded: {0}")]
    Budget(String),
    /// A structural hypothesis of the requested operation does not hold.
    #[error("precondition failed: {0}")]
    Precondition(String),
    /// A search guaranteed to succeed by a structure theorem came back empty.
    #[error("theorem violation: {0}")]
    TheoremViolation(String),
}

impl Error {
    pub fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
    pub fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
    pub fn unsupported(msg: impl Into<String>) -> Self {
        Error::Unsupported(msg.into())
    }
    pub fn budget(msg: impl Into<String>) -> Self {
        Error::Budget(msg.into())
    }
    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
    pub fn finite_field_required() -> Self {
        Error::Unsupported("requires finite field: enumeration over Q is not supported".into())
    }
}
