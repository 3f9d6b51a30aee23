use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain where the quantity is defined.
    #[error("domain error in {op}: {msg}")]
    Domain { op: &'static str, msg: String },
    /// A formula that needs the alphabet size was called without one.
    #[error("{op} requires the alphabet size N for exponent a = {a}")]
    MissingAlphabet { op: &'static str, a: f64 },
    /// A numerical result violated an invariant that holds analytically.
    #[error("internal consistency failure in {op}: {msg}")]
    Internal { op: &'static str, msg: String },
    #[error("trace i/o: {0}")]
    Io(String),
    #[error("malformed trace file: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(op: &'static str, msg: impl Into<String>) -> Self {
        Error::Domain { op, msg: msg.into() }
    }

    pub(crate) fn internal(op: &'static str, msg: impl Into<String>) -> Self {
        Error::Internal { op, msg: msg.into() }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
