use alloc::string::String;
use core::fmt;

/// Errors raised by the embedding library.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A parameter lies outside the domain where the construction is defined.
    Domain(String),
    /// A vector of the wrong length was handed to an embedding.
    DimensionMismatch { expected: usize, found: usize },
    /// A moment integral diverges because of the heavy tail of the law.
    Divergent(String),
    /// A desk-scale guard refused an instance that is too large.
    Guard(String),
    /// Calibration data is insufficient for a stable estimate.
    Calibration(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// True for errors that mean "the caller asked for something outside the
    /// parameter domain" as opposed to resource guards.
    pub fn is_domain(&self) -> bool {
        matches!(
            self,
            Error::Domain(_) | Error::DimensionMismatch { .. } | Error::Divergent(_) | Error::Calibration(_)
        )
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "parameter out of domain: {msg}"),
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::Divergent(msg) => write!(f, "divergent integral: {msg}"),
            Error::Guard(msg) => write!(f, "instance guard: {msg}"),
            Error::Calibration(msg) => write!(f, "calibration failed: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
