use alloc::string::String;
use core::fmt;

/// Failure classes surfaced to callers and the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ErrorKind {
    /// Malformed input data (ragged matrices, bad ring tables, ...).
    Input,
    /// An operation was called outside its documented domain.
    Precondition,
    /// A theorem's hypothesis does not hold for this instance.
    Hypothesis,
    /// A proven identity failed. Always an implementation bug.
    TheoremViolation,
    /// A degree beyond what the truncated construction determines.
    Truncation,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    DimensionMismatch(&'static str),
    NotArtinian(String),
    Validation(String),
    Precondition(String),
    Hypothesis(String),
    TheoremViolation(String),
    Truncation { degree: i64, top: i64 },
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::DimensionMismatch(_) | Error::NotArtinian(_) | Error::Validation(_) => ErrorKind::Input,
            Error::Precondition(_) => ErrorKind::Precondition,
            Error::Hypothesis(_) => ErrorKind::Hypothesis,
            Error::TheoremViolation(_) => ErrorKind::TheoremViolation,
            Error::Truncation { .. } => ErrorKind::Truncation,
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch(what) => write!(f, "dimension mismatch: {}", what),
            Error::NotArtinian(msg) => write!(f, "not Artinian: {}", msg),
            Error::Validation(msg) => write!(f, "validation failed: {}", msg),
            Error::Precondition(msg) => write!(f, "precondition failed: {}", msg),
            Error::Hypothesis(msg) => write!(f, "hypothesis fails: {}", msg),
            Error::TheoremViolation(msg) => write!(f, "theorem violation: {}", msg),
            Error::Truncation { degree, top } => {
                write!(f, "degree {} is at or beyond the truncation edge (top degree {})", degree, top)
            }
        }
    }
}

pub type Result<T, E = Error> = core::result::Result<T, E>;

macro_rules! ensure {
    ($cond:expr, DimensionMismatch, $msg:literal) => {
        if !$cond {
            return Err($crate::error::Error::DimensionMismatch($msg));
        }
    };
    ($cond:expr, $variant:ident, $($arg:tt)*) => {
        if !$cond {
            return Err($crate::error::Error::$variant(alloc::format!($($arg)*)));
        }
    };
}
pub(crate) use ensure;

impl core::error::Error for Error {}
