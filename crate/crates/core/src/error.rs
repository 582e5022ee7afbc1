use thiserror::Error;

/// Errors produced across the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("argument must be positive: {0}")]
    NonPositiveArgument(String),
    #[error("value out of range: {0}")]
    OutOfRange(String),
    #[error("cap exceeded: {what} (cap {cap})")]
    CapExceeded { what: String, cap: u64 },
    #[error("undecidable at precision {precision} bits: {what}")]
    UndecidableAtPrecision { what: String, precision: u32 },
    #[error("every polynomial in the input set is zero")]
    AllZero,
    #[error("scaled atom positions cannot be ordered: {0}")]
    ScaleNotRational(String),
    #[error("precondition unmet: {0}")]
    PreconditionUnmet(String),
    #[error("no root within the asserted bound: {0}")]
    NoRootInRange(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("cache file is malformed: {0}")]
    MalformedCache(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn undecidable(what: impl Into<String>, precision: u32) -> Self {
        Error::UndecidableAtPrecision {
            what: what.into(),
            precision,
        }
    }

    pub(crate) fn cap(what: impl Into<String>, cap: u64) -> Self {
        Error::CapExceeded {
            what: what.into(),
            cap,
        }
    }

    /// True for errors that a retry at higher precision may resolve.
    pub fn is_precision_limited(&self) -> bool {
        matches!(
            self,
            Error::UndecidableAtPrecision { .. } | Error::ScaleNotRational(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
