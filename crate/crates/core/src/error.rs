use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Malformed or out-of-range input supplied by the caller.
    #[error("input error: {0}")]
    Input(String),
    /// The request is well formed but violates an operation's precondition
    /// (for example a labelling that is not Roman dominating).
    #[error("contract error: {0}")]
    Contract(String),
    /// A size guard refused the request.
    #[error("resource error: {0}")]
    Resource(String),
    /// A search exceeded its time allowance.
    #[error("timeout after {0:.3}s")]
    Timeout(f64),
    /// An internal invariant failed. Always a bug.
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Input(_) | Error::Contract(_) => 2,
            Error::Resource(_) | Error::Timeout(_) => 3,
            Error::Internal(_) => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

macro_rules! input_err {
    ($($arg:tt)*) => { $crate::error::Error::Input(format!($($arg)*)) };
}
macro_rules! contract_err {
    ($($arg:tt)*) => { $crate::error::Error::Contract(format!($($arg)*)) };
}
macro_rules! internal_err {
    ($($arg:tt)*) => { $crate::error::Error::Internal(format!($($arg)*)) };
}
pub(crate) use {contract_err, input_err, internal_err};
