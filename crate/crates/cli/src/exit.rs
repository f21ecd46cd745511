use std::fmt;

use mvlsm_core::Error;

pub const OK: i32 = 0;
pub const INTERNAL: i32 = 1;
pub const NOT_CONVERGED: i32 = 2;
pub const CONFIG: i32 = 3;
pub const USAGE: i32 = 64;
pub const NO_INPUT: i32 = 66;
pub const CANT_CREATE: i32 = 73;

/// An error with the process exit code it maps to.
#[derive(Debug, Clone, PartialEq)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    pub fn new(code: i32, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }

    pub fn usage(message: impl Into<String>) -> Self {
        Self::new(USAGE, message)
    }

    pub fn config(message: impl Into<String>) -> Self {
        Self::new(CONFIG, message)
    }

    pub fn no_input(message: impl Into<String>) -> Self {
        Self::new(NO_INPUT, message)
    }

    pub fn cant_create(message: impl Into<String>) -> Self {
        Self::new(CANT_CREATE, message)
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for Failure {}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::UnknownProblem { .. } => USAGE,
            Error::Config(_)
            | Error::InvalidWeights(_)
            | Error::InvalidDomain(_)
            | Error::DimensionMismatch { .. } => CONFIG,
            Error::Io { .. } | Error::Parse { .. } => NO_INPUT,
            _ => INTERNAL,
        };
        Failure::new(code, e.to_string())
    }
}
