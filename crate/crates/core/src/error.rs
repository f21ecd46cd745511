use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unknown problem `{name}`; available: {}", available.join(", "))]
    UnknownProblem {
        name: String,
        available: Vec<String>,
    },

    #[error("coordinate {index} = {value} lies outside [{lower}, {upper}]")]
    DomainViolation {
        index: usize,
        value: f64,
        lower: f64,
        upper: f64,
    },

    #[error("length mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid domain: {0}")]
    InvalidDomain(String),

    #[error("invalid weights: {0}")]
    InvalidWeights(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("level set is empty; the discrete minimum is {min}")]
    EmptyLevelSet { min: f64 },

    #[error("non-finite value: {0}")]
    NonFinite(String),

    #[error("solver trace is not converged (status: {0})")]
    NotConverged(String),

    #[error("empty input: {0}")]
    EmptyInput(String),

    #[error("hypervolume supports 2 or 3 objectives, got {0}")]
    UnsupportedDimension(usize),

    #[error("purity is undefined for an empty front")]
    UndefinedPurity,

    #[error("i/o error on {path}: {message}")]
    Io { path: String, message: String },

    #[error("malformed data in {path}: {message}")]
    Parse { path: String, message: String },
}

impl Error {
    pub(crate) fn io(path: impl AsRef<std::path::Path>, err: impl std::fmt::Display) -> Self {
        Error::Io {
            path: path.as_ref().display().to_string(),
            message: err.to_string(),
        }
    }

    pub(crate) fn parse(path: impl AsRef<std::path::Path>, err: impl std::fmt::Display) -> Self {
        Error::Parse {
            path: path.as_ref().display().to_string(),
            message: err.to_string(),
        }
    }
}

pub(crate) fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
