//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("empty input: no data values found")]
    EmptyInput,

    #[error("line {line}, column {column}: cannot parse {token:?} as a decimal number")]
    ParseToken {
        line: usize,
        column: usize,
        token: String,
    },

    #[error("cannot parse {text:?} as a rational number")]
    ParseRational { text: String },

    #[error("degenerate data: all values are equal, so no bounded parameter domain exists")]
    DegenerateData,

    #[error("operation needs at least {needed} values, dataset has {got}")]
    TooFewValues { needed: usize, got: usize },

    #[error("sample variance is zero; width and skewness constraints are undefined")]
    ZeroVariance,

    #[error("invalid bin grid: {reason}")]
    InvalidGrid { reason: String },

    #[error("shape has a single occupied bin; grouped skewness is undefined")]
    SingleOccupiedBin,

    #[error("shape counts are empty after trimming trailing zeros")]
    EmptyShape,

    #[error("first bin count is zero; a shape must start with an occupied bin")]
    LeadingZeroBin,

    #[error("catalog is empty; nothing to render")]
    EmptyCatalog,

    #[error("invalid configuration: {reason}")]
    InvalidConfig { reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid_grid(reason: impl Into<String>) -> Self {
        Error::InvalidGrid {
            reason: reason.into(),
        }
    }

    pub fn invalid_config(reason: impl Into<String>) -> Self {
        Error::InvalidConfig {
            reason: reason.into(),
        }
    }
}
