use thiserror::Error;

use crate::speclang::ParseError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("arithmetic error: {0}")]
    Arithmetic(String),

    #[error("pivot column {col} has no unit entry")]
    NonUnitPivot { col: usize },

    #[error("degree {requested} lies outside the computation window (window = {window})")]
    WindowExceeded { requested: i32, window: i32 },

    #[error("window {window} is too small: at least {required} is needed")]
    WindowTooSmall { window: i32, required: i32 },

    #[error("objects live over different rings")]
    RingMismatch,

    #[error("expected a proper ideal, got the unit ideal")]
    NotProperIdeal,

    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),

    #[error("possibly incomplete: {0}")]
    PossiblyIncomplete(String),

    #[error("map is not injective in degree {degree}")]
    NotInjective { degree: i32 },

    #[error("product ideal is zero")]
    ZeroProduct,

    #[error("size bound exceeded: {0}")]
    BoundExceeded(String),

    #[error("prefix of length {len} is too short: at least {required} terms are needed")]
    InsufficientData { len: usize, required: usize },

    #[error("ring is not Artinian")]
    NotArtinian,

    #[error("{0}")]
    Parse(#[from] ParseError),

    #[error("line {line}, column {column}: {message}")]
    Semantic { line: usize, column: usize, message: String },

    #[error("{0}")]
    Unsupported(String),
}
