use thiserror::Error;

use crate::geometry::GeometryError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("level {0} must be positive")]
    NonPositiveLevel(f64),
    #[error("unsupported function kind: {0}")]
    UnsupportedKind(String),
    #[error("truncation level {eps} outside (0, {max}]")]
    EpsilonOutOfRange { eps: f64, max: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("acceptance rate {rate:.2e} too low; check the bounding box")]
    LowAcceptance { rate: f64 },
    #[error("zero height sample with p <= 0")]
    ZeroHeightSample,
    #[error("need at least {needed} points, got {found}")]
    TooFewPoints { needed: usize, found: usize },
    #[error("level {0} must be positive")]
    LevelOutOfRange(f64),
    #[error("quermassintegral index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("polar projection body undefined: degenerate support")]
    DegenerateSupport,
    #[error("need at least two values, got {0}")]
    TooFewValues(usize),
    #[error("rendering needs dimension 2, got {0}")]
    RenderDimension(usize),
    #[error("invalid config: {0}")]
    InvalidConfig(String),
    #[error("i/o: {0}")]
    Io(String),
}

impl Error {
    /// True for errors caused by bad input rather than by a failed run.
    pub fn is_validation(&self) -> bool {
        match self {
            Error::Geometry(g) => matches!(
                g,
                GeometryError::EmptyInput
                    | GeometryError::DimensionOutOfRange(_)
                    | GeometryError::DimensionMismatch { .. }
                    | GeometryError::NonFinite
                    | GeometryError::IndexOutOfRange { .. }
                    | GeometryError::ParameterOutOfRange(_)
                    | GeometryError::Parse { .. }
            ),
            Error::DimensionMismatch { .. }
            | Error::NonPositiveLevel(_)
            | Error::UnsupportedKind(_)
            | Error::EpsilonOutOfRange { .. }
            | Error::InvalidParameter(_)
            | Error::LevelOutOfRange(_)
            | Error::IndexOutOfRange { .. }
            | Error::TooFewValues(_)
            | Error::RenderDimension(_)
            | Error::InvalidConfig(_) => true,
            _ => false,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::InvalidConfig(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
