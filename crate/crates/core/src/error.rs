use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("point has no coordinates")]
    EmptyPoint,
    #[error("non-finite coordinate")]
    NonFinite,
    #[error("degenerate curve")]
    DegenerateCurve,
    #[error("cube radius must be positive and finite, got {0}")]
    NonPositiveRadius(f64),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PackError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("operation requires a 2D curve, got dimension {0}")]
    NotPlanar(usize),
    #[error("epsilon must lie in (0, 1], got {0}")]
    InvalidEpsilon(f64),
    #[error("separation ratio must be positive, got {0}")]
    InvalidSeparation(f64),
    #[error("empty point set")]
    EmptyPointSet,
    #[error("resolution must be at least 2, got {0}")]
    InvalidResolution(usize),
    #[error("sample count must be at least 3, got {0}")]
    InvalidSampleCount(usize),
    #[error("square is not in the candidate set")]
    UnknownSquare,
    #[error("deadline exceeded")]
    DeadlineExceeded,
}
