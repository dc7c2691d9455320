use thiserror::Error;

/// Typed failures shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("duplicate point {0:?} in configuration")]
    DuplicatePoint(Vec<i64>),
    #[error("degenerate configuration: affine dimension {found} < ambient dimension {ambient}")]
    DegenerateConfig { found: usize, ambient: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("the all-ones vector is not in the right kernel of C")]
    OnesNotInKernel,
    #[error("vanishes identically on coordinate axis {0} (1-based)")]
    VanishesOnAxis(usize),
    #[error("not convenient: no support on coordinate axis {0} (1-based)")]
    NotConvenient(usize),
    #[error("origin is not a root: polynomial {0} has a nonzero constant term")]
    OriginNotRoot(usize),
    #[error("series truncation order {0} is too short")]
    TruncationTooShort(usize),
    #[error("codimension is {0}, expected 1")]
    CodimNotOne(usize),
    #[error("duplicate value {0}")]
    DuplicateValue(String),
    #[error("bounded search failed: {0}")]
    NotFound(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("parse error: {0}")]
    ParseError(String),
    #[error("validation error: {0}")]
    ValidationError(String),
}

pub type Result<T> = std::result::Result<T, Error>;
