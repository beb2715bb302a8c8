use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    Dimension {
        context: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("empty input: {0}")]
    EmptyInput(&'static str),
    #[error("matrix is not square: {rows}x{cols}")]
    Shape { rows: usize, cols: usize },
    #[error("singular system: pivot magnitude {magnitude:e}")]
    SingularSystem { magnitude: f64 },
    #[error("direction matrix is rank deficient: gram determinant {gram_det:e} <= threshold {threshold:e}")]
    RankDeficient { gram_det: f64, threshold: f64 },
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
}
