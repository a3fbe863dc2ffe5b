use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("singular cubic: discriminant {discriminant} vanishes")]
    Singular { discriminant: String },
    #[error("point {0} is not on the curve")]
    OffCurve(String),
    #[error("not representable: {0}")]
    NotRepresentable(String),
    #[error("size bound exceeded: {size} > {bound}")]
    SizeBound { size: usize, bound: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
