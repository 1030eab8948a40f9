use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("axis {axis} out of range for dimension {dim}")]
    AxisOutOfRange { axis: usize, dim: usize },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("empty subset where a nonempty one is required")]
    EmptySubset,
    #[error("input is not homogeneous")]
    NotHomogeneous,
    #[error("input is not a polynomial (negative exponent present)")]
    NotPolynomial,
    #[error("singular linear system: {0}")]
    Singular(String),
    #[error("Pochhammer zero in a denominator: {0}")]
    PochhammerPole(String),
    #[error("Gamma pole at non-positive integer {0}")]
    GammaPole(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;
