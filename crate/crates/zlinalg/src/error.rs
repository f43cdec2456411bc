use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("modulus must be at least 2, got {0}")]
    BadModulus(u64),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("image generators are not contained in the kernel span")]
    ContainmentViolation,
    #[error("vector is not in the span of the kernel generators")]
    NotInSpan,
    #[error("map is not well defined on the presentation: {0}")]
    NotWellDefined(String),
}
