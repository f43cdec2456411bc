use thiserror::Error;
use zlinalg::LinalgError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("d o d is not zero at degree {0}")]
    NotComplex(i64),
    #[error("the morphism does not commute with the differentials at degree {0}")]
    NotChainMap(i64),
    #[error("the vertical maps do not commute with the rows at degree {0}")]
    SquareNotCommuting(i64),
}
