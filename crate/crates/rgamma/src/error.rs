use complexes::ComplexError;
use gcohom::CohomError;
use sheafdata::ValidationReport;
use thiserror::Error;
use zlinalg::LinalgError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RGammaError {
    #[error("invalid sheaf data:\n{0}")]
    Invalid(ValidationReport),
    #[error("invalid Galois structure:\n{0}")]
    InvalidGalois(ValidationReport),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Cohom(#[from] CohomError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("the action of Galois generator {generator} does not commute with the differential in degree {degree}")]
    ActionNotCommuting { generator: usize, degree: i64 },
    #[error("inertia data do not match: {0}")]
    InertiaMismatch(String),
    #[error("comparison data do not match: {0}")]
    Comparison(String),
}
