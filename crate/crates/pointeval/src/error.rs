use fingroup::GroupError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PointEvalError {
    #[error("field: {0}")]
    Field(String),
    #[error("cannot parse {text:?} at offset {offset}: {reason}")]
    Parse { text: String, offset: usize, reason: String },
    #[error("unknown name {0:?}")]
    UnknownName(String),
    #[error("division by zero while evaluating {0}")]
    DivisionByZero(String),
    #[error("model: {0}")]
    Model(String),
    #[error("point {point} does not satisfy {equation}")]
    NotOnModel { point: String, equation: String },
    #[error("point {0} is listed twice")]
    DuplicatePoint(String),
    #[error("{automorphism} does not map the point set to itself: {reason}")]
    NotClosedOnPointSet { automorphism: String, reason: String },
    #[error("group order exceeds the bound {0}")]
    OrderBoundExceeded(usize),
    #[error("point {0} is not in the point set")]
    PointNotInSet(String),
    #[error(transparent)]
    Group(GroupError),
}

impl From<GroupError> for PointEvalError {
    fn from(e: GroupError) -> Self {
        match e {
            GroupError::OrderBoundExceeded(b) => PointEvalError::OrderBoundExceeded(b),
            other => PointEvalError::Group(other),
        }
    }
}
