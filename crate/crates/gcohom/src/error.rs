use fingroup::GroupError;
use thiserror::Error;
use zlinalg::LinalgError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CohomError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("not a group action: {0}")]
    NotAction(String),
    #[error("not a crossed homomorphism: {0}")]
    NotCocycle(String),
    #[error("the wild subgroup has order {order}, which is not invertible modulo {n}")]
    WildOrderNotInvertible { order: usize, n: u64 },
    #[error("the wild subgroup is not normal in the inertia group")]
    NotNormal,
    #[error("the tame quotient is not cyclic")]
    NotCyclic,
    #[error("the norm element of the tame quotient does not annihilate the module")]
    NormNotZero,
    #[error("mismatched inputs: {0}")]
    Mismatch(String),
}
