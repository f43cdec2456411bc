use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("group order exceeds the bound {0}")]
    OrderBoundExceeded(usize),
    #[error("inputs are not permutations of one finite set: {0}")]
    NotPermutation(String),
    #[error("table is not a group law: {0}")]
    NotAGroup(String),
    #[error("generators do not generate the group ({reached} of {order} elements reached)")]
    NotGenerating { reached: usize, order: usize },
    #[error("element id {0} out of range")]
    BadElement(usize),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("map is not a homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("cannot parse word {word:?}: {reason}")]
    BadWord { word: String, reason: String },
}
