use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ambient dimension mismatch: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("index out of range: {0}")]
    OutOfRange(String),

    #[error("cannot parse rational {input:?}: {reason}")]
    ParseScalar { input: String, reason: String },

    #[error("division by zero")]
    DivisionByZero,

    #[error("degenerate metric: determinant is zero")]
    DegenerateMetric,

    #[error("metric is not symmetric")]
    AsymmetricMetric,

    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),

    #[error("vector does not lie in the required subspace: {0}")]
    NotInSubspace(String),

    #[error("symmetry violated: {0}")]
    Symmetry(String),

    #[error("resource limit exceeded: tensor space of dimension {requested} exceeds limit {limit}")]
    ResourceLimit { requested: u128, limit: u128 },

    #[error("internal invariant broken: {0}")]
    Invariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
