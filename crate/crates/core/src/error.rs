use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{op} needs exact zero tests, but the scalar field is {field}")]
    Inexact { op: &'static str, field: &'static str },

    #[error("dimension {dim} exceeds the cap of {cap}")]
    DimensionCap { dim: usize, cap: usize },

    #[error("space mismatch: {0}")]
    SpaceMismatch(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("expected grade {expected}, got {got}")]
    Grade { expected: String, got: String },

    #[error("zero element where a nonzero one is required: {0}")]
    Zero(String),

    #[error("not a Lagrangian subspace: {0}")]
    NotLagrangian(String),

    #[error("not isotropic: {0}")]
    NotIsotropic(String),

    #[error("not a subspace: {0}")]
    NotContained(String),

    #[error("matrix is singular")]
    Singular,

    #[error("inadmissible datum: moment covector {generator} does not vanish on tangent vector {tangent}")]
    Inadmissible { generator: usize, tangent: usize },

    #[error("invalid reduction datum: {0}")]
    InvalidDatum(String),

    #[error("invalid perturbation input: {0}")]
    InvalidPerturbation(String),

    #[error("invalid generalized complex structure: {0}")]
    InvalidStructure(String),

    #[error("condition J u = dmu fails for generator {0}")]
    MomentCondition(usize),

    #[error("form is not closed: {0}")]
    NotClosed(String),

    #[error("form is not invariant: {0}")]
    NotInvariant(String),

    #[error("polynomial degree {degree} exceeds the cap of {cap}")]
    DegreeCap { degree: usize, cap: usize },

    #[error("internal consistency check failed: {0}")]
    Consistency(String),

    #[error("parse error: {0}")]
    Parse(String),
}
