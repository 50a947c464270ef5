use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid evaluation points: {0}")]
    InvalidPoints(String),

    #[error("evaluation of a negative power at zero")]
    NegativePowerAtZero,

    #[error("invalid algebra {kind} with matrix size {size}")]
    InvalidAlgebra { kind: String, size: usize },

    #[error("invalid index: {0}")]
    InvalidIndex(String),

    #[error("invalid weight: {0}")]
    InvalidWeight(String),

    #[error("weight {weight} is unrealizable within tensor power {max_power}")]
    Unrealizable { weight: String, max_power: usize },

    #[error("operator leaves its domain: {0}")]
    DomainMismatch(String),

    #[error("term budget exceeded: {terms} terms requested, budget {budget}")]
    BudgetExceeded { terms: u128, budget: u128 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invariant violated: {0}")]
    Invariant(String),
}
