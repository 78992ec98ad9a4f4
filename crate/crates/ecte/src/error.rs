//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown node `{0}`")]
    UnknownNode(String),

    #[error("invalid weight: {0}")]
    BadWeight(String),

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("malformed route: {0}")]
    MalformedRoute(String),

    #[error("invalid child order: {0}")]
    BadChildOrder(String),

    #[error("first-route budget {got} outside [0, {budget}]")]
    BadFirstBudget { got: String, budget: String },

    #[error("leaf count {leaves} exceeds cap {cap}")]
    CapExceeded { leaves: usize, cap: usize },

    #[error("heavy-path extraction not applicable: {0}")]
    NotApplicable(String),

    #[error("light-edge potentials tie: {0}")]
    PotentialTies(String),

    #[error("invalid epsilon: {0}")]
    BadEpsilon(String),

    #[error("no deficiency: {0}")]
    NoDeficiency(String),

    #[error("generator: {0}")]
    Generator(String),

    #[error("reveal gate violation: {0}")]
    RevealViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
