use thiserror::Error;

use crate::graph::LabelId;
use crate::io::ParseError;

#[derive(Debug, Error)]
pub enum Error {
    #[error("graph must have at least one vertex")]
    Empty,
    #[error("matrix is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("matrix is not symmetric at ({u}, {v})")]
    NotSymmetric { u: usize, v: usize },
    #[error("orders differ: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("label {0} occurs both on and off the diagonal")]
    NotRecognizingVertices(LabelId),
    #[error("graph is not converse equivalent")]
    NotConverseEquivalent,
    #[error("graph is not simple")]
    NotSimple,
    #[error("graph is not a 0/1 matrix")]
    NotZeroOne,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("order {n} is too small, need at least {min}")]
    OrderTooSmall { n: usize, min: usize },
    #[error("order {n} exceeds the limit of {limit}")]
    OrderTooLarge { n: usize, limit: usize },
    #[error("power {0} is outside the supported range 2..=4")]
    UnsupportedPower(usize),
    #[error("walk polynomials exceed the budget of {0} terms")]
    BudgetExceeded(usize),
    #[error("modulus {0} is not a prime of at least 2^61")]
    BadPrime(u64),
    #[error("at least two trials are required, got {0}")]
    TooFewTrials(usize),
    #[error("tolerance must be positive and finite")]
    BadTolerance,
    #[error("eigendecomposition did not converge")]
    Eigen,
    #[error("integer overflow while squaring")]
    Overflow,
    #[error("not a partition of {n} vertices: {reason}")]
    NotAPartition { n: usize, reason: String },
    #[error("not a permutation: {0}")]
    NotAPermutation(String),
    #[error("label {0} is reserved")]
    ReservedLabel(LabelId),
    #[error("expected {expected} binding-vertex labels, got {got}")]
    LabelCount { expected: usize, got: usize },
    #[error("not a binding graph: {0}")]
    NotBindingGraph(String),
    #[error("format cannot represent this graph: {0}")]
    Unrepresentable(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
