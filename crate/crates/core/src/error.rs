use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("factor {index} of the shape has size {size}; every factor must be at least 2")]
    InvalidFactor { index: usize, size: usize },
    #[error("vertex {vertex} has {got} coordinates, shape {shape} expects {expected}")]
    ShapeMismatch {
        vertex: String,
        shape: String,
        got: usize,
        expected: usize,
    },
    #[error("vertex {vertex}: coordinate {coord} is {value}, outside [0, {factor})")]
    CoordinateOutOfRange {
        vertex: String,
        coord: usize,
        value: usize,
        factor: usize,
    },
    #[error("coordinate index {coord} out of range 1..={dim}")]
    CoordIndexOutOfRange { coord: usize, dim: usize },
    #[error("vertex count {count} exceeds the budget of {budget}")]
    BudgetExceeded { count: u128, budget: usize },
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("{a}-{b} is not an edge")]
    NotAnEdge { a: String, b: String },
    #[error("self-loop at {0}")]
    SelfLoop(String),
    #[error("duplicate edge {a}-{b}")]
    DuplicateEdge { a: String, b: String },
    #[error("duplicate vertex id {0}")]
    DuplicateVertex(String),
    #[error("{a} and {b} lie in different components")]
    Disconnected { a: String, b: String },
    #[error("graph is not connected")]
    NotConnected,
    #[error("generator set is empty")]
    EmptyGenerators,
    #[error("expected exactly one generator, found {0}")]
    NotSingleGenerator(usize),
    #[error("graph is empty")]
    EmptyGraph,
    #[error("cover family is invalid: {0}")]
    InvalidCover(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("theorem violation: {0}")]
    TheoremViolation(String),
    #[error("parse error: {0}")]
    Parse(String),
}
