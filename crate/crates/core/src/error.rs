use thiserror::Error;

use crate::graph::{Edge, Face, VertexId};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("need at least {required} vertices, got {actual}")]
    TooFewVertices { required: usize, actual: usize },

    #[error("vertex {0} is out of range for dimension {1}")]
    VertexOutOfRange(VertexId, usize),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("vertex {0} is already inserted")]
    AlreadyInserted(VertexId),

    #[error("vertex {0} is not inserted")]
    NotInserted(VertexId),

    #[error("{0} is not a face of the triangulation")]
    NotAFace(Face),

    #[error("vertex {vertex} belongs to face {face}")]
    VertexInFace { vertex: VertexId, face: Face },

    #[error(
        "vertex not inside a {}: {vertex} has degree {degree}, expected {expected}",
        degree_context(.expected)
    )]
    WrongDegree {
        vertex: VertexId,
        degree: usize,
        expected: usize,
    },

    #[error("vertex {vertex} has degree {degree} and is not removable by local moves")]
    NotRemovable { vertex: VertexId, degree: usize },

    #[error("removing {0} would leave fewer than 4 vertices")]
    BelowMinimumSize(VertexId),

    #[error("move precondition violated on {edge}: {reason}")]
    MovePrecondition { edge: Edge, reason: &'static str },

    #[error("invalid relabeling: {0}")]
    InvalidRelabeling(String),

    #[error("invalid weight at ({i}, {j}): {value}")]
    InvalidWeight { i: usize, j: usize, value: f64 },

    #[error("matrix is not symmetric at ({i}, {j}): {a} vs {b}")]
    Asymmetric { i: usize, j: usize, a: f64, b: f64 },

    #[error("column {0} has zero variance")]
    ZeroVariance(usize),

    #[error("need at least 2 observations, got {0}")]
    TooFewObservations(usize),

    #[error("submatrix over {0:?} is not positive definite")]
    NotPositiveDefinite(Vec<usize>),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unsupported configuration: {0}")]
    Unsupported(String),

    #[error("size {actual} exceeds the guard of {limit} for this operation")]
    SizeGuard { actual: usize, limit: usize },

    #[error("graph is disconnected")]
    Disconnected,

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("i/o error: {0}")]
    Io(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

fn degree_context(expected: &usize) -> &'static str {
    if *expected == 4 {
        "four-cycle"
    } else {
        "three-clique"
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
