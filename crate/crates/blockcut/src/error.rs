//! Error types shared across the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors produced by graph construction, model evaluation, and detection.
#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("self-loop at vertex {vertex}")]
    SelfLoop { vertex: usize },

    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("edge multiplicity overflow on edge ({u}, {v})")]
    MultiplicityOverflow { u: usize, v: usize },

    #[error("partition has {got} labels but graph has {expected} vertices")]
    PartitionLengthMismatch { got: usize, expected: usize },

    #[error("vector has length {got} but graph has {expected} vertices")]
    LengthMismatch { got: usize, expected: usize },

    #[error("graph has {n} vertices but at least {min} are required")]
    TooFewVertices { n: usize, min: usize },

    #[error("graph has {n} vertices, exceeding the exhaustive-search limit of {max}")]
    TooManyVertices { n: usize, max: usize },

    #[error("vertex {vertex} has degree zero; the degree-corrected spectral step requires every vertex to have at least one edge")]
    ZeroDegree { vertex: usize },

    #[error("invalid model parameters: {msg}")]
    InvalidParameters { msg: String },

    #[error("invalid configuration: {msg}")]
    InvalidConfig { msg: String },

    #[error("inconsistent split statistics: {msg}")]
    InconsistentStats { msg: String },

    #[error("order is not a permutation of 0..{n}: {msg}")]
    InvalidOrder { n: usize, msg: String },

    #[error("requested group size {n1} exceeds vertex count {n}")]
    InvalidGroupSize { n1: usize, n: usize },

    #[error(
        "eigensolver did not reach residual {tol:e} within {max_iter} iterations \
         (best residual {residual:e})"
    )]
    NonConvergence {
        tol: f64,
        max_iter: usize,
        residual: f64,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
