use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("self-loop at vertex `{0}`")]
    SelfLoop(String),

    #[error("directed part has a cycle: {}", .cycle.join(" -> "))]
    Cyclic { cycle: Vec<String> },

    #[error("{what} is not contained in {container}")]
    NotSubset {
        what: &'static str,
        container: &'static str,
    },

    #[error("matrix is {rows}x{cols}, expected square")]
    NonSquare { rows: usize, cols: usize },

    #[error("size mismatch: {0}")]
    SizeMismatch(String),

    #[error("no value for variable `{0}`")]
    MissingVariable(String),

    #[error("covariance has no entry for `{0}`")]
    MissingEntry(String),

    #[error("modulus mismatch: assignment uses {found}, expected {expected}")]
    ModulusMismatch { expected: u64, found: u64 },

    #[error("graph too large for {what}: {size} > {limit}")]
    TooLarge {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("hypothesis violated at vertex `{vertex}`: {reason}")]
    Hypothesis { vertex: String, reason: String },

    #[error("matrix is singular")]
    Singular,

    #[error("matrix is not positive definite")]
    NotPositiveDefinite,

    #[error("kernel of the parental system has no vector with nonzero last coordinate")]
    NoKernelVector,

    #[error("sampling failed: {0}")]
    Sampling(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),

    #[error("polynomial syntax: {0}")]
    PolySyntax(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
