use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("graph is not connected")]
    Disconnected,

    #[error("vertex set must be nonempty")]
    EmptySet,

    #[error("vertex {vertex} out of range for a network on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("vertex sets must be disjoint")]
    Overlap,

    #[error("exact backend limited to {cap} vertices, network has {n}")]
    BackendCapExceeded { n: usize, cap: usize },

    #[error("gave up after {rounds} rejection rounds")]
    RejectionLimit { rounds: usize },

    #[error("interlacement window ends at {window_end} before every vertex is covered")]
    CoverageExhausted { window_end: f64 },

    #[error("forest is not a single tree ({roots} roots)")]
    NotATree { roots: usize },

    #[error("invalid forest: {0}")]
    InvalidForest(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}
