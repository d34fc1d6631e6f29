use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("loop edge at vertex {0}")]
    LoopEdge(usize),

    #[error("{what} exceeds cap: {value} > {limit}")]
    CapExceeded {
        what: &'static str,
        value: usize,
        limit: usize,
    },

    #[error("power exponent must be at least 1")]
    ZeroPower,

    #[error("ambient ring mismatch: {0} variables vs {1}")]
    AmbientMismatch(usize, usize),

    #[error("monomial is not in the ideal")]
    NotInIdeal,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("graph is not unicyclic: {0}")]
    NotUnicyclic(String),

    #[error("attached part at cycle vertex {0} is not chordal")]
    PartNotChordal(usize),

    #[error("duplicate attachment vertex {0}")]
    DuplicateAttachment(usize),

    #[error("clique size {0} is below 2")]
    InvalidCliqueSize(usize),

    #[error("internal validation failed: {0}")]
    InternalValidation(String),

    #[error("deadline exceeded")]
    Timeout,

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
