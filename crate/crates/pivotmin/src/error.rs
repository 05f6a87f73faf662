use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {0} out of range for graph on {1} vertices")]
    VertexOutOfRange(usize, usize),
    #[error("vertex sequence contains a repeated vertex")]
    RepeatedVertex,
    #[error("empty vertex set not allowed here")]
    EmptySet,
    #[error("graph too large for this operation: {0} vertices, cap {1}")]
    SizeCapExceeded(usize, usize),
    #[error("malformed graph6 input: {0}")]
    Graph6(String),
    #[error("malformed edge-list input: {0}")]
    EdgeList(String),
    #[error("pivot on non-edge {0}-{1}")]
    PivotNonEdge(usize, usize),
    #[error("witness step {step}: {reason}")]
    WitnessStep { step: usize, reason: String },
    #[error("witness source fingerprint does not match the supplied graph")]
    FingerprintMismatch,
    #[error("pivot orbit exceeded the cap of {0} members")]
    OrbitCapExceeded(usize),
    #[error("{0}")]
    InvalidInput(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal invariant broken: {0}")]
    Internal(String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}
