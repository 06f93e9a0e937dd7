use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("degenerate parameters: {0}")]
    Degenerate(String),
    #[error("unsupported regime: {0}")]
    UnsupportedRegime(String),
    #[error("invalid power allocation: {0}")]
    InvalidAllocation(String),
    #[error("infeasible parameters: {0}")]
    InfeasibleParameters(String),
    #[error("{0}")]
    NotWellDefined(String),
    /// The block cannot be scheduled on its own and has to be interleaved
    /// with a second block (see [`crate::det::run_block_pair`]).
    #[error("block needs pairing: {0}")]
    RequiresBlockPairing(String),
    #[error("internal scheme error: {0}")]
    SchemeBug(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
