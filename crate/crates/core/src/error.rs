use thiserror::Error;

pub type Result<T, E = CoinError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum CoinError {
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("unknown node {0}")]
    UnknownNode(String),

    #[error("edge ({0}, {1}) is not in the graph")]
    UnknownEdge(String, String),

    #[error("context has {objects} objects, above the enumeration limit of {limit}; use the maximal-clique fast path")]
    ContextTooLarge { objects: usize, limit: usize },

    #[error("context is not one-mode ({objects} objects, {attributes} attributes)")]
    NotOneMode { objects: usize, attributes: usize },

    #[error(
        "extent of size {size} exceeds the exact threshold {threshold}; use the sampled estimator"
    )]
    ExtentTooLarge { size: usize, threshold: usize },

    #[error("sampling budget must be at least {min}, got {budget}")]
    Budget { budget: usize, min: usize },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("percolation stopped after {passes} passes without reaching a fixpoint")]
    PercolationLimit { passes: usize },

    #[error("invalid partition: {0}")]
    Partition(String),

    #[error("partitions are over different universes: {0}")]
    UniverseMismatch(String),

    #[error("NMI is undefined: {0}")]
    DegenerateNmi(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
