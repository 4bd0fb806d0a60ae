use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix market line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("graph has no edges after normalization")]
    EmptyGraph,

    #[error("graph is not connected ({components} components)")]
    Disconnected { components: usize },

    #[error("node id {id} out of range for {n} nodes")]
    NodeOutOfRange { id: usize, n: usize },

    #[error(
        "eigensolver did not converge after {sweeps} sweeps \
         (off-diagonal norm {off_norm:.3e}, target {target:.3e})"
    )]
    NoConvergence { sweeps: usize, off_norm: f64, target: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("config: {0}")]
    Config(String),

    #[error("record file: {0}")]
    Records(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
