//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Tensor extents do not line up for the requested operation.
    #[error("dimension mismatch in {op}: {lhs:?} vs {rhs:?}")]
    Dimension {
        op: &'static str,
        lhs: Vec<usize>,
        rhs: Vec<usize>,
    },

    /// An operation produced a NaN or infinity.
    #[error("non-finite value produced by {op}")]
    NonFinite { op: &'static str },

    /// Invalid model or operator configuration.
    #[error("configuration error: {0}")]
    Config(String),

    /// Caller misuse (e.g. backward from a non-scalar node).
    #[error("usage error: {0}")]
    Usage(String),

    /// Invalid input data (shape divisibility, value range).
    #[error("input error: {0}")]
    Input(String),

    /// Invalid parameter value for a data-generation or training routine.
    #[error("parameter error: {0}")]
    Parameter(String),

    /// Checkpoint file problems, each kind distinct.
    #[error("checkpoint: corrupt header: {0}")]
    CorruptHeader(String),
    #[error("checkpoint: version mismatch: file has {found}, expected {expected}")]
    VersionMismatch { found: u32, expected: u32 },
    #[error("checkpoint: truncated payload: need {need} bytes, file has {have}")]
    TruncatedPayload { need: u64, have: u64 },
    #[error("checkpoint: unknown tensor name: {0}")]
    UnknownTensor(String),
    #[error("checkpoint: missing tensor: {0}")]
    MissingTensor(String),
    #[error("checkpoint: shape mismatch for tensor {name}: file {found:?}, model {expected:?}")]
    TensorShape {
        name: String,
        found: [usize; 4],
        expected: [usize; 4],
    },

    /// NaN gradient encountered during an optimizer step.
    #[error("NaN gradient for parameter {0}")]
    NanGradient(String),

    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("image decode error on {path}: {msg}")]
    ImageDecode { path: String, msg: String },

    /// Internal invariant violation (indicates a bug, not caller error).
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
