use thiserror::Error;

use crate::autodiff::AutodiffError;
use crate::data::DataError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Autodiff(#[from] AutodiffError),
    #[error(transparent)]
    Data(#[from] DataError),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("empty batch")]
    EmptyBatch,
    #[error("training diverged at epoch {epoch}, step {step}: {reason}")]
    Diverged { epoch: usize, step: usize, reason: String },
    #[error("ensemble member {member} (seed {seed}) failed: {source}")]
    Member {
        member: usize,
        seed: u64,
        #[source]
        source: Box<Error>,
    },
    #[error("model has non-finite parameters or outputs")]
    NonFiniteModel,
    #[error("snapshot: {0}")]
    Snapshot(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    pub(crate) fn io(path: impl AsRef<std::path::Path>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.as_ref().display().to_string(),
            source,
        }
    }
}
