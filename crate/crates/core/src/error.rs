use thiserror::Error;

use crate::topology::NodeId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors raised by the model and simulation layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("network has no nodes")]
    EmptyNetwork,
    #[error("{0}")]
    Domain(String),
    #[error("unknown node {0}")]
    InvalidNode(NodeId),
    #[error("no route from {src} to {dst}")]
    NoRoute { src: NodeId, dst: NodeId },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("scenario n={n} seed={seed}: {source}")]
    Scenario {
        n: usize,
        seed: u64,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

/// Rejects negative or non-finite values.
pub(crate) fn ensure_non_negative(name: &str, value: f64) -> Result<()> {
    if value.is_finite() && value >= 0.0 {
        Ok(())
    } else {
        Err(Error::domain(format!("{name} must be finite and >= 0, got {value}")))
    }
}

pub(crate) fn ensure_positive(name: &str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::domain(format!("{name} must be finite and > 0, got {value}")))
    }
}
