use std::path::PathBuf;

/// Errors produced by the spectral computations and the verification harness.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("domain error in {function}: {detail}")]
    Domain {
        function: &'static str,
        detail: String,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{function} did not converge after {iterations} iterations (x = {x})")]
    NoConvergence {
        function: &'static str,
        iterations: usize,
        x: f64,
    },

    #[error("no sign change found for {what} below search ceiling {ceiling}")]
    BracketNotFound { what: String, ceiling: f64 },

    #[error("bound inapplicable for d = {d}, l = {l}: {reason}")]
    BoundInapplicable { d: u32, l: u32, reason: String },

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("spectrum incomplete: {0}")]
    Incomplete(String),

    #[error("counting identity violated at lambda = {lambda}: identity gives {identity}, lattice difference gives {difference}")]
    IdentityViolation {
        lambda: f64,
        identity: u64,
        difference: u64,
    },

    #[error("claim failed: {0}")]
    ClaimFailed(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("i/o error: {0}")]
    Stream(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(function: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            function,
            detail: detail.into(),
        }
    }

    pub(crate) fn invalid(detail: impl Into<String>) -> Self {
        Error::InvalidParameter(detail.into())
    }
}
