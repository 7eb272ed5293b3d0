use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A size or enumeration limit was hit. `reached` is the partial size at
    /// the moment the limit was crossed, when one is meaningful.
    #[error("{what}: cap {cap} exceeded (reached {reached})")]
    CapExceeded {
        what: String,
        cap: u64,
        reached: u64,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unsupported hypothesis: {0}")]
    Unsupported(String),

    #[error("construction failed: {0}")]
    Construction(String),

    /// An internal consistency check failed. Never expected on valid input.
    #[error("internal inconsistency: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn cap(what: impl Into<String>, cap: u64, reached: u64) -> Self {
        Error::CapExceeded {
            what: what.into(),
            cap,
            reached,
        }
    }

    pub fn is_cap(&self) -> bool {
        matches!(self, Error::CapExceeded { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
