use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot parse {what} from `{token}`: {reason}")]
    Parse {
        what: &'static str,
        token: String,
        reason: String,
    },

    #[error("not a permutation: {0}")]
    InvalidPermutation(String),

    #[error("not a Ferrers shape: {0}")]
    InvalidShape(String),

    #[error("{perm} is not a transversal of shape {shape}")]
    NotTransversal { perm: String, shape: String },

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{what} = {value} exceeds the configured maximum {max}")]
    Budget {
        what: &'static str,
        value: usize,
        max: usize,
    },

    #[error("iteration cap {cap} exceeded while eliminating copies of a size-{t} pattern")]
    IterationCap { t: usize, cap: usize },

    #[error("contract violation: {0}")]
    ContractViolation(String),

    #[error("unknown check `{name}`; available: {}", available.join(", "))]
    UnknownCheck {
        name: String,
        available: Vec<&'static str>,
    },

    #[error("cache mismatch for {key}: stored {stored}, recomputed {fresh}")]
    CacheMismatch {
        key: String,
        stored: String,
        fresh: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn parse(what: &'static str, token: &str, reason: impl Into<String>) -> Self {
        Error::Parse {
            what,
            token: token.to_owned(),
            reason: reason.into(),
        }
    }

    /// True for errors raised by a resource guard rather than bad input.
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::Budget { .. })
    }
}
