use thiserror::Error;

/// Failure classes. The command line maps each class to a distinct exit code.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed input; `pointer` is a JSON pointer into the offending document.
    #[error("parse error at `{pointer}`: {message}")]
    Parse { pointer: String, message: String },

    /// A structure failed one of its axioms.
    #[error("validation failed: axiom `{axiom}`: {detail}")]
    Validation { axiom: String, detail: String },

    /// Input outside the finiteness regime in which bar/cobar words are finite per degree.
    #[error("regime violation ({regime}): {detail}")]
    Regime {
        regime: &'static str,
        detail: String,
    },

    /// Source and target do not match up.
    #[error("composition error: {0}")]
    Composition(String),

    /// Shapes of the data handed to an operation are inconsistent.
    #[error("shape mismatch: {0}")]
    Shape(String),

    /// A verification ran and reported failures.
    #[error("verification failed: {0}")]
    Verification(String),
}

impl Error {
    pub fn validation(axiom: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::Validation {
            axiom: axiom.into(),
            detail: detail.into(),
        }
    }

    pub fn shape(detail: impl Into<String>) -> Self {
        Error::Shape(detail.into())
    }

    /// Process exit code for this failure class.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } => 1,
            Error::Validation { .. } | Error::Shape(_) | Error::Composition(_) => 2,
            Error::Regime { .. } => 3,
            Error::Verification(_) => 4,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) const BAR_REGIME: &str = "bar: augmentation ideal in degrees >= 0";
pub(crate) const COBAR_REGIME: &str = "cobar: coaugmentation coideal in degrees >= 2";
