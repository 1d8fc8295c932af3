use thiserror::Error;

/// Errors raised by the numerical and combinatorial routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum HornError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("domain error in `{field}`: {message}")]
    Domain { field: String, message: String },

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("matrix has rank {rank}, expected {expected}")]
    Rank { rank: usize, expected: usize },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("integer overflow while computing {0}")]
    Overflow(String),
}

impl HornError {
    pub fn domain(field: impl Into<String>, message: impl Into<String>) -> Self {
        HornError::Domain {
            field: field.into(),
            message: message.into(),
        }
    }

    /// Short machine-readable tag for the error kind.
    pub fn kind(&self) -> &'static str {
        match self {
            HornError::Dimension { .. } => "dimension",
            HornError::Domain { .. } => "domain",
            HornError::Invariant(_) => "invariant",
            HornError::Rank { .. } => "rank",
            HornError::Precondition(_) => "precondition",
            HornError::Overflow(_) => "overflow",
        }
    }

    /// The offending input field, when the error names one.
    pub fn field(&self) -> Option<&str> {
        match self {
            HornError::Domain { field, .. } => Some(field),
            _ => None,
        }
    }
}

pub type Result<T, E = HornError> = std::result::Result<T, E>;

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(HornError::Dimension { expected, found })
    }
}
