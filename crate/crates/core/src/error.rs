use std::fmt;

/// Which half of a composite map failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    J1,
    J2,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stage::J1 => f.write_str("J1-stage"),
            Stage::J2 => f.write_str("J2-stage"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("ring descriptor mismatch: {left} vs {right}")]
    DescriptorMismatch { left: String, right: String },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("{}not invertible: {what}", stage.map(|s| format!("{s}: ")).unwrap_or_default())]
    NotInvertible { what: String, stage: Option<Stage> },

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("outside the domain: {0} is not invertible")]
    DomainViolation(String),

    #[error("verification failed: {0}")]
    VerificationFailed(String),

    #[error("sampling exhausted after {0} consecutive rejections")]
    SamplingExhausted(u64),

    #[error("invalid ring descriptor: {0}")]
    InvalidDescriptor(String),

    #[error("malformed input: {0}")]
    Malformed(String),
}

impl Error {
    pub fn not_invertible(what: impl Into<String>) -> Self {
        Error::NotInvertible {
            what: what.into(),
            stage: None,
        }
    }

    /// Tags a `NotInvertible` with the stage it came from; other variants pass through.
    pub fn at_stage(self, stage: Stage) -> Self {
        match self {
            Error::NotInvertible { what, .. } => Error::NotInvertible {
                what,
                stage: Some(stage),
            },
            other => other,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
