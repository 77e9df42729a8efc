use crate::smooth::ModelKind;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("non-finite value at index {index}")]
    NonFinite { index: usize },

    #[error("degenerate temporal window at t = {t} (bandwidth {b})")]
    DegenerateWindow { t: f64, b: f64 },

    #[error("estimated density is not positive{}", match .index { Some(i) => format!(" at observation {i}"), None => String::new() })]
    DegenerateDensity { index: Option<usize> },

    #[error("weighted Gram matrix is singular{}", match .t { Some(t) => format!(" at t = {t}"), None => String::new() })]
    SingularGram { t: Option<f64> },

    #[error("predictor {coordinate} has zero interquartile range")]
    ZeroIqr { coordinate: usize },

    #[error("cross-validation fold too small: {0}")]
    FoldTooSmall(String),

    #[error("noise sum of squares is zero")]
    ZeroNoise,

    #[error("autoregressive recursion diverged at step {step} (|y| = {value:e})")]
    Divergent { step: usize, value: f64 },

    #[error("too many failed replications in cell {cell}: {failures} of {replications}")]
    CellFailed {
        cell: String,
        failures: usize,
        replications: usize,
    },

    #[error("model {kind}: {source}")]
    Model {
        kind: ModelKind,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    /// Wraps the error with the candidate model that produced it.
    pub fn in_model(self, kind: ModelKind) -> Self {
        match self {
            e @ Error::Model { .. } => e,
            other => Error::Model {
                kind,
                source: Box::new(other),
            },
        }
    }

    /// Strips model annotations.
    pub fn root(&self) -> &Error {
        match self {
            Error::Model { source, .. } => source.root(),
            other => other,
        }
    }

    /// True for failures caused by the numbers rather than by the caller.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self.root(),
            Error::DegenerateWindow { .. }
                | Error::DegenerateDensity { .. }
                | Error::SingularGram { .. }
                | Error::ZeroNoise
                | Error::ZeroIqr { .. }
                | Error::Divergent { .. }
                | Error::CellFailed { .. }
                | Error::NonFinite { .. }
        )
    }
}
