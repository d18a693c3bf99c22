use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Adaptive quadrature ran out of subdivisions. Carries the best estimate.
    #[error("tolerance not met after {subdivisions} subdivisions: value {value:e}, error bound {error_bound:e}")]
    ToleranceNotMet {
        value: f64,
        error_bound: f64,
        subdivisions: usize,
    },

    #[error("{function}: series did not converge within {terms} terms (argument {argument})")]
    SeriesNotConverged {
        function: &'static str,
        argument: f64,
        terms: usize,
    },

    #[error("{name} = {value}: {reason}")]
    Domain {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("truncated series order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("non-finite value encountered in {0}")]
    NonFinite(&'static str),

    #[error("probability {value} from {what} lies outside [0, 1] beyond tolerance")]
    ProbabilityOutOfRange { what: &'static str, value: f64 },

    #[error("insufficient samples: {got} conditioned samples, at least {needed} required")]
    InsufficientSamples { got: usize, needed: usize },

    #[error("invalid configuration at `{path}`: {message}")]
    Config { path: String, message: String },

    #[error("could not parse configuration: {0}")]
    Parse(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn domain(name: &'static str, value: f64, reason: &'static str) -> Self {
        Error::Domain {
            name,
            value,
            reason,
        }
    }

    pub(crate) fn config(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Config {
            path: path.into(),
            message: message.into(),
        }
    }

    /// True for failures of numerical procedures (as opposed to bad input).
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::ToleranceNotMet { .. }
                | Error::SeriesNotConverged { .. }
                | Error::NonFinite(_)
                | Error::ProbabilityOutOfRange { .. }
        )
    }
}
