use thiserror::Error;

use crate::eigen::QuantumNumbers;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("cannot parse potential spec `{spec}`: {reason}")]
    Parse { spec: String, reason: String },

    #[error(
        "insufficient bound states or bad truncation for {state}: no bracket after {expansions} expansions (last [{lo}, {hi}])"
    )]
    BracketNotFound {
        state: QuantumNumbers,
        expansions: usize,
        lo: f64,
        hi: f64,
    },

    #[error("eigenvalue for {state} did not converge; last bracket [{lo}, {hi}]")]
    NotConverged { state: QuantumNumbers, lo: f64, hi: f64 },

    #[error("minimization failed: {0}")]
    Minimization(String),

    #[error("ODE integration failed: {0}")]
    Integration(String),

    #[error("internal consistency failure: {0}")]
    Inconsistent(String),

    #[error("state {state}: {source}")]
    State {
        state: QuantumNumbers,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn with_state(self, state: QuantumNumbers) -> Self {
        match self {
            e @ (Error::BracketNotFound { .. } | Error::NotConverged { .. } | Error::State { .. }) => e,
            e => Error::State {
                state,
                source: Box::new(e),
            },
        }
    }

    /// True for failures of the numerics rather than of the caller's input.
    pub fn is_numerical(&self) -> bool {
        match self {
            Error::BracketNotFound { .. }
            | Error::NotConverged { .. }
            | Error::Minimization(_)
            | Error::Integration(_)
            | Error::Inconsistent(_) => true,
            Error::State { source, .. } => source.is_numerical(),
            _ => false,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
