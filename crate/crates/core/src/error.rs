use std::path::PathBuf;

use thiserror::Error;

use crate::model::CaseId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("T = {t} is outside the interval of {case}")]
    CaseMismatch { case: CaseId, t: f64 },

    #[error("quadrature did not reach tolerance {tolerance:e} on [{a}, {b}] within depth {depth}")]
    Convergence {
        a: f64,
        b: f64,
        tolerance: f64,
        depth: u32,
    },

    #[error("difference stencil [{lo}, {hi}] straddles breakpoint {breakpoint}")]
    Breakpoint { lo: f64, hi: f64, breakpoint: f64 },

    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed scenario {path}: {source}")]
    Scenario {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },

    #[error("{0}")]
    Output(String),
}

impl Error {
    /// Whether the failure is caused by the caller's input rather than by the solver.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::InvalidParams(_) | Error::Io { .. } | Error::Scenario { .. }
        )
    }
}
