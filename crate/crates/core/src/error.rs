//! Error types shared across the crate.

use thiserror::Error;

/// Errors raised by special-function evaluators, quadrature, sampling and
/// identity checks.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Argument lies at (or within guard distance of) a pole of Γ or ψ.
    #[error("pole: {0}")]
    Pole(String),

    /// Argument outside the mathematical domain of the operation.
    #[error("domain: {0}")]
    Domain(String),

    /// The parameter pair (a, c) = (1, 1), for which the series and the
    /// right-hand-side integral both diverge.
    #[error("divergent: the series is divergent for a = 1 and c = 1")]
    DivergentPair,

    /// Quadrature did not meet its tolerance within the level budget.
    /// Carries the best estimate so the caller can inspect it.
    #[error("quadrature did not converge: value ~ {value:.6e}, est_abs_error ~ {est_abs_error:.3e} after {evaluations} evaluations")]
    QuadNonConvergence {
        value: f64,
        est_abs_error: f64,
        evaluations: u64,
    },

    /// A series hit its term cap before meeting its stopping rule.
    #[error("series did not converge within {0} terms")]
    SeriesCap(usize),

    /// Invalid run configuration (empty grid, bad tolerance, ...).
    #[error("config: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
