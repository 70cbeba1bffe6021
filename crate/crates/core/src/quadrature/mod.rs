//! Semi-infinite numerical integration for the three integrand families in
//! play: essential-singularity × incomplete-Gamma kernels on (0, ∞),
//! rational × exponential tails on a shifted half-line, and the closed-form
//! Laplace/Bessel-K reference integrals they are checked against.

mod engine;
mod integrals;

pub use engine::{integrate_lower_to_inf, integrate_zero_to_inf};
pub use integrals::{
    bessel_k_representation, laplace_integral, lhs_integral, rational_exp_integral, rhs_integral,
    shifted_power_exp_integral,
};

/// Tuning for the double-exponential engine.
#[derive(Clone, Copy, Debug)]
pub struct QuadConfig {
    /// Relative tolerance the level-to-level estimate must reach.
    pub target_rel_tol: f64,
    /// Maximum number of step halvings.
    pub max_levels: u32,
    /// Where (0, ∞) is split between the tanh-sinh and exp-sinh panels.
    pub split_point: f64,
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig {
            target_rel_tol: 1e-10,
            max_levels: 12,
            split_point: 1.0,
        }
    }
}

/// Outcome of a quadrature: value, error estimate, and work done.
#[derive(Clone, Copy, Debug)]
pub struct QuadResult {
    pub value: f64,
    pub est_abs_error: f64,
    pub evaluations: u64,
}
