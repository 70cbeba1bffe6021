//! The probabilistic construction behind the series identity: the density
//! of the normal variance mixture X = √W·Z with Beta(1, λ) mixing, the
//! conditional kernel h(u), and the two independent routes to the same
//! exponential-functional expectation.

use crate::error::{Error, Result};
use crate::quadrature::{lhs_integral, shifted_power_exp_integral, QuadConfig, QuadResult};
use crate::specfun::e_gen;
use std::f64::consts::PI;

/// Density of X = √W·Z at x:
/// f_X(x) = (λ/√π) 2^{-λ} (x²)^{λ-1/2} Γ(1/2 − λ, x²/2).
///
/// Evaluated as λ/√(2π) · E_{λ+1/2}(x²/2), which is the same expression
/// with the x² powers cancelled analytically, stable for every λ > 0 and
/// every x ≠ 0 down to the f64 underflow of x². At x = 0 the density is
/// finite only for λ > 1/2, where it equals λ/((λ-1/2)√(2π)) by
/// continuity; for λ ≤ 1/2 the point is rejected.
pub fn mixture_density(x: f64, lambda: f64) -> Result<f64> {
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(Error::Domain(format!("lambda must be > 0, got {lambda}")));
    }
    let pre = lambda / (2.0 * PI).sqrt();
    let mut y = x * x / 2.0;
    if y == 0.0 {
        if x != 0.0 {
            // x² underflowed; clamp to the smallest normal so the λ ≤ 1/2
            // near-origin growth stays finite (the true density there is
            // larger, but such x carry no weight in any integral)
            y = f64::MIN_POSITIVE;
        } else if lambda > 0.5 {
            return Ok(pre / (lambda - 0.5));
        } else {
            return Err(Error::Domain(format!(
                "density is unbounded at x = 0 for lambda = {lambda} <= 1/2"
            )));
        }
    }
    Ok(pre * e_gen(lambda + 0.5, y)?.value)
}

/// Conditional kernel h(u) = (1 − 2au)^{-1/2} exp(−2√((1/2 − au) b/u)) on
/// u ∈ (0, 1/2), the closed form of the Gaussian integral conditioned on
/// the mixing variable.
pub fn conditional_kernel_h(u: f64, a: f64, b: f64) -> Result<f64> {
    if !(u > 0.0 && u < 0.5) {
        return Err(Error::Domain(format!("u must lie in (0, 1/2), got {u}")));
    }
    if !(a >= 0.0 && a <= 1.0) || !(b > 0.0) {
        return Err(Error::Domain(format!(
            "requires a in [0, 1] and b > 0, got a = {a}, b = {b}"
        )));
    }
    Ok((1.0 - 2.0 * a * u).powf(-0.5) * (-2.0 * ((0.5 - a * u) * b / u).sqrt()).exp())
}

/// E[exp(aX²/2 − 2b/X²)] via the density of X:
/// (λ/√π) ∫₀^∞ e^{au − b/u} u^{λ-1} Γ(1/2 − λ, u) du.
pub fn expectation_via_density(
    a: f64,
    b: f64,
    lambda: f64,
    cfg: &QuadConfig,
) -> Result<QuadResult> {
    if !(lambda > 0.0) {
        return Err(Error::Domain(format!("lambda must be > 0, got {lambda}")));
    }
    let r = lhs_integral(lambda + 0.5, a, b, cfg)?;
    let pre = lambda / PI.sqrt();
    Ok(QuadResult {
        value: pre * r.value,
        est_abs_error: pre * r.est_abs_error,
        evaluations: r.evaluations,
    })
}

/// The same expectation via conditioning on the mixing variable:
/// 2λ ∫_{√(1-a)}^∞ (a + t²)^{-λ-1/2} e^{-2√b t} dt.
pub fn expectation_via_conditioning(
    a: f64,
    b: f64,
    lambda: f64,
    cfg: &QuadConfig,
) -> Result<QuadResult> {
    if !(lambda > 0.0) {
        return Err(Error::Domain(format!("lambda must be > 0, got {lambda}")));
    }
    let r = shifted_power_exp_integral(lambda + 0.5, a, b, cfg)?;
    Ok(QuadResult {
        value: 2.0 * lambda * r.value,
        est_abs_error: 2.0 * lambda * r.est_abs_error,
        evaluations: r.evaluations,
    })
}
