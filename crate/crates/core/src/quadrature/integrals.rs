//! The concrete semi-infinite integrals under test, each with the numerics
//! that keep its integrand in f64 range across the whole transform.
//!
//! The central one is
//!
//!   L(s, a, b) = ∫₀^∞ e^{ax - b/x} x^{s-3/2} Γ(1-s, x) dx,
//!
//! evaluated as e^{ax - b/x} x^{-1/2} Eₛ(x) so the x^{s-1} growth of the
//! Gamma factor cancels analytically rather than numerically. In the far
//! tail the Eₛ continued fraction is used in its e^x-scaled form, which
//! turns the a = 1 integrand into exp(-b/x) x^{-1/2} · (scaled fraction)
//! with a plain x^{-3/2} algebraic tail — no overflow at any node the
//! exp-sinh transform can reach. Near zero the e^{-b/x} factor is applied
//! in log space and the node returns exact 0 once the exponent is beyond
//! f64 range.

use crate::error::{Error, Result};
use crate::quadrature::engine::{integrate_lower_to_inf, integrate_zero_to_inf};
use crate::quadrature::{QuadConfig, QuadResult};
use crate::specfun::{bessel_k, e_gen, e_gen_scaled};
use std::f64::consts::PI;

/// Exponents below this are flushed to an exact zero node.
const LN_UNDERFLOW: f64 = -800.0;
/// Where the integrand switches from direct Eₛ to the e^x-scaled fraction.
const CF_SWITCH: f64 = 2.0;

fn check_theorem1_params(a: f64, b: f64) -> Result<()> {
    if !(a > 0.0 && a <= 1.0) {
        return Err(Error::Domain(format!("a must lie in (0, 1], got {a}")));
    }
    if !(b > 0.0) || !b.is_finite() {
        return Err(Error::Domain(format!("b must be positive, got {b}")));
    }
    Ok(())
}

/// ∫₀^∞ e^{-Ax² - B/x²} dx = (1/2)√(π/A) e^{-2√(AB)}, the Laplace integral.
pub fn laplace_integral(a_coef: f64, b_coef: f64) -> Result<f64> {
    if !(a_coef > 0.0 && b_coef > 0.0) {
        return Err(Error::Domain(format!(
            "laplace_integral requires A > 0 and B > 0, got A = {a_coef}, B = {b_coef}"
        )));
    }
    Ok(0.5 * (PI / a_coef).sqrt() * (-2.0 * (a_coef * b_coef).sqrt()).exp())
}

fn lhs_integrand(s: f64, a: f64, b: f64, x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x >= CF_SWITCH {
        let ln_pre = (a - 1.0) * x - b / x - 0.5 * x.ln();
        if ln_pre < LN_UNDERFLOW {
            return 0.0;
        }
        match e_gen_scaled(s, x) {
            Ok((h, _)) => ln_pre.exp() * h,
            Err(_) => f64::NAN,
        }
    } else {
        let ln_pre = a * x - b / x - 0.5 * x.ln();
        if ln_pre < LN_UNDERFLOW {
            return 0.0;
        }
        match e_gen(s, x) {
            Ok(e) => ln_pre.exp() * e.value,
            Err(_) => f64::NAN,
        }
    }
}

/// L(s, a, b) = ∫₀^∞ e^{ax - b/x} x^{s-3/2} Γ(1-s, x) dx for s > 0,
/// a ∈ (0, 1], b > 0.
pub fn lhs_integral(s: f64, a: f64, b: f64, cfg: &QuadConfig) -> Result<QuadResult> {
    if !(s > 0.0) {
        return Err(Error::Domain(format!("lhs_integral requires s > 0, got {s}")));
    }
    check_theorem1_params(a, b)?;
    integrate_zero_to_inf(|x| lhs_integrand(s, a, b, x), cfg)
}

/// ∫₀^∞ (1+t²)^{-s} e^{-2√b t} dt — the smooth, exponentially decaying form
/// every other route is ultimately checked against.
pub fn rational_exp_integral(s: f64, b: f64, cfg: &QuadConfig) -> Result<QuadResult> {
    if !(s > 0.0) {
        return Err(Error::Domain(format!(
            "rational_exp_integral requires s > 0, got {s}"
        )));
    }
    if !(b > 0.0) {
        return Err(Error::Domain(format!(
            "rational_exp_integral requires b > 0, got {b}"
        )));
    }
    let two_sqrt_b = 2.0 * b.sqrt();
    integrate_zero_to_inf(
        move |t| (-s * (t * t).ln_1p() - two_sqrt_b * t).exp(),
        cfg,
    )
}

/// ∫_{√(1-a)}^∞ (a+t²)^{-s} e^{-2√b t} dt, the power-kernel form of the
/// per-order identity at general a.
pub fn shifted_power_exp_integral(s: f64, a: f64, b: f64, cfg: &QuadConfig) -> Result<QuadResult> {
    if !(s > 0.0) {
        return Err(Error::Domain(format!("requires s > 0, got {s}")));
    }
    check_theorem1_params(a, b)?;
    let two_sqrt_b = 2.0 * b.sqrt();
    let lower = (1.0 - a).sqrt();
    integrate_lower_to_inf(
        move |t| (-s * (a + t * t).ln() - two_sqrt_b * t).exp(),
        lower,
        cfg,
    )
}

/// ∫_{√(1-a)}^∞ e^{-2√b u} / (cu² + ac - 1) du, without the 2√π prefactor.
///
/// Rejects the divergent pair (a, c) = (1, 1), where the integrand behaves
/// like u^{-2} at the origin, and c < 1/a, where the denominator vanishes
/// inside the domain.
pub fn rhs_integral(a: f64, b: f64, c: f64, cfg: &QuadConfig) -> Result<QuadResult> {
    check_theorem1_params(a, b)?;
    if a == 1.0 && c == 1.0 {
        return Err(Error::DivergentPair);
    }
    if a * c < 1.0 - 1e-12 {
        return Err(Error::Domain(format!(
            "rhs_integral requires c >= 1/a, got a = {a}, c = {c}"
        )));
    }
    let two_sqrt_b = 2.0 * b.sqrt();
    let lower = (1.0 - a).sqrt();
    let shift = a * c - 1.0;
    integrate_lower_to_inf(
        move |u| (-two_sqrt_b * u).exp() / (c * u * u + shift),
        lower,
        cfg,
    )
}

/// Closed form 2 (b/u)^{(A+1)/2} K_{A+1}(2√(bu)) of ∫₀^∞ e^{-b/x - ux} x^A dx,
/// for non-integer A.
pub fn bessel_k_representation(a_pow: f64, b: f64, u: f64) -> Result<f64> {
    if a_pow == a_pow.round() {
        return Err(Error::Domain(format!(
            "bessel_k_representation requires non-integer A, got {a_pow}"
        )));
    }
    if !(b > 0.0 && u > 0.0) {
        return Err(Error::Domain(format!(
            "bessel_k_representation requires b > 0 and u > 0, got b = {b}, u = {u}"
        )));
    }
    let k = bessel_k(a_pow + 1.0, 2.0 * (b * u).sqrt())?;
    Ok(2.0 * (b / u).powf((a_pow + 1.0) / 2.0) * k.value)
}
