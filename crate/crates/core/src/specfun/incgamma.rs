//! Upper incomplete Gamma Γ(p, x) at arbitrary real order, and the
//! generalized exponential integral Eₛ(x) it reduces to.
//!
//! The two are the same object in different clothing: Eₛ(x) = x^{s-1}Γ(1-s, x),
//! so Γ(p, x) for p < 1 is evaluated as x^p · E_{1-p}(x). The E form is the
//! stable carrier at and near integer orders, where Γ(1-n, x) by itself would
//! be assembled from hugely different magnitudes. Branches:
//!
//! * x > 1: Lentz continued fraction for Γ(p,x)·eˣ·x^{-p} (one fraction
//!   serves every order, and the scaled value is exactly what the
//!   semi-infinite quadrature needs in the far tail);
//! * x ≤ 1, integer s: the classical Eₙ power series with the ψ(n) − ln x
//!   logarithmic term;
//! * x ≤ 1, non-integer s: Eₛ(x) = x^{s-1}Γ(1-s) − e^{-x} Σₘ xᵐ/((p)ₘ₊₁)
//!   with p = 1-s, from the Kummer series of the lower incomplete Gamma;
//! * p ≥ 1: lower-series / continued-fraction split at x = p + 1.

use crate::error::{Error, Result};
use crate::specfun::gamma::{gamma, ln_gamma};
use crate::specfun::EvalResult;

const MAX_CF_ITER: usize = 800;
const MAX_SERIES_ITER: usize = 700;
const EPS: f64 = 1e-16;
/// Continued-fraction stop: delta can sit one ulp off 1.0, so this must
/// be above machine epsilon.
const CF_EPS: f64 = 5e-16;

/// Γ(p, x) · eˣ · x^{-p} by the Lentz continued fraction.
///
/// Converges for x ≳ max(1, p+1); every caller in this crate satisfies that.
/// Returns (value, estimated relative error).
pub(crate) fn gamma_cf_scaled(p: f64, x: f64) -> Result<(f64, f64)> {
    let tiny = 1e-300;
    let b0 = x + 1.0 - p;
    let mut c = 1.0 / tiny;
    let mut d = 1.0 / b0;
    let mut h = d;
    for i in 1..=MAX_CF_ITER {
        let i = i as f64;
        let a = -i * (i - p);
        let b = b0 + 2.0 * i;
        d = b + a * d;
        if d.abs() < tiny {
            d = tiny;
        }
        d = 1.0 / d;
        c = b + a / c;
        if c.abs() < tiny {
            c = tiny;
        }
        let delta = c * d;
        h *= delta;
        if (delta - 1.0).abs() < CF_EPS {
            return Ok((h, (delta - 1.0).abs() + CF_EPS));
        }
    }
    Err(Error::SeriesCap(MAX_CF_ITER))
}

/// eˣ · Eₛ(x) for x ≥ 1; the overflow-free form of the integrand tails.
pub(crate) fn e_gen_scaled(s: f64, x: f64) -> Result<(f64, f64)> {
    gamma_cf_scaled(1.0 - s, x)
}

fn is_integer(v: f64) -> bool {
    v == v.round()
}

/// Eₙ(x) series for integer n ≥ 1 and 0 < x ≤ 1 (A&S 5.1.12 shape).
fn e_int_series(n: u32, x: f64) -> Result<EvalResult> {
    let nf = f64::from(n);
    // ψ(n) = -γ + Σ_{k<n} 1/k, built directly
    let mut psi = -0.577_215_664_901_532_86_f64;
    for k in 1..n {
        psi += 1.0 / f64::from(k);
    }
    let log_coef = if n == 1 {
        1.0
    } else {
        // (-x)^{n-1}/(n-1)!
        let mut c = 1.0;
        for k in 1..n {
            c *= -x / f64::from(k);
        }
        c
    };
    let mut sum = log_coef * (psi - x.ln());
    let mut term = 1.0_f64; // (-x)^m / m!
    let mut max_term = sum.abs();
    for m in 0..MAX_SERIES_ITER {
        let mf = m as f64;
        if m > 0 {
            term *= -x / mf;
        }
        if m as i64 != i64::from(n) - 1 {
            let t = -term / (mf - nf + 1.0);
            sum += t;
            max_term = max_term.max(t.abs());
            if t.abs() < EPS * sum.abs().max(1e-300) && m as i64 > i64::from(n) {
                return Ok(EvalResult {
                    value: sum,
                    est_abs_error: t.abs() + 1e-16 * max_term,
                });
            }
        }
    }
    Err(Error::SeriesCap(MAX_SERIES_ITER))
}

/// Eₛ(x) series for non-integer s > 0 and 0 < x ≤ 1.
fn e_real_series(s: f64, x: f64) -> Result<EvalResult> {
    let p = 1.0 - s;
    let head = x.powf(s - 1.0) * gamma(p)?;
    // e^{-x} Σ_m x^m / (p(p+1)...(p+m))
    let emx = (-x).exp();
    let mut denom = p;
    let mut term = 1.0 / denom;
    let mut sum = term;
    for m in 1..MAX_SERIES_ITER {
        denom = p + m as f64;
        term *= x / denom;
        sum += term;
        if term.abs() < EPS * sum.abs().max(1e-300) {
            let value = head - emx * sum;
            let est = (head.abs() + emx * sum.abs()) * 1e-15 + term.abs();
            return Ok(EvalResult {
                value,
                est_abs_error: est,
            });
        }
    }
    Err(Error::SeriesCap(MAX_SERIES_ITER))
}

/// Generalized exponential integral Eₛ(x) = x^{s-1} Γ(1-s, x), real s > 0, x > 0.
pub fn e_gen(s: f64, x: f64) -> Result<EvalResult> {
    if !(s > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("e_gen requires s > 0, got s = {s}")));
    }
    if !(x > 0.0) {
        return Err(Error::Domain(format!("e_gen requires x > 0, got x = {x}")));
    }
    if x > 1.0 {
        let (h, rel) = gamma_cf_scaled(1.0 - s, x)?;
        let value = (-x).exp() * h;
        return Ok(EvalResult {
            value,
            est_abs_error: value.abs() * (rel + 1e-15),
        });
    }
    if is_integer(s) {
        e_int_series(s as u32, x)
    } else {
        e_real_series(s, x)
    }
}

/// Eₙ(x) = ∫₁^∞ e^{-xt} t^{-n} dt for integer n ≥ 1, x > 0.
///
/// Satisfies Eₙ(x) = x^{n-1} Γ(1-n, x).
pub fn exp_integral_en(n: u32, x: f64) -> Result<EvalResult> {
    if n < 1 {
        return Err(Error::Domain("exp_integral_en requires n >= 1".into()));
    }
    if !(x > 0.0) {
        return Err(Error::Domain(format!(
            "exp_integral_en requires x > 0, got x = {x}"
        )));
    }
    e_gen(f64::from(n), x)
}

/// Upper incomplete Gamma Γ(p, x) = ∫ₓ^∞ u^{p-1} e^{-u} du for any real p.
///
/// x = 0 is allowed only for p > 0, where the integral is the complete Γ(p).
pub fn upper_gamma(p: f64, x: f64) -> Result<EvalResult> {
    if x < 0.0 || !x.is_finite() {
        return Err(Error::Domain(format!(
            "upper_gamma requires x >= 0, got x = {x}"
        )));
    }
    if x == 0.0 {
        if p > 0.0 {
            let v = gamma(p)?;
            return Ok(EvalResult {
                value: v,
                est_abs_error: v.abs() * 1e-15,
            });
        }
        return Err(Error::Domain(
            "upper_gamma at x = 0 requires p > 0".to_string(),
        ));
    }
    if p < 1.0 {
        // Γ(p, x) = x^p E_{1-p}(x); stable across integer p ≤ 0
        let e = e_gen(1.0 - p, x)?;
        let scale = x.powf(p);
        return Ok(EvalResult {
            value: scale * e.value,
            est_abs_error: scale * e.est_abs_error + scale * e.value.abs() * 1e-15,
        });
    }
    if x < p + 1.0 {
        // Γ(p,x) = Γ(p) - γ(p,x), lower series
        let gp = ln_gamma(p).exp();
        let mut term = 1.0 / p;
        let mut sum = term;
        for m in 1..MAX_SERIES_ITER {
            term *= x / (p + m as f64);
            sum += term;
            if term < EPS * sum {
                let lower = (p * x.ln() - x).exp() * sum;
                return Ok(EvalResult {
                    value: gp - lower,
                    est_abs_error: (gp + lower) * 1e-15 + term * (p * x.ln() - x).exp(),
                });
            }
        }
        return Err(Error::SeriesCap(MAX_SERIES_ITER));
    }
    let (h, rel) = gamma_cf_scaled(p, x)?;
    let value = (p * x.ln() - x).exp() * h;
    Ok(EvalResult {
        value,
        est_abs_error: value.abs() * (rel + 1e-15),
    })
}
