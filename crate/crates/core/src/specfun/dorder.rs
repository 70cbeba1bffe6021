//! Derivatives of J_α and H_α with respect to the order, at the half-integer
//! orders α = n − 1/2 (for J) and α = 1/2 − n (for H).
//!
//! Differentiating the defining series term by term gives
//!
//!   ∂J_α/∂α = ln(z/2)·J_α − Σₖ (−1)^k ψ(k+α+1)/(k! Γ(k+α+1)) (z/2)^{2k+α},
//!
//! and the analogous expression for H with d/dα [1/Γ(k+α+3/2)] in place of
//! the ψ/Γ quotient. At α = n − 1/2 every Γ argument is positive. At
//! α = 1/2 − n the Γ argument k+2−n crosses the poles for k ≤ n−2; there
//! 1/Γ has a simple zero and its derivative is the finite limit
//! (−1)^j j! (j = n−2−k), which is exactly what
//! `recip_gamma_deriv_at_nonpositive` supplies. Those few "singular" terms
//! are added explicitly; the rest of the series uses −ψ/Γ as usual.

use crate::error::{Error, Result};
use crate::specfun::bessel::{bessel_j, struve_h, Order};
use crate::specfun::gamma::{digamma, ln_gamma, recip_gamma_deriv_at_nonpositive};
use crate::specfun::EvalResult;

const MAX_TERMS: usize = 500;
const TERM_EPS: f64 = 1e-17;
const TERM_FLOOR: f64 = 1e-300;

/// ∂J_α(z)/∂α evaluated at α = n − 1/2, for n ≥ 1, z > 0.
pub fn bessel_j_dorder(n: u32, z: f64) -> Result<EvalResult> {
    if n < 1 {
        return Err(Error::Domain("bessel_j_dorder requires n >= 1".into()));
    }
    if !(z > 0.0) {
        return Err(Error::Domain(format!(
            "bessel_j_dorder requires z > 0, got {z}"
        )));
    }
    let alpha = f64::from(n) - 0.5;
    let j = bessel_j(Order::n_minus_half(n), z)?;
    let half = z / 2.0;
    // u_k = (-1)^k (z/2)^{2k+α} / (k! Γ(k+α+1)),  ψ_k = ψ(k+α+1)
    let mut u = (alpha * half.ln() - ln_gamma(alpha + 1.0)).exp();
    let mut psi = digamma(alpha + 1.0)?;
    let mut sum = u * psi;
    let mut max_term = sum.abs();
    let mut small_run = 0;
    let mut est = 0.0;
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        u *= -(half * half) / ((kf + 1.0) * (kf + alpha + 1.0));
        psi += 1.0 / (kf + alpha + 1.0);
        let term = u * psi;
        sum += term;
        max_term = max_term.max(term.abs());
        if term.abs() < TERM_EPS * sum.abs().max(TERM_FLOOR) {
            small_run += 1;
            if small_run >= 3 {
                est = term.abs();
                break;
            }
        } else {
            small_run = 0;
        }
    }
    if small_run < 3 {
        return Err(Error::SeriesCap(MAX_TERMS));
    }
    let log_part = half.ln() * j.value;
    Ok(EvalResult {
        value: log_part - sum,
        est_abs_error: half.ln().abs() * j.est_abs_error + est + 1e-16 * (max_term + log_part.abs()),
    })
}

/// ∂H_α(z)/∂α evaluated at α = 1/2 − n, for n ≥ 1, z > 0.
pub fn struve_h_dorder(n: u32, z: f64) -> Result<EvalResult> {
    if n < 1 {
        return Err(Error::Domain("struve_h_dorder requires n >= 1".into()));
    }
    if !(z > 0.0) {
        return Err(Error::Domain(format!(
            "struve_h_dorder requires z > 0, got {z}"
        )));
    }
    let nf = f64::from(n);
    let h = struve_h(Order::half_minus_n(n), z)?;
    let half = z / 2.0;

    // Terms with k ≤ n-2: Γ argument k+2-n is a nonpositive integer -j.
    let mut singular = 0.0;
    for k in 0..n.saturating_sub(1) {
        let kf = f64::from(k);
        let j = n - 2 - k;
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let dk = recip_gamma_deriv_at_nonpositive(j);
        singular +=
            sign * dk * (half.powf(2.0 * kf + 1.5 - nf)) / ln_gamma(kf + 1.5).exp();
    }

    // Terms with k ≥ n-1 (index j = k-n+1): D_k = -ψ(j+1)/j!
    // v_j = (z/2)^{n+2j-1/2} / (j! Γ(n+j+1/2)), sign (-1)^{n-1+j}
    let mut v = ((nf - 0.5) * half.ln() - ln_gamma(nf + 0.5)).exp();
    let mut psi = digamma(1.0)?;
    let sign0 = if (n - 1) % 2 == 0 { 1.0 } else { -1.0 };
    let mut sum = -sign0 * psi * v;
    let mut max_term = sum.abs();
    let mut small_run = 0;
    let mut est = 0.0;
    let mut sign = sign0;
    for j in 0..MAX_TERMS {
        let jf = j as f64;
        v *= (half * half) / ((jf + 1.0) * (nf + jf + 0.5));
        psi += 1.0 / (jf + 1.0);
        sign = -sign;
        let term = -sign * psi * v;
        sum += term;
        max_term = max_term.max(term.abs());
        if term.abs() < TERM_EPS * sum.abs().max(TERM_FLOOR) {
            small_run += 1;
            if small_run >= 3 {
                est = term.abs();
                break;
            }
        } else {
            small_run = 0;
        }
    }
    if small_run < 3 {
        return Err(Error::SeriesCap(MAX_TERMS));
    }
    let log_part = half.ln() * h.value;
    let value = log_part + singular + sum;
    Ok(EvalResult {
        value,
        est_abs_error: half.ln().abs() * h.est_abs_error
            + est
            + 1e-16 * (max_term + singular.abs() + log_part.abs()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    /// Richardson-extrapolated central difference in the order, step 1e-5.
    fn fd_in_order(f: impl Fn(f64) -> f64, alpha: f64) -> f64 {
        let h = 1e-5;
        let d = |hh: f64| (f(alpha + hh) - f(alpha - hh)) / (2.0 * hh);
        (4.0 * d(h / 2.0) - d(h)) / 3.0
    }

    #[test]
    fn j_dorder_matches_finite_differences() {
        let fd = fd_in_order(|a| bessel_j(Order::real(a), 2.0).unwrap().value, 0.5);
        let r = bessel_j_dorder(1, 2.0).unwrap();
        assert_relative_eq!(r.value, fd, max_relative = 1e-8);
    }

    #[test]
    fn h_dorder_matches_finite_differences() {
        let fd = fd_in_order(|a| struve_h(Order::real(a), 2.0).unwrap().value, -0.5);
        let r = struve_h_dorder(1, 2.0).unwrap();
        assert_relative_eq!(r.value, fd, max_relative = 1e-8);
    }

    #[test]
    fn h_dorder_with_two_singular_terms() {
        // n = 3 exercises k = 0, 1 through the (-1)^j j! limit rule
        let fd = fd_in_order(|a| struve_h(Order::real(a), 1.0).unwrap().value, -2.5);
        let r = struve_h_dorder(3, 1.0).unwrap();
        assert_relative_eq!(r.value, fd, max_relative = 1e-8);
    }

    #[test]
    fn j_dorder_small_z_is_negative() {
        // leading behaviour ~ ln(z/2) J_{n-1/2}(z) < 0 for z well below 2
        let r = bessel_j_dorder(1, 0.01).unwrap();
        assert!(r.value < 0.0);
    }

    #[test]
    fn dorder_domain_errors() {
        assert!(bessel_j_dorder(0, 1.0).is_err());
        assert!(bessel_j_dorder(1, 0.0).is_err());
        assert!(struve_h_dorder(0, 1.0).is_err());
        assert!(struve_h_dorder(2, -1.0).is_err());
    }
}
