//! The series-of-integrals identity: series side, expectation side,
//! Si/Ci closed form at a = 1, and the convergence classification.

use crate::error::{Error, Result};
use crate::identities::{Params, SeriesSum};
use crate::quadrature::{lhs_integral, QuadConfig};
use crate::sampling::{mc_exponential_expectation, McEstimate, Seed};
use crate::specfun::sici;
use std::f64::consts::PI;

/// Where a parameter pair lands in the convergence classification.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Convergence {
    Convergent,
    Divergent,
    OutOfDomain,
}

/// Classify (a, c): convergent for a ∈ (0,1) with c ≥ 1/a and for a = 1
/// with c > 1; divergent exactly at (1, 1); out of domain otherwise.
pub fn classify_convergence(a: f64, c: f64) -> Convergence {
    if !(a > 0.0 && a <= 1.0) || !c.is_finite() {
        return Convergence::OutOfDomain;
    }
    if a * c < 1.0 - 1e-12 {
        return Convergence::OutOfDomain;
    }
    if a == 1.0 && c == 1.0 {
        return Convergence::Divergent;
    }
    Convergence::Convergent
}

const SERIES_CAP: u32 = 400;

/// Σ_{n≥1} c^{-n} L(n, a, b), where L is the incomplete-Gamma integral,
/// truncated once the proven geometric tail bound √(π/b)·c^{-N}/(c-1)
/// falls below `tol`.
///
/// The bound holds because on the event ξ ≥ √(1-a) one has a + ξ² ≥ 1, so
/// every expectation the terms equal is at most √(π/b); the rest is the
/// geometric envelope. Divergent-pair input errors out rather than
/// looping.
pub fn theorem1_lhs_series(p: &Params, tol: f64, cfg: &QuadConfig) -> Result<SeriesSum> {
    if !(tol > 0.0) {
        return Err(Error::Config(format!("series tol must be > 0, got {tol}")));
    }
    match classify_convergence(p.a, p.c) {
        Convergence::Divergent => return Err(Error::DivergentPair),
        Convergence::OutOfDomain => {
            return Err(Error::Domain(format!(
                "series domain requires a in (0,1] and c >= 1/a, got a = {}, c = {}",
                p.a, p.c
            )))
        }
        Convergence::Convergent => {}
    }
    // c > 1 always holds on the convergent set: a < 1 forces c >= 1/a > 1.
    let term_cap = (PI / p.b).sqrt();
    let mut value = 0.0;
    let mut quad_err = 0.0;
    let mut weight = 1.0;
    for n in 1..=SERIES_CAP {
        weight /= p.c;
        let integral = lhs_integral(f64::from(n), p.a, p.b, cfg)?;
        value += weight * integral.value;
        quad_err += weight * integral.est_abs_error;
        let tail = term_cap * weight / (p.c - 1.0);
        if tail < tol {
            return Ok(SeriesSum {
                value,
                terms_used: n,
                tail_bound: tail,
                est_quad_error: quad_err,
            });
        }
    }
    Err(Error::SeriesCap(SERIES_CAP as usize))
}

/// √(π/b) · E[(cξ² + ac − 1)^{-1} 1{ξ ≥ √(1-a)}] with ξ ~ Exp(2√b),
/// estimated by Monte Carlo; mean and standard error carry the prefactor.
pub fn theorem1_rhs_expectation(
    p: &Params,
    n_mc: u64,
    seed: Seed,
    stream: u64,
) -> Result<McEstimate> {
    let est = mc_exponential_expectation(p.a, p.b, p.c, n_mc, seed, stream)?;
    let pre = (PI / p.b).sqrt();
    Ok(McEstimate {
        mean: pre * est.mean,
        std_error: pre * est.std_error,
        n_samples: est.n_samples,
        seed: est.seed,
    })
}

/// √(π/(c(c-1))) [2 sin(ℓ) Ci(ℓ) + cos(ℓ)(π − 2 Si(ℓ))] with
/// ℓ = 2√(b(c-1)/c); the closed form of the whole series at a = 1, c > 1.
pub fn theorem1_closed_form_a1(b: f64, c: f64) -> Result<f64> {
    if !(b > 0.0) {
        return Err(Error::Domain(format!("requires b > 0, got {b}")));
    }
    if !(c > 1.0) {
        return Err(Error::Domain(format!("requires c > 1, got {c}")));
    }
    let ell = 2.0 * (b * (c - 1.0) / c).sqrt();
    let (si, ci) = sici(ell)?;
    Ok((PI / (c * (c - 1.0))).sqrt() * (2.0 * ell.sin() * ci + ell.cos() * (PI - 2.0 * si)))
}

/// Outcome of driving the divergent-pair partial sums.
#[derive(Clone, Copy, Debug)]
pub struct DivergenceWitness {
    pub first_term: f64,
    /// Partial sum over the terms actually computed.
    pub partial_sum: f64,
    /// Number of terms computed before stopping.
    pub terms: u32,
    /// First N at which the partial sum exceeded `threshold × first_term`.
    pub exceeded_at: Option<u32>,
}

/// Drive the partial sums of the series at (a, c) = (1, 1), where every
/// weight is 1, until they exceed `threshold` times the first term or
/// `max_terms` is reached. Monotone growth of these sums is the testable
/// face of the divergence statement.
pub fn divergence_witness(
    b: f64,
    threshold: f64,
    max_terms: u32,
    cfg: &QuadConfig,
) -> Result<DivergenceWitness> {
    if !(b > 0.0) {
        return Err(Error::Domain(format!("requires b > 0, got {b}")));
    }
    let first = lhs_integral(1.0, 1.0, b, cfg)?.value;
    let mut sum = first;
    let mut exceeded_at = None;
    let mut terms = 1;
    for n in 2..=max_terms {
        sum += lhs_integral(f64::from(n), 1.0, b, cfg)?.value;
        terms = n;
        if sum > threshold * first {
            exceeded_at = Some(n);
            break;
        }
    }
    Ok(DivergenceWitness {
        first_term: first,
        partial_sum: sum,
        terms,
        exceeded_at,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use crate::quadrature::rhs_integral;

    #[test]
    fn classification_matches_stated_regions() {
        assert_eq!(classify_convergence(0.5, 2.0), Convergence::Convergent);
        assert_eq!(classify_convergence(0.5, 2.5), Convergence::Convergent);
        assert_eq!(classify_convergence(1.0, 1.0), Convergence::Divergent);
        assert_eq!(classify_convergence(1.0, 0.5), Convergence::OutOfDomain);
        assert_eq!(classify_convergence(0.25, 2.0), Convergence::OutOfDomain);
        assert_eq!(classify_convergence(1.5, 2.0), Convergence::OutOfDomain);
        assert_eq!(classify_convergence(1.0, 1.0 + 1e-9), Convergence::Convergent);
    }

    #[test]
    fn series_matches_integral_at_a_one() {
        let cfg = QuadConfig::default();
        let p = Params::series_domain(1.0, 1.0, 2.0).unwrap();
        let series = theorem1_lhs_series(&p, 1e-9, &cfg).unwrap();
        let integral = rhs_integral(1.0, 1.0, 2.0, &cfg).unwrap();
        let rhs = 2.0 * PI.sqrt() * integral.value;
        let budget = 1e-9 + series.tail_bound + series.est_quad_error + integral.est_abs_error;
        assert!(
            (series.value - rhs).abs() <= 1e-7 * (1.0 + rhs.abs()) + budget,
            "series {} vs integral {}",
            series.value,
            rhs
        );
    }

    #[test]
    fn series_matches_integral_below_a_one() {
        let cfg = QuadConfig::default();
        let p = Params::series_domain(0.5, 1.0, 2.0).unwrap();
        let series = theorem1_lhs_series(&p, 1e-9, &cfg).unwrap();
        let integral = rhs_integral(0.5, 1.0, 2.0, &cfg).unwrap();
        let rhs = 2.0 * PI.sqrt() * integral.value;
        assert_relative_eq!(series.value, rhs, max_relative = 1e-7);
    }

    #[test]
    fn series_tail_collapses_for_huge_c() {
        let cfg = QuadConfig::default();
        let p = Params::series_domain(1.0, 1.0, 1e6).unwrap();
        let s = theorem1_lhs_series(&p, 1e-6, &cfg).unwrap();
        assert_eq!(s.terms_used, 1);
        assert!(s.tail_bound < 1e-6);
    }

    #[test]
    fn series_rejects_divergent_pair() {
        let cfg = QuadConfig::default();
        let p = Params::series_domain(1.0, 1.0, 1.0).unwrap();
        assert!(matches!(
            theorem1_lhs_series(&p, 1e-9, &cfg),
            Err(Error::DivergentPair)
        ));
    }

    #[test]
    fn closed_form_matches_integral() {
        let cfg = QuadConfig::default();
        for &(b, c) in &[(1.0, 2.0), (4.0, 1.5), (0.25, 5.0)] {
            let closed = theorem1_closed_form_a1(b, c).unwrap();
            let integral = rhs_integral(1.0, b, c, &cfg).unwrap();
            assert_relative_eq!(
                closed,
                2.0 * PI.sqrt() * integral.value,
                max_relative = 1e-9
            );
        }
    }

    #[test]
    fn closed_form_vanishes_as_c_grows() {
        let v = theorem1_closed_form_a1(1.0, 1e6).unwrap();
        assert!(v.abs() < 1e-2);
        assert!(theorem1_closed_form_a1(1.0, 0.9).is_err());
    }

    #[test]
    fn divergence_witness_grows_past_threshold() {
        let cfg = QuadConfig::default();
        let w = divergence_witness(1.0, 10.0, 200, &cfg).unwrap();
        assert!(w.exceeded_at.is_some(), "partial sums stalled: {w:?}");
        assert!(w.partial_sum > 10.0 * w.first_term);
    }

    #[test]
    fn mc_expectation_carries_prefactor() {
        let p = Params::series_domain(1.0, 1.0, 2.0).unwrap();
        let est = theorem1_rhs_expectation(&p, 200_000, Seed::new(42), 0).unwrap();
        let closed = theorem1_closed_form_a1(1.0, 2.0).unwrap();
        assert!(
            (est.mean - closed).abs() < 4.0 * est.std_error,
            "mc {} +- {} vs closed {}",
            est.mean,
            est.std_error,
            closed
        );
    }
}
