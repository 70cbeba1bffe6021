//! Double-exponential quadrature on (0, ∞), split into a tanh-sinh panel on
//! (lo, split] and an exp-sinh panel on [split, ∞).
//!
//! Both panels are the trapezoidal rule in the transformed variable t, with
//! the step halved level by level; nodes from earlier levels are reused by
//! summing only the odd multiples of the new step. Each level scans outward
//! from the center of the transform and stops a side once three consecutive
//! transformed terms are negligible against the running sum, so integrands
//! that die early never get evaluated in the far tail. The error estimate is
//! the difference of the last two level values plus a rounding floor on the
//! absolute node sum.

use crate::error::{Error, Result};
use crate::quadrature::{QuadConfig, QuadResult};
use std::f64::consts::FRAC_PI_2;

/// Largest |t| for tanh-sinh; beyond it the weight underflows to zero.
const T_MAX_TANH_SINH: f64 = 6.5;
/// Largest |t| for exp-sinh; beyond it x overflows (positive side) or
/// collapses onto the lower endpoint (negative side).
const T_MAX_EXP_SINH: f64 = 6.7;
/// Consecutive negligible nodes before a side of a level is abandoned.
const SMALL_RUN: u32 = 3;
/// Node contributions below this fraction of the running sum count as
/// negligible for outward truncation.
const TRUNC_EPS: f64 = 1e-18;

#[derive(Clone, Copy)]
enum Transform {
    /// (lo, hi) via x = lo + (hi-lo)·σ(2u), u = (π/2) sinh t
    TanhSinh { lo: f64, hi: f64 },
    /// (lo, ∞) via x = lo + scale·exp((π/2) sinh t)
    ExpSinh { lo: f64, scale: f64 },
}

impl Transform {
    fn t_max(&self) -> f64 {
        match self {
            Transform::TanhSinh { .. } => T_MAX_TANH_SINH,
            Transform::ExpSinh { .. } => T_MAX_EXP_SINH,
        }
    }

    /// Node and weight at parameter t, or None where the transform has
    /// underflowed onto an endpoint.
    fn node(&self, t: f64) -> Option<(f64, f64)> {
        let u = FRAC_PI_2 * t.sinh();
        let cosh_t = t.cosh();
        match *self {
            Transform::TanhSinh { lo, hi } => {
                // σ(2u) and 1-σ(2u), each computed on its own stable side
                let e = (-2.0 * u.abs()).exp();
                let near = e / (1.0 + e); // distance to the closer endpoint
                let far = 1.0 / (1.0 + e);
                let (s, one_minus_s) = if u >= 0.0 { (far, near) } else { (near, far) };
                let w = (hi - lo) * 2.0 * s * one_minus_s * FRAC_PI_2 * cosh_t;
                if w == 0.0 || !w.is_finite() {
                    return None;
                }
                let x = lo + (hi - lo) * s;
                if x <= lo || x >= hi {
                    return None;
                }
                Some((x, w))
            }
            Transform::ExpSinh { lo, scale } => {
                let r = scale * u.exp();
                if r == 0.0 || !r.is_finite() {
                    return None;
                }
                let w = r * FRAC_PI_2 * cosh_t;
                if !w.is_finite() {
                    return None;
                }
                Some((lo + r, w))
            }
        }
    }
}

struct PanelState {
    /// Σ f(x(t))·w(t) over all nodes evaluated so far
    g_sum: f64,
    /// Σ |f·w|, for the rounding floor
    abs_sum: f64,
    evaluations: u64,
}

fn eval_node(
    f: &dyn Fn(f64) -> f64,
    tr: &Transform,
    t: f64,
    state: &mut PanelState,
) -> Result<Option<f64>> {
    let Some((x, w)) = tr.node(t) else {
        return Ok(None);
    };
    let fx = f(x);
    state.evaluations += 1;
    if !fx.is_finite() {
        return Err(Error::Domain(format!(
            "integrand returned a non-finite value at x = {x:e}"
        )));
    }
    let g = fx * w;
    state.g_sum += g;
    state.abs_sum += g.abs();
    Ok(Some(g))
}

/// Scan one side of a level outward, stopping after SMALL_RUN negligible
/// nodes past the protected inner region.
fn scan_side(
    f: &dyn Fn(f64) -> f64,
    tr: &Transform,
    ts: impl Iterator<Item = f64>,
    state: &mut PanelState,
) -> Result<()> {
    let mut run = 0;
    for t in ts {
        match eval_node(f, tr, t, state)? {
            None => break, // transform exhausted on this side
            Some(g) => {
                if g.abs() <= TRUNC_EPS * state.g_sum.abs().max(1e-300) && t.abs() >= 2.0 {
                    run += 1;
                    if run >= SMALL_RUN {
                        break;
                    }
                } else {
                    run = 0;
                }
            }
        }
    }
    Ok(())
}

/// One transformed panel, run to convergence or the level cap; the flag
/// reports which, so a caller can combine panels before deciding to fail.
fn integrate_panel(
    f: &dyn Fn(f64) -> f64,
    tr: Transform,
    cfg: &QuadConfig,
) -> Result<(QuadResult, bool)> {
    let t_max = tr.t_max();
    let mut state = PanelState {
        g_sum: 0.0,
        abs_sum: 0.0,
        evaluations: 0,
    };

    // level 0: step 1, all integer nodes
    eval_node(f, &tr, 0.0, &mut state)?;
    let steps = t_max as usize + 1;
    scan_side(f, &tr, (1..=steps).map(|k| k as f64), &mut state)?;
    scan_side(f, &tr, (1..=steps).map(|k| -(k as f64)), &mut state)?;
    let mut prev = state.g_sum; // T_0 with h = 1

    let mut result = QuadResult {
        value: prev,
        est_abs_error: f64::INFINITY,
        evaluations: state.evaluations,
    };
    for level in 1..=cfg.max_levels {
        let h = 0.5_f64.powi(level as i32);
        let count = (t_max / (2.0 * h)) as usize + 1;
        let odd = |m: usize| (2 * m + 1) as f64 * h;
        scan_side(f, &tr, (0..count).map(odd), &mut state)?;
        scan_side(f, &tr, (0..count).map(|m| -odd(m)), &mut state)?;
        let value = h * state.g_sum;
        let err = (value - prev).abs();
        let floor = 1e-16 * h * state.abs_sum;
        let est = err + floor;
        result = QuadResult {
            value,
            est_abs_error: est,
            evaluations: state.evaluations,
        };
        if est <= (cfg.target_rel_tol * value.abs()).max(1e-305) + floor {
            return Ok((result, true));
        }
        prev = value;
    }
    Ok((result, false))
}

fn combine(parts: &[(QuadResult, bool)]) -> Result<QuadResult> {
    let total = QuadResult {
        value: parts.iter().map(|(p, _)| p.value).sum(),
        est_abs_error: parts.iter().map(|(p, _)| p.est_abs_error).sum(),
        evaluations: parts.iter().map(|(p, _)| p.evaluations).sum(),
    };
    if parts.iter().all(|&(_, ok)| ok) {
        Ok(total)
    } else {
        Err(Error::QuadNonConvergence {
            value: total.value,
            est_abs_error: total.est_abs_error,
            evaluations: total.evaluations,
        })
    }
}

pub(crate) fn check_config(cfg: &QuadConfig) -> Result<()> {
    if !(cfg.target_rel_tol > 0.0) {
        return Err(Error::Config("target_rel_tol must be > 0".into()));
    }
    if cfg.max_levels < 3 {
        return Err(Error::Config("max_levels must be >= 3".into()));
    }
    if !(cfg.split_point > 0.0) {
        return Err(Error::Config("split_point must be > 0".into()));
    }
    Ok(())
}

/// ∫₀^∞ f, tanh-sinh on (0, split] plus exp-sinh on [split, ∞).
pub fn integrate_zero_to_inf(f: impl Fn(f64) -> f64, cfg: &QuadConfig) -> Result<QuadResult> {
    check_config(cfg)?;
    let f = &f as &dyn Fn(f64) -> f64;
    let head = integrate_panel(
        f,
        Transform::TanhSinh {
            lo: 0.0,
            hi: cfg.split_point,
        },
        cfg,
    )?;
    let tail = integrate_panel(
        f,
        Transform::ExpSinh {
            lo: cfg.split_point,
            scale: cfg.split_point,
        },
        cfg,
    )?;
    combine(&[head, tail])
}

/// ∫_lower^∞ f for lower ≥ 0.
pub fn integrate_lower_to_inf(
    f: impl Fn(f64) -> f64,
    lower: f64,
    cfg: &QuadConfig,
) -> Result<QuadResult> {
    check_config(cfg)?;
    if lower < 0.0 || !lower.is_finite() {
        return Err(Error::Domain(format!(
            "integrate_lower_to_inf requires lower >= 0, got {lower}"
        )));
    }
    if lower == 0.0 {
        return integrate_zero_to_inf(f, cfg);
    }
    let f = &f as &dyn Fn(f64) -> f64;
    let panel = integrate_panel(
        f,
        Transform::ExpSinh {
            lo: lower,
            scale: cfg.split_point,
        },
        cfg,
    )?;
    combine(&[panel])
}
