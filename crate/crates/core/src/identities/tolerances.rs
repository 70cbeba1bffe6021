//! Per-identity verification tolerances, pinned in one place.
//!
//! The identities are exact; every tolerance below is a budget for the
//! numerical routes that evaluate the two sides, not for the mathematics.
//! Reports compose these relative targets with the concrete error
//! estimates of the quadratures and series truncations involved, so a
//! failure means a side disagreed beyond everything we can account for.

/// Series-of-integrals vs shifted integral: relative part of the budget.
/// Both sides are double-exponential quadratures targeting 1e-10; 1e-7
/// absorbs the per-term accumulation over up to ~100 series terms.
pub const TOL_THM1_SERIES: f64 = 1e-7;

/// Si/Ci closed form vs direct quadrature at a = 1. Single smooth integral
/// against a closed form built from series/fraction evaluators good to
/// ~1e-13; 1e-9 relative is comfortable on both sides.
pub const TOL_THM1_CLOSED_FORM: f64 = 1e-9;

/// Non-integer-order identity: integral side converges to ~1e-10, the
/// csc/sec combination loses up to two digits near its excluded poles.
pub const TOL_GENERAL_S: f64 = 1e-7;

/// Per-order limit identity: the order-derivative series are accurate to
/// ~1e-12 relative but sit inside a three-term combination with mild
/// cancellation; 1e-6 relative matches the acceptance grid.
pub const TOL_BESSEL_TERM: f64 = 1e-6;

/// Order-derivative summation formula vs closed form.
pub const TOL_THM2: f64 = 1e-6;

/// Generating-function identity vs the cosine closed form.
pub const TOL_JCOS: f64 = 1e-8;

/// Mixture density normalization, absolute error on ∫ f = 1.
pub const TOL_MIXTURE_NORM: f64 = 1e-9;

/// Density route vs conditioning route for the same expectation, relative.
pub const TOL_ROUTE_EQUALITY: f64 = 1e-8;

/// Monte-Carlo comparisons accept |mc − quadrature| ≤ this many standard
/// errors; statistical acceptance, not exact.
pub const MC_SIGMA: f64 = 4.0;

/// Divergence witness: partial sums must exceed this multiple of the first
/// term...
pub const DIVERGENCE_GROWTH_FACTOR: f64 = 10.0;

/// ...within this many terms.
pub const DIVERGENCE_MAX_TERMS: u32 = 200;

/// Orders closer than this to a pole of csc/sec are rejected by the
/// non-integer-order identity; the integer case has its own operation.
pub const NEAR_POLE_EXCLUSION: f64 = 0.05;

/// Default truncation target handed to the series sides.
pub const SERIES_TOL_DEFAULT: f64 = 1e-9;
