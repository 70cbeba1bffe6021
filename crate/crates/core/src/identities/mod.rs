//! The identity engines: every named equation evaluated on both sides by
//! unrelated methods (series vs quadrature vs closed form vs Monte Carlo),
//! reported with explicitly composed error budgets.

mod density;
mod report;
mod suite;
mod theorem1;
mod theorem2;
pub mod tolerances;

pub use density::{
    conditional_kernel_h, expectation_via_conditioning, expectation_via_density, mixture_density,
};
pub use report::{reports_to_csv, reports_to_json, ParsedReport};
pub use suite::{run_suite, RunSpec, SuiteConfig};
pub use theorem1::{
    classify_convergence, divergence_witness, theorem1_closed_form_a1, theorem1_lhs_series,
    theorem1_rhs_expectation, Convergence, DivergenceWitness,
};
pub use theorem2::{
    bessel_term_identity, general_s_identity, jcos_identity, theorem2_lhs_series,
    theorem2_closed_form,
};

use crate::error::{Error, Result};

/// Identity parameters (a, b, c) with the derived quantities ℓ and d.
///
/// Two parameter regimes share the struct: the series/integral identities
/// need a ∈ (0, 1], b > 0, c ≥ 1/a (with (1, 1) flagged divergent, never
/// silently accepted), while the generating-function identities need
/// c ∈ (0, 1), where d = √(1-c) is the composite argument scale.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Params {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl Params {
    /// Parameters for the series-of-integrals identities: a ∈ (0,1], b > 0,
    /// c ≥ 1/a. The divergent pair (1, 1) is accepted here and classified
    /// by [`classify_convergence`]; operations that cannot handle it reject
    /// it themselves.
    pub fn series_domain(a: f64, b: f64, c: f64) -> Result<Self> {
        if !(a > 0.0 && a <= 1.0) {
            return Err(Error::Domain(format!("a must lie in (0, 1], got {a}")));
        }
        if !(b > 0.0) || !b.is_finite() {
            return Err(Error::Domain(format!("b must be positive, got {b}")));
        }
        if a * c < 1.0 - 1e-12 {
            return Err(Error::Domain(format!(
                "c must satisfy c >= 1/a, got a = {a}, c = {c}"
            )));
        }
        Ok(Params { a, b, c })
    }

    /// Parameters for the generating-function identities: b > 0, c ∈ (0, 1).
    pub fn generating_domain(b: f64, c: f64) -> Result<Self> {
        if !(b > 0.0) || !b.is_finite() {
            return Err(Error::Domain(format!("b must be positive, got {b}")));
        }
        if !(c > 0.0 && c < 1.0) {
            return Err(Error::Domain(format!("c must lie in (0, 1), got {c}")));
        }
        Ok(Params { a: 1.0, b, c })
    }

    /// ℓ = 2√(b(c-1)/c), the closed-form argument for c > 1.
    pub fn ell(&self) -> f64 {
        debug_assert!(self.c > 1.0);
        2.0 * (self.b * (self.c - 1.0) / self.c).sqrt()
    }

    /// d = √(1-c), the argument scale for c ∈ (0, 1).
    pub fn d(&self) -> f64 {
        debug_assert!(self.c > 0.0 && self.c < 1.0);
        (1.0 - self.c).sqrt()
    }
}

/// A truncated series value with a remainder bound.
///
/// For the geometric-tail series the bound is proven (the c^{-N}/(c-1)
/// envelope); for the order-derivative series it is the coefficient
/// heuristic and is flagged as such in the report notes.
#[derive(Clone, Copy, Debug)]
pub struct SeriesSum {
    pub value: f64,
    pub terms_used: u32,
    pub tail_bound: f64,
    /// Accumulated quadrature error of the per-term integrals, where the
    /// terms are integrals; 0 otherwise.
    pub est_quad_error: f64,
}

/// Which identity a report refers to.
#[derive(
    Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize, serde::Deserialize,
)]
#[serde(rename_all = "snake_case")]
pub enum IdentityId {
    /// Series of integrals vs the shifted rational-exponential integral.
    Thm1Series,
    /// Si/Ci closed form vs the integral, at a = 1.
    Thm1ClosedForm,
    /// Series/integral vs the exponential-expectation Monte Carlo.
    Thm1Mc,
    /// The divergent pair (1, 1): classification plus growth witness.
    Thm1Divergence,
    /// Non-integer-order identity with the csc/sec combination.
    GeneralS,
    /// Per-order limit identity with the order-derivatives.
    BesselTerm,
    /// Generating function of (-1)^n J_{1/2-n} against the cosine form.
    Jcos,
    /// Order-derivative summation formula vs its Si/Ci closed form.
    Thm2,
    /// Mixture density integrates to one.
    MixtureNorm,
    /// Density route equals conditioning route for the same expectation.
    RouteEquality,
    /// Mixture-expectation Monte Carlo vs quadrature.
    McMixture,
}

impl IdentityId {
    pub const ALL: [IdentityId; 11] = [
        IdentityId::Thm1Series,
        IdentityId::Thm1ClosedForm,
        IdentityId::Thm1Mc,
        IdentityId::Thm1Divergence,
        IdentityId::GeneralS,
        IdentityId::BesselTerm,
        IdentityId::Jcos,
        IdentityId::Thm2,
        IdentityId::MixtureNorm,
        IdentityId::RouteEquality,
        IdentityId::McMixture,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            IdentityId::Thm1Series => "thm1_series",
            IdentityId::Thm1ClosedForm => "thm1_closed_form",
            IdentityId::Thm1Mc => "thm1_mc",
            IdentityId::Thm1Divergence => "thm1_divergence",
            IdentityId::GeneralS => "general_s",
            IdentityId::BesselTerm => "bessel_term",
            IdentityId::Jcos => "jcos",
            IdentityId::Thm2 => "thm2",
            IdentityId::MixtureNorm => "mixture_norm",
            IdentityId::RouteEquality => "route_equality",
            IdentityId::McMixture => "mc_mixture",
        }
    }
}

impl std::str::FromStr for IdentityId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        IdentityId::ALL
            .iter()
            .copied()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| {
                Error::Config(format!(
                    "unknown identity '{s}' (expected one of: {})",
                    IdentityId::ALL.map(|i| i.as_str()).join(", ")
                ))
            })
    }
}

impl std::fmt::Display for IdentityId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The parameter values a report was evaluated at; unused slots stay None.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ParamSet {
    pub a: Option<f64>,
    pub b: Option<f64>,
    pub c: Option<f64>,
    pub n: Option<u32>,
    pub s: Option<f64>,
    pub lambda: Option<f64>,
}

impl ParamSet {
    /// Stable ordering key for report sorting.
    fn sort_key(&self) -> [f64; 6] {
        let f = |v: Option<f64>| v.unwrap_or(f64::NEG_INFINITY);
        [
            f(self.a),
            f(self.b),
            f(self.c),
            f(self.n.map(f64::from)),
            f(self.s),
            f(self.lambda),
        ]
    }
}

/// One identity checked at one grid point.
#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub identity: IdentityId,
    pub params: ParamSet,
    pub lhs: f64,
    pub rhs: f64,
    pub abs_err: f64,
    pub rel_err: f64,
    pub tol: f64,
    pub passed: bool,
    pub note: String,
}

impl VerificationReport {
    /// Build a report from two independently computed sides and an absolute
    /// tolerance (already composed from the identity tolerance and the
    /// numerical budgets of both sides).
    pub fn from_sides(
        identity: IdentityId,
        params: ParamSet,
        lhs: f64,
        rhs: f64,
        tol: f64,
        note: impl Into<String>,
    ) -> Self {
        let abs_err = (lhs - rhs).abs();
        let scale = lhs.abs().max(rhs.abs()).max(1e-300);
        let rel_err = abs_err / scale;
        let passed = lhs.is_finite() && rhs.is_finite() && abs_err <= tol;
        VerificationReport {
            identity,
            params,
            lhs,
            rhs,
            abs_err,
            rel_err,
            tol,
            passed,
            note: note.into(),
        }
    }

    /// Ordering for stable emission: (identity, params).
    pub fn sort_key(&self) -> (IdentityId, [u64; 6]) {
        (
            self.identity,
            self.params.sort_key().map(|v| {
                // total order on f64 keys, -inf first
                let bits = v.to_bits();
                if v.is_sign_negative() {
                    !bits
                } else {
                    bits ^ (1 << 63)
                }
            }),
        )
    }
}
