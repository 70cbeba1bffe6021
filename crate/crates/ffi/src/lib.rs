//! C ABI over the specint library.
//!
//! Conventions: every function returns a [`SpecintStatus`]; results are
//! written through out-pointers and are only meaningful when the status is
//! `Ok`. Whole verification runs are held behind the opaque
//! [`SpecintSuite`] handle. Strings returned by this library must be
//! released with `specint_string_free`, handles with `specint_suite_free`.
//! All functions catch panics at the boundary and report them as
//! `InternalPanic` instead of unwinding into the caller.

use specint::identities::{
    classify_convergence, conditional_kernel_h, mixture_density, reports_to_json, run_suite,
    theorem1_closed_form_a1, theorem1_lhs_series, theorem2_closed_form, theorem2_lhs_series,
    Convergence, Params, SuiteConfig, VerificationReport,
};
use specint::quadrature::{
    bessel_k_representation, laplace_integral, lhs_integral, rational_exp_integral, rhs_integral,
    QuadConfig,
};
use specint::sampling::{
    mc_exponential_expectation, mc_mixture_expectation, MixtureSpec, Seed,
};
use specint::specfun::{
    bessel_i, bessel_j, bessel_j_dorder, bessel_k, cosine_integral, digamma, exp_integral_en,
    gamma, recip_gamma_deriv_at_nonpositive, si_shifted, sine_integral, struve_h,
    struve_h_dorder, upper_gamma, EvalResult, Order,
};
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

/// Status codes returned by every function in this ABI.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpecintStatus {
    Ok = 0,
    /// Argument outside the mathematical domain of the operation.
    DomainError = 1,
    /// Argument at (or within guard distance of) a pole.
    PoleError = 2,
    /// The divergent parameter pair (a, c) = (1, 1).
    Divergent = 3,
    /// Quadrature or series failed to meet its tolerance.
    NoConvergence = 4,
    /// Invalid run configuration.
    ConfigError = 5,
    /// A required pointer argument was null.
    NullArgument = 6,
    /// Malformed UTF-8 or JSON input.
    BadInput = 7,
    /// A panic was caught at the ABI boundary.
    InternalPanic = 8,
}

fn status_of(e: &specint::Error) -> SpecintStatus {
    use specint::Error::*;
    match e {
        Pole(_) => SpecintStatus::PoleError,
        Domain(_) => SpecintStatus::DomainError,
        DivergentPair => SpecintStatus::Divergent,
        QuadNonConvergence { .. } | SeriesCap(_) => SpecintStatus::NoConvergence,
        Config(_) => SpecintStatus::ConfigError,
    }
}

/// Run `f` with panics converted to `InternalPanic`.
fn guarded(f: impl FnOnce() -> SpecintStatus) -> SpecintStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => SpecintStatus::InternalPanic,
    }
}

unsafe fn write_scalar(
    out: *mut f64,
    r: Result<f64, specint::Error>,
) -> SpecintStatus {
    if out.is_null() {
        return SpecintStatus::NullArgument;
    }
    match r {
        Ok(v) => {
            *out = v;
            SpecintStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

unsafe fn write_eval(
    value: *mut f64,
    est_abs_error: *mut f64,
    r: Result<EvalResult, specint::Error>,
) -> SpecintStatus {
    if value.is_null() || est_abs_error.is_null() {
        return SpecintStatus::NullArgument;
    }
    match r {
        Ok(v) => {
            *value = v.value;
            *est_abs_error = v.est_abs_error;
            SpecintStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

// ---- special functions ----------------------------------------------------

/// Γ(x) for x not a nonpositive integer.
#[no_mangle]
pub unsafe extern "C" fn specint_gamma(x: f64, out: *mut f64) -> SpecintStatus {
    guarded(|| write_scalar(out, gamma(x)))
}

/// ψ(x) = Γ'(x)/Γ(x).
#[no_mangle]
pub unsafe extern "C" fn specint_digamma(x: f64, out: *mut f64) -> SpecintStatus {
    guarded(|| write_scalar(out, digamma(x)))
}

/// d/dz [1/Γ(z)] at z = -j, which equals (-1)^j j!.
#[no_mangle]
pub unsafe extern "C" fn specint_recip_gamma_deriv_at_nonpositive(
    j: u32,
    out: *mut f64,
) -> SpecintStatus {
    guarded(|| write_scalar(out, Ok(recip_gamma_deriv_at_nonpositive(j))))
}

/// Upper incomplete Gamma Γ(p, x) at any real order p, x ≥ 0 (x = 0 only
/// for p > 0).
#[no_mangle]
pub unsafe extern "C" fn specint_upper_gamma(
    p: f64,
    x: f64,
    value: *mut f64,
    est_abs_error: *mut f64,
) -> SpecintStatus {
    guarded(|| write_eval(value, est_abs_error, upper_gamma(p, x)))
}

/// Generalized exponential integral Eₙ(x), integer n ≥ 1, x > 0.
#[no_mangle]
pub unsafe extern "C" fn specint_exp_integral_en(
    n: u32,
    x: f64,
    value: *mut f64,
    est_abs_error: *mut f64,
) -> SpecintStatus {
    guarded(|| write_eval(value, est_abs_error, exp_integral_en(n, x)))
}

/// Si(z) = ∫₀^z sin t / t dt, z > 0.
#[no_mangle]
pub unsafe extern "C" fn specint_sine_integral(z: f64, out: *mut f64) -> SpecintStatus {
    guarded(|| write_scalar(out, sine_integral(z)))
}

/// Ci(z) = -∫_z^∞ cos t / t dt, z > 0.
#[no_mangle]
pub unsafe extern "C" fn specint_cosine_integral(z: f64, out: *mut f64) -> SpecintStatus {
    guarded(|| write_scalar(out, cosine_integral(z)))
}

/// si(z) = Si(z) - π/2.
#[no_mangle]
pub unsafe extern "C" fn specint_si_shifted(z: f64, out: *mut f64) -> SpecintStatus {
    guarded(|| write_scalar(out, si_shifted(z)))
}

/// Bessel function of the first kind J_α(z), z > 0.
#[no_mangle]
pub unsafe extern "C" fn specint_bessel_j(
    alpha: f64,
    z: f64,
    value: *mut f64,
    est_abs_error: *mut f64,
) -> SpecintStatus {
    guarded(|| write_eval(value, est_abs_error, bessel_j(Order::real(alpha), z)))
}

/// Struve function H_α(z), z > 0.
#[no_mangle]
pub unsafe extern "C" fn specint_struve_h(
    alpha: f64,
    z: f64,
    value: *mut f64,
    est_abs_error: *mut f64,
) -> SpecintStatus {
    guarded(|| write_eval(value, est_abs_error, struve_h(Order::real(alpha), z)))
}

/// Modified Bessel function of the first kind I_α(z), z > 0.
#[no_mangle]
pub unsafe extern "C" fn specint_bessel_i(
    alpha: f64,
    z: f64,
    value: *mut f64,
    est_abs_error: *mut f64,
) -> SpecintStatus {
    guarded(|| write_eval(value, est_abs_error, bessel_i(alpha, z)))
}

/// Modified Bessel function of the second kind K_α(z), non-integer α, z > 0.
#[no_mangle]
pub unsafe extern "C" fn specint_bessel_k(
    alpha: f64,
    z: f64,
    value: *mut f64,
    est_abs_error: *mut f64,
) -> SpecintStatus {
    guarded(|| write_eval(value, est_abs_error, bessel_k(alpha, z)))
}

/// ∂J_α(z)/∂α at α = n - 1/2, n ≥ 1, z > 0.
#[no_mangle]
pub unsafe extern "C" fn specint_bessel_j_dorder(
    n: u32,
    z: f64,
    value: *mut f64,
    est_abs_error: *mut f64,
) -> SpecintStatus {
    guarded(|| write_eval(value, est_abs_error, bessel_j_dorder(n, z)))
}

/// ∂H_α(z)/∂α at α = 1/2 - n, n ≥ 1, z > 0.
#[no_mangle]
pub unsafe extern "C" fn specint_struve_h_dorder(
    n: u32,
    z: f64,
    value: *mut f64,
    est_abs_error: *mut f64,
) -> SpecintStatus {
    guarded(|| write_eval(value, est_abs_error, struve_h_dorder(n, z)))
}

// ---- integrals -------------------------------------------------------------

/// ∫₀^∞ e^{-Ax² - B/x²} dx = (1/2)√(π/A) e^{-2√(AB)}.
#[no_mangle]
pub unsafe extern "C" fn specint_laplace_integral(
    a_coef: f64,
    b_coef: f64,
    out: *mut f64,
) -> SpecintStatus {
    guarded(|| write_scalar(out, laplace_integral(a_coef, b_coef)))
}

unsafe fn write_quad(
    value: *mut f64,
    est_abs_error: *mut f64,
    r: Result<specint::quadrature::QuadResult, specint::Error>,
) -> SpecintStatus {
    if value.is_null() || est_abs_error.is_null() {
        return SpecintStatus::NullArgument;
    }
    match r {
        Ok(q) => {
            *value = q.value;
            *est_abs_error = q.est_abs_error;
            SpecintStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// ∫₀^∞ e^{ax - b/x} x^{s-3/2} Γ(1-s, x) dx for s > 0, a in (0,1], b > 0.
#[no_mangle]
pub unsafe extern "C" fn specint_lhs_integral(
    s: f64,
    a: f64,
    b: f64,
    value: *mut f64,
    est_abs_error: *mut f64,
) -> SpecintStatus {
    guarded(|| write_quad(value, est_abs_error, lhs_integral(s, a, b, &QuadConfig::default())))
}

/// ∫₀^∞ (1+t²)^{-s} e^{-2√b t} dt.
#[no_mangle]
pub unsafe extern "C" fn specint_rational_exp_integral(
    s: f64,
    b: f64,
    value: *mut f64,
    est_abs_error: *mut f64,
) -> SpecintStatus {
    guarded(|| {
        write_quad(
            value,
            est_abs_error,
            rational_exp_integral(s, b, &QuadConfig::default()),
        )
    })
}

/// ∫_{√(1-a)}^∞ e^{-2√b u} / (cu² + ac - 1) du, without the 2√π prefactor.
#[no_mangle]
pub unsafe extern "C" fn specint_rhs_integral(
    a: f64,
    b: f64,
    c: f64,
    value: *mut f64,
    est_abs_error: *mut f64,
) -> SpecintStatus {
    guarded(|| write_quad(value, est_abs_error, rhs_integral(a, b, c, &QuadConfig::default())))
}

/// Closed form 2 (b/u)^{(A+1)/2} K_{A+1}(2√(bu)), non-integer A.
#[no_mangle]
pub unsafe extern "C" fn specint_bessel_k_representation(
    a_pow: f64,
    b: f64,
    u: f64,
    out: *mut f64,
) -> SpecintStatus {
    guarded(|| write_scalar(out, bessel_k_representation(a_pow, b, u)))
}

// ---- identities ------------------------------------------------------------

/// Convergence classes reported by `specint_classify_convergence`.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpecintConvergence {
    Convergent = 0,
    Divergent = 1,
    OutOfDomain = 2,
}

/// Classify (a, c) for the series identity.
#[no_mangle]
pub unsafe extern "C" fn specint_classify_convergence(
    a: f64,
    c: f64,
    out: *mut SpecintConvergence,
) -> SpecintStatus {
    guarded(|| {
        if out.is_null() {
            return SpecintStatus::NullArgument;
        }
        *out = match classify_convergence(a, c) {
            Convergence::Convergent => SpecintConvergence::Convergent,
            Convergence::Divergent => SpecintConvergence::Divergent,
            Convergence::OutOfDomain => SpecintConvergence::OutOfDomain,
        };
        SpecintStatus::Ok
    })
}

/// The series Σ_{n≥1} c^{-n} ∫₀^∞ e^{ax-b/x} x^{n-3/2} Γ(1-n,x) dx, truncated
/// once the proven geometric tail bound is below `tol`.
#[no_mangle]
pub unsafe extern "C" fn specint_theorem1_series(
    a: f64,
    b: f64,
    c: f64,
    tol: f64,
    value: *mut f64,
    terms_used: *mut u32,
    tail_bound: *mut f64,
) -> SpecintStatus {
    guarded(|| {
        if value.is_null() || terms_used.is_null() || tail_bound.is_null() {
            return SpecintStatus::NullArgument;
        }
        let p = match Params::series_domain(a, b, c) {
            Ok(p) => p,
            Err(e) => return status_of(&e),
        };
        match theorem1_lhs_series(&p, tol, &QuadConfig::default()) {
            Ok(s) => {
                *value = s.value;
                *terms_used = s.terms_used;
                *tail_bound = s.tail_bound;
                SpecintStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// √(π/(c(c-1))) [2 sin(ℓ) Ci(ℓ) + cos(ℓ)(π - 2 Si(ℓ))], ℓ = 2√(b(c-1)/c).
#[no_mangle]
pub unsafe extern "C" fn specint_theorem1_closed_form(
    b: f64,
    c: f64,
    out: *mut f64,
) -> SpecintStatus {
    guarded(|| write_scalar(out, theorem1_closed_form_a1(b, c)))
}

/// Σ_{n≥1} (bc)^n/((n-1)! 2^n) (J'_{n-1/2}(b) - (-1)^n H'_{1/2-n}(b)), the
/// derivatives taken in the order.
#[no_mangle]
pub unsafe extern "C" fn specint_theorem2_series(
    b: f64,
    c: f64,
    tol: f64,
    value: *mut f64,
    terms_used: *mut u32,
    tail_bound: *mut f64,
) -> SpecintStatus {
    guarded(|| {
        if value.is_null() || terms_used.is_null() || tail_bound.is_null() {
            return SpecintStatus::NullArgument;
        }
        match theorem2_lhs_series(b, c, tol) {
            Ok(s) => {
                *value = s.value;
                *terms_used = s.terms_used;
                *tail_bound = s.tail_bound;
                SpecintStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// (2c/d)√(b/2π) (sin(bd) Ci(bd) - cos(bd) Si(bd)) with d = √(1-c).
#[no_mangle]
pub unsafe extern "C" fn specint_theorem2_closed_form(
    b: f64,
    c: f64,
    out: *mut f64,
) -> SpecintStatus {
    guarded(|| write_scalar(out, theorem2_closed_form(b, c)))
}

/// Density of the normal variance mixture √W·Z with Beta(1, λ) mixing.
#[no_mangle]
pub unsafe extern "C" fn specint_mixture_density(
    x: f64,
    lambda: f64,
    out: *mut f64,
) -> SpecintStatus {
    guarded(|| write_scalar(out, mixture_density(x, lambda)))
}

/// Conditional kernel h(u) = (1-2au)^{-1/2} exp(-2√((1/2-au) b/u)).
#[no_mangle]
pub unsafe extern "C" fn specint_conditional_kernel_h(
    u: f64,
    a: f64,
    b: f64,
    out: *mut f64,
) -> SpecintStatus {
    guarded(|| write_scalar(out, conditional_kernel_h(u, a, b)))
}

// ---- Monte Carlo -----------------------------------------------------------

/// Sample mean and standard error of (cξ²+ac-1)^{-1} 1{ξ ≥ √(1-a)} over
/// n ≥ 1000 draws of ξ ~ Exp(2√b), from the given seed and stream.
#[no_mangle]
pub unsafe extern "C" fn specint_mc_exponential_expectation(
    a: f64,
    b: f64,
    c: f64,
    n: u64,
    seed: u64,
    stream: u64,
    mean: *mut f64,
    std_error: *mut f64,
) -> SpecintStatus {
    guarded(|| {
        if mean.is_null() || std_error.is_null() {
            return SpecintStatus::NullArgument;
        }
        match mc_exponential_expectation(a, b, c, n, Seed::new(seed), stream) {
            Ok(est) => {
                *mean = est.mean;
                *std_error = est.std_error;
                SpecintStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Sample mean and standard error of exp(aX²/2 - 2b/X²) over the mixture X.
#[no_mangle]
pub unsafe extern "C" fn specint_mc_mixture_expectation(
    a: f64,
    b: f64,
    lambda: f64,
    n: u64,
    seed: u64,
    stream: u64,
    mean: *mut f64,
    std_error: *mut f64,
) -> SpecintStatus {
    guarded(|| {
        if mean.is_null() || std_error.is_null() {
            return SpecintStatus::NullArgument;
        }
        let spec = match MixtureSpec::new(lambda) {
            Ok(s) => s,
            Err(e) => return status_of(&e),
        };
        match mc_mixture_expectation(a, b, spec, n, Seed::new(seed), stream) {
            Ok(est) => {
                *mean = est.mean;
                *std_error = est.std_error;
                SpecintStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

// ---- verification suite (opaque handle) -------------------------------------

/// A finished verification run; query with the `specint_suite_*` functions
/// and release with `specint_suite_free`.
pub struct SpecintSuite {
    reports: Vec<VerificationReport>,
}

unsafe fn run_to_handle(cfg: &SuiteConfig, out: *mut *mut SpecintSuite) -> SpecintStatus {
    match run_suite(cfg) {
        Ok(reports) => {
            *out = Box::into_raw(Box::new(SpecintSuite { reports }));
            SpecintStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Run the full built-in verification grid with the given seed and
/// Monte-Carlo sample count (0 keeps the grid's default).
#[no_mangle]
pub unsafe extern "C" fn specint_suite_run_default(
    seed: u64,
    mc_samples: u64,
    out: *mut *mut SpecintSuite,
) -> SpecintStatus {
    guarded(|| {
        if out.is_null() {
            return SpecintStatus::NullArgument;
        }
        let mut cfg: SuiteConfig = match serde_json::from_str(specint::cli::DEFAULT_GRID_JSON) {
            Ok(c) => c,
            Err(_) => return SpecintStatus::ConfigError,
        };
        cfg.seed = Seed::new(seed);
        if mc_samples > 0 {
            cfg.mc_samples = mc_samples;
        }
        run_to_handle(&cfg, out)
    })
}

/// Run a verification suite described by a JSON configuration (the same
/// schema the CLI's --config flag accepts).
#[no_mangle]
pub unsafe extern "C" fn specint_suite_run_json(
    config_json: *const c_char,
    out: *mut *mut SpecintSuite,
) -> SpecintStatus {
    guarded(|| {
        if config_json.is_null() || out.is_null() {
            return SpecintStatus::NullArgument;
        }
        let text = match CStr::from_ptr(config_json).to_str() {
            Ok(t) => t,
            Err(_) => return SpecintStatus::BadInput,
        };
        let cfg: SuiteConfig = match serde_json::from_str(text) {
            Ok(c) => c,
            Err(_) => return SpecintStatus::BadInput,
        };
        run_to_handle(&cfg, out)
    })
}

/// Number of reports in the suite.
#[no_mangle]
pub unsafe extern "C" fn specint_suite_len(suite: *const SpecintSuite) -> usize {
    if suite.is_null() {
        return 0;
    }
    (*suite).reports.len()
}

/// Whether every report in the suite passed.
#[no_mangle]
pub unsafe extern "C" fn specint_suite_all_passed(suite: *const SpecintSuite) -> bool {
    if suite.is_null() {
        return false;
    }
    (*suite).reports.iter().all(|r| r.passed)
}

/// Whether the report at `index` passed; false for out-of-range indices.
#[no_mangle]
pub unsafe extern "C" fn specint_suite_report_passed(
    suite: *const SpecintSuite,
    index: usize,
) -> bool {
    if suite.is_null() {
        return false;
    }
    (&(*suite).reports).get(index).is_some_and(|r| r.passed)
}

/// The whole suite serialized as a JSON array (the CLI's --format json
/// schema). The returned string must be freed with `specint_string_free`.
#[no_mangle]
pub unsafe extern "C" fn specint_suite_report_json(
    suite: *const SpecintSuite,
    out: *mut *mut c_char,
) -> SpecintStatus {
    guarded(|| {
        if suite.is_null() || out.is_null() {
            return SpecintStatus::NullArgument;
        }
        let json = reports_to_json(&(*suite).reports);
        match CString::new(json) {
            Ok(s) => {
                *out = s.into_raw();
                SpecintStatus::Ok
            }
            Err(_) => SpecintStatus::BadInput,
        }
    })
}

/// Release a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn specint_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Release a suite handle.
#[no_mangle]
pub unsafe extern "C" fn specint_suite_free(suite: *mut SpecintSuite) {
    if !suite.is_null() {
        drop(Box::from_raw(suite));
    }
}
