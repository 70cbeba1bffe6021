//! Self-contained special-function evaluators: Γ, ln Γ, ψ, Γ(p,x), Eₙ,
//! Si/Ci/si, J_α, H_α, I_α, K_α, and the order-derivatives ∂J/∂α, ∂H/∂α
//! at half-integer orders.
//!
//! Everything here is a pure function of its arguments and safe to call
//! from any number of threads.

mod bessel;
mod dorder;
pub mod gamma;
mod incgamma;
mod sici;

pub use bessel::{bessel_i, bessel_j, bessel_k, struve_h, HalfInteger, Order};
pub use dorder::{bessel_j_dorder, struve_h_dorder};
pub use gamma::{
    cos_pi, digamma, gamma, gamma_sign, ln_abs_gamma, ln_gamma,
    recip_gamma_deriv_at_nonpositive, sin_pi,
};
pub use incgamma::{e_gen, exp_integral_en, upper_gamma};
pub use sici::{cosine_integral, si_shifted, sici, sine_integral};

pub(crate) use incgamma::e_gen_scaled;

/// A computed value together with a truncation-based error estimate.
///
/// `est_abs_error` is an upper-bound intent from series/fraction truncation
/// and rounding floors, not a proven bound; it is finite whenever `value` is.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EvalResult {
    pub value: f64,
    pub est_abs_error: f64,
}
