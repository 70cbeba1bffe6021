//! Numerical verification library for a family of identities tying series
//! of semi-infinite integrals of upper incomplete Gamma functions to
//! exponential-integral closed forms, Bessel/Struve order-derivatives and
//! a probabilistic (normal variance mixture) construction.
//!
//! The crate is organized so that every identity can be checked by
//! genuinely independent computation paths:
//!
//! * [`specfun`] — self-contained evaluators (Γ, Γ(p,x), Eₙ, Si/Ci, J, H,
//!   I, K, and order-derivatives of J and H at half-integer orders);
//! * [`quadrature`] — double-exponential semi-infinite integration tuned
//!   to the three integrand families that appear here;
//! * [`sampling`] — reproducible, stream-splittable Monte-Carlo estimators
//!   for the two expectations of the probabilistic route;
//! * [`identities`] — the identity engines: each named equation evaluated
//!   on both sides and reported with composed error budgets;
//! * [`cli`] — the `specint` command-line front end (`verify`, `table`,
//!   `sample`).

pub mod cli;
pub mod error;
pub mod identities;
pub mod quadrature;
pub mod sampling;
pub mod specfun;

pub use error::{Error, Result};
