#ifndef SPECINT_H
#define SPECINT_H

/* This file is generated by cbindgen from specint-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Status codes returned by every function in this ABI.
 */
typedef enum SpecintStatus {
  SPECINT_STATUS_OK = 0,
  /*
   Argument outside the mathematical domain of the operation.
   */
  SPECINT_STATUS_DOMAIN_ERROR = 1,
  /*
   Argument at (or within guard distance of) a pole.
   */
  SPECINT_STATUS_POLE_ERROR = 2,
  /*
   The divergent parameter pair (a, c) = (1, 1).
   */
  SPECINT_STATUS_DIVERGENT = 3,
  /*
   Quadrature or series failed to meet its tolerance.
   */
  SPECINT_STATUS_NO_CONVERGENCE = 4,
  /*
   Invalid run configuration.
   */
  SPECINT_STATUS_CONFIG_ERROR = 5,
  /*
   A required pointer argument was null.
   */
  SPECINT_STATUS_NULL_ARGUMENT = 6,
  /*
   Malformed UTF-8 or JSON input.
   */
  SPECINT_STATUS_BAD_INPUT = 7,
  /*
   A panic was caught at the ABI boundary.
   */
  SPECINT_STATUS_INTERNAL_PANIC = 8,
} SpecintStatus;

/*
 Convergence classes reported by `specint_classify_convergence`.
 */
typedef enum SpecintConvergence {
  SPECINT_CONVERGENCE_CONVERGENT = 0,
  SPECINT_CONVERGENCE_DIVERGENT = 1,
  SPECINT_CONVERGENCE_OUT_OF_DOMAIN = 2,
} SpecintConvergence;

/*
 A finished verification run; query with the `specint_suite_*` functions
 and release with `specint_suite_free`.
 */
typedef struct SpecintSuite SpecintSuite;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Γ(x) for x not a nonpositive integer.
 */
enum SpecintStatus specint_gamma(double x, double *out);

/*
 ψ(x) = Γ'(x)/Γ(x).
 */
enum SpecintStatus specint_digamma(double x, double *out);

/*
 d/dz [1/Γ(z)] at z = -j, which equals (-1)^j j!.
 */
enum SpecintStatus specint_recip_gamma_deriv_at_nonpositive(uint32_t j, double *out);

/*
 Upper incomplete Gamma Γ(p, x) at any real order p, x ≥ 0 (x = 0 only
 for p > 0).
 */
enum SpecintStatus specint_upper_gamma(double p, double x, double *value, double *est_abs_error);

/*
 Generalized exponential integral Eₙ(x), integer n ≥ 1, x > 0.
 */
enum SpecintStatus specint_exp_integral_en(uint32_t n,
                                           double x,
                                           double *value,
                                           double *est_abs_error);

/*
 Si(z) = ∫₀^z sin t / t dt, z > 0.
 */
enum SpecintStatus specint_sine_integral(double z, double *out);

/*
 Ci(z) = -∫_z^∞ cos t / t dt, z > 0.
 */
enum SpecintStatus specint_cosine_integral(double z, double *out);

/*
 si(z) = Si(z) - π/2.
 */
enum SpecintStatus specint_si_shifted(double z, double *out);

/*
 Bessel function of the first kind J_α(z), z > 0.
 */
enum SpecintStatus specint_bessel_j(double alpha, double z, double *value, double *est_abs_error);

/*
 Struve function H_α(z), z > 0.
 */
enum SpecintStatus specint_struve_h(double alpha, double z, double *value, double *est_abs_error);

/*
 Modified Bessel function of the first kind I_α(z), z > 0.
 */
enum SpecintStatus specint_bessel_i(double alpha, double z, double *value, double *est_abs_error);

/*
 Modified Bessel function of the second kind K_α(z), non-integer α, z > 0.
 */
enum SpecintStatus specint_bessel_k(double alpha, double z, double *value, double *est_abs_error);

/*
 ∂J_α(z)/∂α at α = n - 1/2, n ≥ 1, z > 0.
 */
enum SpecintStatus specint_bessel_j_dorder(uint32_t n,
                                           double z,
                                           double *value,
                                           double *est_abs_error);

/*
 ∂H_α(z)/∂α at α = 1/2 - n, n ≥ 1, z > 0.
 */
enum SpecintStatus specint_struve_h_dorder(uint32_t n,
                                           double z,
                                           double *value,
                                           double *est_abs_error);

/*
 ∫₀^∞ e^{-Ax² - B/x²} dx = (1/2)√(π/A) e^{-2√(AB)}.
 */
enum SpecintStatus specint_laplace_integral(double a_coef, double b_coef, double *out);

/*
 ∫₀^∞ e^{ax - b/x} x^{s-3/2} Γ(1-s, x) dx for s > 0, a in (0,1], b > 0.
 */
enum SpecintStatus specint_lhs_integral(double s,
                                        double a,
                                        double b,
                                        double *value,
                                        double *est_abs_error);

/*
 ∫₀^∞ (1+t²)^{-s} e^{-2√b t} dt.
 */
enum SpecintStatus specint_rational_exp_integral(double s,
                                                 double b,
                                                 double *value,
                                                 double *est_abs_error);

/*
 ∫_{√(1-a)}^∞ e^{-2√b u} / (cu² + ac - 1) du, without the 2√π prefactor.
 */
enum SpecintStatus specint_rhs_integral(double a,
                                        double b,
                                        double c,
                                        double *value,
                                        double *est_abs_error);

/*
 Closed form 2 (b/u)^{(A+1)/2} K_{A+1}(2√(bu)), non-integer A.
 */
enum SpecintStatus specint_bessel_k_representation(double a_pow, double b, double u, double *out);

/*
 Classify (a, c) for the series identity.
 */
enum SpecintStatus specint_classify_convergence(double a, double c, enum SpecintConvergence *out);

/*
 The series Σ_{n≥1} c^{-n} ∫₀^∞ e^{ax-b/x} x^{n-3/2} Γ(1-n,x) dx, truncated
 once the proven geometric tail bound is below `tol`.
 */
enum SpecintStatus specint_theorem1_series(double a,
                                           double b,
                                           double c,
                                           double tol,
                                           double *value,
                                           uint32_t *terms_used,
                                           double *tail_bound);

/*
 √(π/(c(c-1))) [2 sin(ℓ) Ci(ℓ) + cos(ℓ)(π - 2 Si(ℓ))], ℓ = 2√(b(c-1)/c).
 */
enum SpecintStatus specint_theorem1_closed_form(double b, double c, double *out);

/*
 Σ_{n≥1} (bc)^n/((n-1)! 2^n) (J'_{n-1/2}(b) - (-1)^n H'_{1/2-n}(b)), the
 derivatives taken in the order.
 */
enum SpecintStatus specint_theorem2_series(double b,
                                           double c,
                                           double tol,
                                           double *value,
                                           uint32_t *terms_used,
                                           double *tail_bound);

/*
 (2c/d)√(b/2π) (sin(bd) Ci(bd) - cos(bd) Si(bd)) with d = √(1-c).
 */
enum SpecintStatus specint_theorem2_closed_form(double b, double c, double *out);

/*
 Density of the normal variance mixture √W·Z with Beta(1, λ) mixing.
 */
enum SpecintStatus specint_mixture_density(double x, double lambda, double *out);

/*
 Conditional kernel h(u) = (1-2au)^{-1/2} exp(-2√((1/2-au) b/u)).
 */
enum SpecintStatus specint_conditional_kernel_h(double u, double a, double b, double *out);

/*
 Sample mean and standard error of (cξ²+ac-1)^{-1} 1{ξ ≥ √(1-a)} over
 n ≥ 1000 draws of ξ ~ Exp(2√b), from the given seed and stream.
 */
enum SpecintStatus specint_mc_exponential_expectation(double a,
                                                      double b,
                                                      double c,
                                                      uint64_t n,
                                                      uint64_t seed,
                                                      uint64_t stream,
                                                      double *mean,
                                                      double *std_error);

/*
 Sample mean and standard error of exp(aX²/2 - 2b/X²) over the mixture X.
 */
enum SpecintStatus specint_mc_mixture_expectation(double a,
                                                  double b,
                                                  double lambda,
                                                  uint64_t n,
                                                  uint64_t seed,
                                                  uint64_t stream,
                                                  double *mean,
                                                  double *std_error);

/*
 Run the full built-in verification grid with the given seed and
 Monte-Carlo sample count (0 keeps the grid's default).
 */
enum SpecintStatus specint_suite_run_default(uint64_t seed,
                                             uint64_t mc_samples,
                                             struct SpecintSuite **out);

/*
 Run a verification suite described by a JSON configuration (the same
 schema the CLI's --config flag accepts).
 */
enum SpecintStatus specint_suite_run_json(const char *config_json, struct SpecintSuite **out);

/*
 Number of reports in the suite.
 */
size_t specint_suite_len(const struct SpecintSuite *suite);

/*
 Whether every report in the suite passed.
 */
bool specint_suite_all_passed(const struct SpecintSuite *suite);

/*
 Whether the report at `index` passed; false for out-of-range indices.
 */
bool specint_suite_report_passed(const struct SpecintSuite *suite, size_t index);

/*
 The whole suite serialized as a JSON array (the CLI's --format json
 schema). The returned string must be freed with `specint_string_free`.
 */
enum SpecintStatus specint_suite_report_json(const struct SpecintSuite *suite, char **out);

/*
 Release a string returned by this library.
 */
void specint_string_free(char *s);

/*
 Release a suite handle.
 */
void specint_suite_free(struct SpecintSuite *suite);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SPECINT_H */
