//! Reproducible sampling for the probabilistic route: Beta(1, λ) mixing,
//! the normal variance mixture X = √W·Z, exponential draws, and the two
//! Monte-Carlo estimators checked against quadrature.
//!
//! Randomness comes from ChaCha8 with explicit stream splitting, so a grid
//! of estimates can fan out deterministically from one seed: same seed and
//! stream ⇒ bit-identical sample sequence, in-process and across processes.
//! Normals are Box–Muller on open-interval uniforms; no rejection loops, so
//! the draw count per sample is fixed.

use crate::error::{Error, Result};
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Seed for a whole verification run; sub-streams split off it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Seed {
    pub value: u64,
}

impl Seed {
    pub fn new(value: u64) -> Self {
        Seed { value }
    }
}

impl std::str::FromStr for Seed {
    type Err = std::num::ParseIntError;

    /// Decimal or 0x-prefixed hex.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let value = if let Some(hex) = s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
            u64::from_str_radix(hex, 16)?
        } else {
            s.parse()?
        };
        Ok(Seed { value })
    }
}

impl<'de> serde::Deserialize<'de> for Seed {
    /// Accepts a plain integer or a decimal / 0x-hex string.
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl serde::de::Visitor<'_> for V {
            type Value = Seed;
            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                f.write_str("an unsigned integer or a decimal/0x-hex string")
            }
            fn visit_u64<E: serde::de::Error>(self, v: u64) -> std::result::Result<Seed, E> {
                Ok(Seed::new(v))
            }
            fn visit_str<E: serde::de::Error>(self, v: &str) -> std::result::Result<Seed, E> {
                v.parse().map_err(E::custom)
            }
        }
        d.deserialize_any(V)
    }
}

/// Beta(1, λ) mixing law; W has density λ w^{λ-1} on (0, 1).
#[derive(Clone, Copy, Debug)]
pub struct MixtureSpec {
    pub lambda: f64,
}

impl MixtureSpec {
    pub fn new(lambda: f64) -> Result<Self> {
        if !(lambda > 0.0) || !lambda.is_finite() {
            return Err(Error::Domain(format!("lambda must be > 0, got {lambda}")));
        }
        Ok(MixtureSpec { lambda })
    }
}

/// One independent sample stream: a (seed, stream) pair of a splittable
/// generator. Value type; move freely between threads, never share mutably.
#[derive(Clone, Debug)]
pub struct SampleStream {
    rng: ChaCha8Rng,
    cached_normal: Option<f64>,
}

impl SampleStream {
    pub fn new(seed: Seed, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.value);
        rng.set_stream(stream);
        SampleStream {
            rng,
            cached_normal: None,
        }
    }

    /// Uniform on the open interval (0, 1): (k + 1/2) / 2^53.
    pub fn uniform_open01(&mut self) -> f64 {
        ((self.rng.next_u64() >> 11) as f64 + 0.5) * (1.0 / 9007199254740992.0)
    }

    /// Standard normal via Box–Muller; the second value of each pair is
    /// cached so the uniform stream advances two draws per pair.
    pub fn standard_normal(&mut self) -> f64 {
        if let Some(z) = self.cached_normal.take() {
            return z;
        }
        let u1 = self.uniform_open01();
        let u2 = self.uniform_open01();
        let r = (-2.0 * u1.ln()).sqrt();
        let theta = 2.0 * std::f64::consts::PI * u2;
        self.cached_normal = Some(r * theta.sin());
        r * theta.cos()
    }

    /// W ~ Beta(1, λ) by inverse CDF: W = U^{1/λ}.
    pub fn beta_1_lambda(&mut self, spec: MixtureSpec) -> f64 {
        self.uniform_open01().powf(1.0 / spec.lambda)
    }

    /// X = √W · Z with independent W ~ Beta(1, λ) and standard normal Z.
    pub fn mixture_x(&mut self, spec: MixtureSpec) -> f64 {
        let w = self.beta_1_lambda(spec);
        w.sqrt() * self.standard_normal()
    }

    /// Exponential with the given rate, by inverse CDF.
    pub fn exponential(&mut self, rate: f64) -> f64 {
        -self.uniform_open01().ln() / rate
    }
}

/// Monte-Carlo estimate: sample mean, its standard error, and provenance.
#[derive(Clone, Copy, Debug)]
pub struct McEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub n_samples: u64,
    pub seed: Seed,
}

/// Welford accumulation of mean and standard error over a sample stream.
fn mc_mean<F: FnMut(&mut SampleStream) -> f64>(
    mut draw: F,
    n: u64,
    seed: Seed,
    stream: u64,
) -> McEstimate {
    let mut s = SampleStream::new(seed, stream);
    let mut mean = 0.0_f64;
    let mut m2 = 0.0_f64;
    for i in 1..=n {
        let x = draw(&mut s);
        let delta = x - mean;
        mean += delta / i as f64;
        m2 += delta * (x - mean);
    }
    let var = m2 / (n - 1) as f64;
    McEstimate {
        mean,
        std_error: (var / n as f64).sqrt(),
        n_samples: n,
        seed,
    }
}

const MIN_SAMPLES: u64 = 1000;

fn check_n(n: u64) -> Result<()> {
    if n < MIN_SAMPLES {
        return Err(Error::Config(format!(
            "at least {MIN_SAMPLES} samples required, got {n}"
        )));
    }
    Ok(())
}

/// Sample mean of exp(a X²/2 − 2b/X²) over draws of the mixture X.
///
/// The exponent is at most a X²/2 with X² ≤ Z², so every sample value is
/// finite; the value at X = 0 is taken as 0 (the open-interval uniforms
/// never actually produce it).
pub fn mc_mixture_expectation(
    a: f64,
    b: f64,
    spec: MixtureSpec,
    n: u64,
    seed: Seed,
    stream: u64,
) -> Result<McEstimate> {
    if !(a > 0.0 && a <= 1.0) || !(b > 0.0) {
        return Err(Error::Domain(format!(
            "requires a in (0,1] and b > 0, got a = {a}, b = {b}"
        )));
    }
    check_n(n)?;
    Ok(mc_mean(
        |s| {
            let x = s.mixture_x(spec);
            let x2 = x * x;
            if x2 == 0.0 {
                0.0
            } else {
                (a * x2 / 2.0 - 2.0 * b / x2).exp()
            }
        },
        n,
        seed,
        stream,
    ))
}

/// Sample mean of (cξ² + ac − 1)^{-1} 1{ξ ≥ √(1-a)} over ξ ~ Exp(2√b).
pub fn mc_exponential_expectation(
    a: f64,
    b: f64,
    c: f64,
    n: u64,
    seed: Seed,
    stream: u64,
) -> Result<McEstimate> {
    if !(a > 0.0 && a <= 1.0) || !(b > 0.0) {
        return Err(Error::Domain(format!(
            "requires a in (0,1] and b > 0, got a = {a}, b = {b}"
        )));
    }
    if a == 1.0 && c == 1.0 {
        return Err(Error::DivergentPair);
    }
    if a * c < 1.0 - 1e-12 {
        return Err(Error::Domain(format!(
            "requires c >= 1/a, got a = {a}, c = {c}"
        )));
    }
    check_n(n)?;
    let rate = 2.0 * b.sqrt();
    let threshold = (1.0 - a).sqrt();
    let shift = a * c - 1.0;
    Ok(mc_mean(
        |s| {
            let xi = s.exponential(rate);
            if xi >= threshold {
                1.0 / (c * xi * xi + shift)
            } else {
                0.0
            }
        },
        n,
        seed,
        stream,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn beta_uniform_case_mean() {
        // Beta(1,1) is uniform: mean 1/2 within 4 standard errors
        let spec = MixtureSpec::new(1.0).unwrap();
        let est = mc_mean(|s| s.beta_1_lambda(spec), 1_000_000, Seed::new(7), 0);
        assert!((est.mean - 0.5).abs() < 4.0 * est.std_error);
    }

    #[test]
    fn beta_mean_lambda_two() {
        // E[Beta(1, λ)] = λ/(λ+1)
        let spec = MixtureSpec::new(2.0).unwrap();
        let est = mc_mean(|s| s.beta_1_lambda(spec), 1_000_000, Seed::new(8), 0);
        assert!((est.mean - 2.0 / 3.0).abs() < 4.0 * est.std_error);
    }

    #[test]
    fn beta_samples_in_open_interval() {
        let spec = MixtureSpec::new(0.5).unwrap();
        let mut s = SampleStream::new(Seed::new(9), 0);
        for _ in 0..10_000 {
            let w = s.beta_1_lambda(spec);
            assert!(w > 0.0 && w < 1.0);
        }
    }

    #[test]
    fn mixture_x_is_centred_with_second_moment() {
        // E[X] = 0 and E[X²] = E[W] = λ/(λ+1)
        let spec = MixtureSpec::new(1.5).unwrap();
        let est = mc_mean(|s| s.mixture_x(spec), 1_000_000, Seed::new(10), 0);
        assert!(est.mean.abs() < 4.0 * est.std_error);
        let est2 = mc_mean(
            |s| {
                let x = s.mixture_x(spec);
                x * x
            },
            1_000_000,
            Seed::new(10),
            1,
        );
        assert!((est2.mean - 1.5 / 2.5).abs() < 4.0 * est2.std_error);
    }

    #[test]
    fn exponential_mean_and_tail() {
        let est = mc_mean(|s| s.exponential(2.0), 1_000_000, Seed::new(11), 0);
        assert!((est.mean - 0.5).abs() < 4.0 * est.std_error);
        let tail = mc_mean(
            |s| {
                if s.exponential(2.0) >= 1.0 {
                    1.0
                } else {
                    0.0
                }
            },
            1_000_000,
            Seed::new(11),
            1,
        );
        assert!((tail.mean - (-2.0_f64).exp()).abs() < 4.0 * tail.std_error);
    }

    #[test]
    fn exponential_samples_nonnegative() {
        let mut s = SampleStream::new(Seed::new(12), 0);
        for _ in 0..10_000 {
            assert!(s.exponential(2.0) >= 0.0);
        }
    }

    #[test]
    fn estimates_are_deterministic() {
        let spec = MixtureSpec::new(1.5).unwrap();
        let a = mc_mixture_expectation(0.5, 1.0, spec, 10_000, Seed::new(42), 3).unwrap();
        let b = mc_mixture_expectation(0.5, 1.0, spec, 10_000, Seed::new(42), 3).unwrap();
        assert_eq!(a.mean.to_bits(), b.mean.to_bits());
        assert_eq!(a.std_error.to_bits(), b.std_error.to_bits());
    }

    #[test]
    fn mixture_values_bounded_for_large_b() {
        // exponent ≤ a/2 · Z² only through X² ≤ Z²; with b = 25 the estimate
        // collapses towards 0 and every sample stays under e^{1/2} for a ≤ 1
        // paired with the -2b/X² penalty dominating small X
        let spec = MixtureSpec::new(1.0).unwrap();
        let est = mc_mixture_expectation(0.5, 25.0, spec, 100_000, Seed::new(13), 0).unwrap();
        assert!(est.mean >= 0.0 && est.mean < 1e-3);
    }

    #[test]
    fn divergent_pair_and_domain_errors() {
        assert!(matches!(
            mc_exponential_expectation(1.0, 1.0, 1.0, 10_000, Seed::new(1), 0),
            Err(Error::DivergentPair)
        ));
        assert!(mc_exponential_expectation(0.5, 1.0, 1.5, 10_000, Seed::new(1), 0).is_err());
        assert!(mc_exponential_expectation(0.5, 1.0, 2.0, 10, Seed::new(1), 0).is_err());
        assert!(MixtureSpec::new(-1.0).is_err());
    }

    #[test]
    fn seed_parses_decimal_and_hex() {
        assert_eq!("42".parse::<Seed>().unwrap(), Seed::new(42));
        assert_eq!("0x2a".parse::<Seed>().unwrap(), Seed::new(42));
        assert_eq!("0X2A".parse::<Seed>().unwrap(), Seed::new(42));
        assert!("nope".parse::<Seed>().is_err());
    }
}
