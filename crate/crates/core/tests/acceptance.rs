//! Acceptance suite: one test per criterion, each printing a pass line.
//! Run with `cargo test --test acceptance -- --nocapture` to see them.

use specint::identities::tolerances::{MC_SIGMA, SERIES_TOL_DEFAULT};
use specint::identities::{
    bessel_term_identity, classify_convergence, divergence_witness, expectation_via_conditioning,
    expectation_via_density, general_s_identity, jcos_identity, mixture_density,
    theorem1_closed_form_a1, theorem1_lhs_series, theorem1_rhs_expectation, theorem2_closed_form,
    theorem2_lhs_series, Convergence, Params,
};
use specint::quadrature::{rhs_integral, QuadConfig};
use specint::sampling::{mc_mixture_expectation, MixtureSpec, Seed};
use specint::specfun::{
    bessel_j, bessel_j_dorder, bessel_k, exp_integral_en, sine_integral, si_shifted, struve_h,
    struve_h_dorder, upper_gamma, Order,
};
use std::f64::consts::{FRAC_PI_2, PI};
use std::process::Command;
use std::time::Instant;

fn pass(line: &str) {
    println!("PASS {line}");
}

/// Richardson-extrapolated central difference in the order, step 1e-5.
fn fd_in_order(f: impl Fn(f64) -> f64, alpha: f64) -> f64 {
    let h = 1e-5;
    let d = |hh: f64| (f(alpha + hh) - f(alpha - hh)) / (2.0 * hh);
    (4.0 * d(h / 2.0) - d(h)) / 3.0
}

#[test]
fn criterion_01_series_vs_integral_grid() {
    let start = Instant::now();
    let cfg = QuadConfig::default();
    let mut points = 0;
    for &a in &[0.25, 0.5, 0.75, 1.0] {
        for &b in &[0.25, 1.0, 4.0] {
            for &c in &[1.0 / a, 1.0 / a + 0.5, 2.0 / a, 10.0] {
                if a == 1.0 && c == 1.0 {
                    continue;
                }
                let p = Params::series_domain(a, b, c).unwrap();
                let series = theorem1_lhs_series(&p, SERIES_TOL_DEFAULT, &cfg).unwrap();
                let integral = rhs_integral(a, b, c, &cfg).unwrap();
                let rhs = 2.0 * PI.sqrt() * integral.value;
                let budget = series.tail_bound
                    + series.est_quad_error
                    + 2.0 * PI.sqrt() * integral.est_abs_error;
                let value_scale = series.value.abs().max(rhs.abs());
                assert!(
                    (series.value - rhs).abs() <= 1e-7 * (1.0 + value_scale) + budget,
                    "a={a} b={b} c={c}: series {} vs integral {}",
                    series.value,
                    rhs
                );
                points += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs_f64() <= 120.0,
        "criterion 1 exceeded its runtime budget: {elapsed:?}"
    );
    pass(&format!(
        "criterion 1: series = 2*sqrt(pi)*integral on {points} grid points (1e-7 + budgets) in {:.2}s",
        elapsed.as_secs_f64()
    ));
}

#[test]
fn criterion_02_closed_form_vs_integral() {
    let cfg = QuadConfig::default();
    for &b in &[0.25, 1.0, 4.0] {
        for &c in &[1.25, 2.0, 5.0] {
            let closed = theorem1_closed_form_a1(b, c).unwrap();
            let integral = rhs_integral(1.0, b, c, &cfg).unwrap();
            let rhs = 2.0 * PI.sqrt() * integral.value;
            let rel = (closed - rhs).abs() / rhs.abs();
            assert!(rel <= 1e-9, "b={b} c={c}: rel err {rel:e}");
        }
    }
    pass("criterion 2: Si/Ci closed form = 2*sqrt(pi)*integral at rel 1e-9 on the 3x3 grid");
}

#[test]
fn criterion_03_divergent_pair() {
    let cfg = QuadConfig::default();
    assert_eq!(classify_convergence(1.0, 1.0), Convergence::Divergent);
    let witness = divergence_witness(1.0, 10.0, 200, &cfg).unwrap();
    assert!(
        witness.exceeded_at.is_some(),
        "partial sums failed to exceed 10x the first term within 200 terms"
    );
    assert!(matches!(
        rhs_integral(1.0, 1.0, 1.0, &cfg),
        Err(specint::Error::DivergentPair)
    ));
    pass(&format!(
        "criterion 3: (1,1) classified divergent, partial sums exceed 10x first term at N={}, integral rejects the pair",
        witness.exceeded_at.unwrap()
    ));
}

#[test]
fn criterion_04_per_order_identity_and_derivative_oracle() {
    let cfg = QuadConfig::default();
    for n in 1..=8u32 {
        for &b in &[0.5, 1.0, 2.0, 4.0] {
            let r = bessel_term_identity(n, b, &cfg).unwrap();
            assert!(r.passed && r.rel_err <= 1e-6, "n={n} b={b}: {r:?}");

            // the order-derivative evaluators against the finite-difference
            // oracle on the same grid
            let z = 2.0 * b.sqrt();
            let jd = bessel_j_dorder(n, z).unwrap().value;
            let jd_fd = fd_in_order(
                |alpha| bessel_j(Order::real(alpha), z).unwrap().value,
                f64::from(n) - 0.5,
            );
            assert!(
                (jd - jd_fd).abs() <= 1e-6 * jd_fd.abs().max(jd.abs()),
                "dJ/dorder n={n} z={z}: {jd} vs fd {jd_fd}"
            );
            let hd = struve_h_dorder(n, z).unwrap().value;
            let hd_fd = fd_in_order(
                |alpha| struve_h(Order::real(alpha), z).unwrap().value,
                0.5 - f64::from(n),
            );
            assert!(
                (hd - hd_fd).abs() <= 1e-6 * hd_fd.abs().max(hd.abs()),
                "dH/dorder n={n} z={z}: {hd} vs fd {hd_fd}"
            );
        }
    }
    pass("criterion 4: per-order limit identity at rel 1e-6 for n=1..8, b in {0.5,1,2,4}; order-derivatives match the finite-difference oracle");
}

#[test]
fn criterion_05_general_order_identity() {
    let cfg = QuadConfig::default();
    for &s in &[0.3, 1.7, 2.2, 3.9] {
        for &b in &[0.5, 2.0] {
            let r = general_s_identity(s, b, &cfg).unwrap();
            assert!(r.passed && r.rel_err <= 1e-7, "s={s} b={b}: {r:?}");
        }
    }
    pass("criterion 5: non-integer-order identity at rel 1e-7 for s in {0.3,1.7,2.2,3.9}, b in {0.5,2}");
}

#[test]
fn criterion_06_order_derivative_summation() {
    for &b in &[0.5, 1.0, 2.0, 4.0] {
        for &c in &[0.1, 0.5, 0.9] {
            let closed = theorem2_closed_form(b, c).unwrap();
            let series = theorem2_lhs_series(b, c, 1e-7 * closed.abs().max(1e-12)).unwrap();
            let rel = (series.value - closed).abs() / closed.abs().max(series.value.abs());
            assert!(
                rel <= 1e-6,
                "b={b} c={c}: series {} vs closed {closed}, rel {rel:e}",
                series.value
            );
        }
    }
    // the b = 2 special case, where the prefactor collapses to 2c/(d*sqrt(pi))
    for &c in &[0.1, 0.5, 0.9] {
        let d = (1.0_f64 - c).sqrt();
        let (si, ci) = specint::specfun::sici(2.0 * d).unwrap();
        let special = 2.0 * c / (d * PI.sqrt()) * ((2.0 * d).sin() * ci - (2.0 * d).cos() * si);
        let series = theorem2_lhs_series(2.0, c, 1e-7 * special.abs()).unwrap();
        let rel = (series.value - special).abs() / special.abs();
        assert!(rel <= 1e-6, "b=2 special case at c={c}: rel {rel:e}");
    }
    pass("criterion 6: order-derivative summation = Si/Ci closed form at rel 1e-6 on the 4x3 grid, including b = 2");
}

#[test]
fn criterion_07_generating_function_identity() {
    for &b in &[0.5, 1.0, 2.0, 4.0] {
        for &c in &[0.1, 0.5, 0.9] {
            let r = jcos_identity(b, c, 1e-8).unwrap();
            assert!(r.passed && r.rel_err <= 1e-8, "b={b} c={c}: {r:?}");
        }
    }
    pass("criterion 7: J generating function = cosine closed form at rel 1e-8 on the 4x3 grid");
}

#[test]
fn criterion_08_probabilistic_chain() {
    let cfg = QuadConfig::default();
    // density normalization
    for &lambda in &[0.5, 1.0, 2.5] {
        let half = specint::quadrature::integrate_zero_to_inf(
            |x| mixture_density(x, lambda).unwrap_or(f64::NAN),
            &cfg,
        )
        .unwrap();
        assert!(
            (2.0 * half.value - 1.0).abs() <= 1e-9,
            "normalization at lambda={lambda}: {}",
            2.0 * half.value
        );
    }
    // the two derivations of the expectation agree
    for &a in &[0.5, 1.0] {
        for &b in &[1.0, 4.0] {
            for &lambda in &[0.5, 1.5] {
                let dens = expectation_via_density(a, b, lambda, &cfg).unwrap();
                let cond = expectation_via_conditioning(a, b, lambda, &cfg).unwrap();
                let rel = (dens.value - cond.value).abs() / cond.value.abs();
                assert!(rel <= 1e-8, "a={a} b={b} lambda={lambda}: rel {rel:e}");
            }
        }
    }
    // both Monte-Carlo estimators against quadrature on a 20-point grid:
    // at least 95% within 4 standard errors, bit-reproducible
    let seed = Seed::new(42);
    let n = 1_000_000;
    let mut within = 0;
    let mut total = 0;
    let mut stream = 0u64;
    let exp_grid = [
        (0.5, 0.25, 2.0),
        (0.5, 0.25, 3.0),
        (0.5, 1.0, 2.0),
        (0.5, 1.0, 3.0),
        (1.0, 0.25, 2.0),
        (1.0, 0.25, 3.0),
        (1.0, 1.0, 2.0),
        (1.0, 1.0, 3.0),
        (0.75, 2.0, 1.5),
        (0.75, 2.0, 4.0),
    ];
    for &(a, b, c) in &exp_grid {
        let p = Params::series_domain(a, b, c).unwrap();
        let est = theorem1_rhs_expectation(&p, n, seed, stream).unwrap();
        let est2 = theorem1_rhs_expectation(&p, n, seed, stream).unwrap();
        assert_eq!(est.mean.to_bits(), est2.mean.to_bits(), "reproducibility");
        let reference = 2.0 * PI.sqrt() * rhs_integral(a, b, c, &cfg).unwrap().value;
        if (est.mean - reference).abs() <= MC_SIGMA * est.std_error {
            within += 1;
        }
        total += 1;
        stream += 1;
    }
    let mix_grid = [
        (0.25, 0.5, 0.75),
        (0.25, 0.5, 1.5),
        (0.25, 2.0, 0.75),
        (0.25, 2.0, 1.5),
        (0.5, 0.5, 0.75),
        (0.5, 0.5, 1.5),
        (0.5, 2.0, 0.75),
        (0.5, 2.0, 1.5),
        (0.4, 1.0, 1.0),
        (0.4, 1.0, 2.0),
    ];
    for &(a, b, lambda) in &mix_grid {
        let spec = MixtureSpec::new(lambda).unwrap();
        let est = mc_mixture_expectation(a, b, spec, n, seed, stream).unwrap();
        let est2 = mc_mixture_expectation(a, b, spec, n, seed, stream).unwrap();
        assert_eq!(est.mean.to_bits(), est2.mean.to_bits(), "reproducibility");
        let reference = expectation_via_conditioning(a, b, lambda, &cfg).unwrap().value;
        if (est.mean - reference).abs() <= MC_SIGMA * est.std_error {
            within += 1;
        }
        total += 1;
        stream += 1;
    }
    assert_eq!(total, 20);
    assert!(
        f64::from(within) >= 0.95 * f64::from(total),
        "only {within}/{total} Monte-Carlo points within {MC_SIGMA} standard errors"
    );
    pass(&format!(
        "criterion 8: density normalizes, both expectation routes agree at rel 1e-8, {within}/{total} MC points within {MC_SIGMA} SE, reproducible"
    ));
}

#[test]
fn criterion_09_special_function_suite() {
    let start = Instant::now();
    // Gamma recurrence on a fixed grid
    for &p in &[-4.3, -2.5, -0.7, 0.3, 1.9, 4.2] {
        for &x in &[0.05, 0.7, 3.0, 15.0] {
            let up = upper_gamma(p + 1.0, x).unwrap().value;
            let lo = upper_gamma(p, x).unwrap().value;
            let r = (up - p * lo - x.powf(p) * (-x).exp()).abs();
            assert!(r <= 1e-10 * (1.0 + up.abs()), "recurrence p={p} x={x}");
        }
    }
    // E-relation
    for n in 1..=10u32 {
        for &x in &[0.1, 1.0, 5.0] {
            let lhs = upper_gamma(1.0 - f64::from(n), x).unwrap().value;
            let rhs = x.powi(1 - n as i32) * exp_integral_en(n, x).unwrap().value;
            assert!(
                (lhs - rhs).abs() <= 1e-10 * rhs.abs(),
                "E-relation n={n} x={x}"
            );
        }
    }
    // J reflection at negative integers
    for n in 1..=6i32 {
        for &z in &[0.5, 2.0, 7.0] {
            let lhs = bessel_j(Order::real(-f64::from(n)), z).unwrap().value;
            let rhs = bessel_j(Order::real(f64::from(n)), z).unwrap().value;
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            let scale = lhs.abs().max(rhs.abs()).max(1.0);
            assert!((lhs - sign * rhs).abs() <= 1e-12 * scale, "J_-n n={n} z={z}");
        }
    }
    // Struve reflection to J at negative half-integer orders
    for n in 1..=6u32 {
        for &z in &[0.5, 2.0, 7.0] {
            let h = struve_h(Order::half_minus_n(n), z).unwrap().value;
            let j = bessel_j(Order::n_minus_half(n), z).unwrap().value;
            let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
            let scale = h.abs().max(j.abs()).max(1.0);
            assert!((h - sign * j).abs() <= 1e-12 * scale, "H/J n={n} z={z}");
        }
    }
    // si is defined through Si
    for &z in &[0.3, 1.3, 9.0, 40.0] {
        assert_eq!(
            si_shifted(z).unwrap(),
            sine_integral(z).unwrap() - FRAC_PI_2
        );
    }
    // K at order 1/2
    for &z in &[0.3, 1.0, 2.5, 6.0] {
        let k = bessel_k(0.5, z).unwrap().value;
        let closed = (PI / 2.0).sqrt() * (-z).exp() / z.sqrt();
        assert!((k - closed).abs() <= 1e-10 * closed, "K_1/2 at z={z}");
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() <= 10.0, "criterion 9 too slow: {elapsed:?}");
    pass(&format!(
        "criterion 9: special-function identities all hold at stated tolerances in {:.2}s",
        elapsed.as_secs_f64()
    ));
}

#[test]
fn criterion_10_cli_contract() {
    let bin = env!("CARGO_BIN_EXE_specint");

    // default verify reproduces the full grid with exit code 0
    let full = Command::new(bin)
        .args(["verify", "--format", "json"])
        .output()
        .expect("run specint");
    assert_eq!(
        full.status.code(),
        Some(0),
        "default verify failed: {}",
        String::from_utf8_lossy(&full.stderr)
    );
    let json = String::from_utf8(full.stdout).unwrap();
    let reports = specint::identities::ParsedReport::from_json_array(&json).unwrap();
    assert!(reports.len() >= 150);
    assert!(reports.iter().all(|r| r.passed));

    // JSON and CSV carry identical values in the same order
    let csv_out = Command::new(bin)
        .args(["verify", "--format", "csv"])
        .output()
        .unwrap();
    assert_eq!(csv_out.status.code(), Some(0));
    let csv = String::from_utf8(csv_out.stdout).unwrap();
    let csv_rows: Vec<&str> = csv.lines().skip(1).collect();
    assert_eq!(csv_rows.len(), reports.len());
    for (row, rep) in csv_rows.iter().zip(&reports) {
        let fields: Vec<&str> = row.split(',').collect();
        assert_eq!(fields[0], rep.identity);
        assert_eq!(fields[2].parse::<f64>().unwrap().to_bits(), rep.lhs.to_bits());
        assert_eq!(fields[3].parse::<f64>().unwrap().to_bits(), rep.rhs.to_bits());
    }

    // repeated seeded runs are byte-identical
    let run = || {
        Command::new(bin)
            .args([
                "verify",
                "--identity",
                "thm1_mc,mc_mixture",
                "--a",
                "0.5",
                "--b",
                "1",
                "--c",
                "2",
                "--lambda",
                "1.5",
                "--n",
                "100000",
                "--seed",
                "0x2a",
                "--format",
                "json",
            ])
            .output()
            .unwrap()
    };
    let first = run();
    let second = run();
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout, "seeded runs must be byte-identical");

    pass("criterion 10: default verify exits 0 with all reports passing; JSON/CSV agree; seeded runs byte-identical");
}
