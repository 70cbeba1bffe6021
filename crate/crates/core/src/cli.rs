//! Command-line front end: `verify` runs identity suites over parameter
//! grids, `table` emits the order-derivative generating-function values,
//! `sample` compares the Monte-Carlo estimators against quadrature.
//!
//! Exit codes: 0 all checks passed, 1 at least one verification failed,
//! 2 usage or configuration error.

use crate::error::Error;
use crate::identities::tolerances::{MC_SIGMA, TOL_THM2};
use crate::identities::{
    expectation_via_conditioning, reports_to_csv, reports_to_json, run_suite,
    theorem1_rhs_expectation, theorem2_closed_form, theorem2_lhs_series, IdentityId, Params,
    RunSpec, SuiteConfig, VerificationReport,
};
use crate::quadrature::{rhs_integral, QuadConfig};
use crate::sampling::{mc_mixture_expectation, MixtureSpec, Seed};
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::f64::consts::PI;
use std::path::PathBuf;

/// The full built-in grid; running `specint verify` with no flags checks
/// every identity on it.
pub const DEFAULT_GRID_JSON: &str =
    include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/config/default_grid.json"));

const EXIT_OK: i32 = 0;
const EXIT_VERIFICATION_FAILED: i32 = 1;
const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "specint",
    version,
    about = "Evaluate the special functions and verify the integral/series identities this crate implements"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Verify identities over a parameter grid (defaults to the full built-in grid)
    Verify(VerifyArgs),
    /// Table of the order-derivative generating function over (b, c)
    Table(TableArgs),
    /// Monte-Carlo estimators against their quadrature counterparts
    Sample(SampleArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Human,
    Json,
    Csv,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Identities to check (comma separated); with no grid flags each uses its default grid
    #[arg(long = "identity", value_delimiter = ',')]
    pub identities: Vec<IdentityIdArg>,
    /// Grid values for a (comma separated)
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub a: Vec<f64>,
    /// Grid values for b
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub b: Vec<f64>,
    /// Grid values for c
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub c: Vec<f64>,
    /// Grid values for the integer order n
    #[arg(long = "n-order", value_delimiter = ',')]
    pub n_order: Vec<u32>,
    /// Grid values for the real order s
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub s: Vec<f64>,
    /// Grid values for the mixing parameter lambda
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub lambda: Vec<f64>,
    /// Override the per-identity verification tolerance
    #[arg(long)]
    pub tol: Option<f64>,
    /// RNG seed (decimal or 0x-hex)
    #[arg(long)]
    pub seed: Option<Seed>,
    /// Monte-Carlo samples per estimate
    #[arg(long)]
    pub n: Option<u64>,
    #[arg(long, value_enum, default_value = "human")]
    pub format: OutputFormat,
    /// Write the report here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// JSON run configuration (same field names as the flags)
    #[arg(long)]
    pub config: Option<PathBuf>,
}

/// Newtype so clap can parse identity names through FromStr.
#[derive(Clone, Copy, Debug)]
pub struct IdentityIdArg(pub IdentityId);

impl std::str::FromStr for IdentityIdArg {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.parse::<IdentityId>()
            .map(IdentityIdArg)
            .map_err(|e| e.to_string())
    }
}

#[derive(Args, Debug)]
pub struct TableArgs {
    /// Values of b (comma separated)
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub b: Vec<f64>,
    /// Values of c in (0, 1)
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub c: Vec<f64>,
    /// Series truncation tolerance
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long, value_enum, default_value = "human")]
    pub format: OutputFormat,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SampleArgs {
    #[arg(long, default_value_t = 1.0)]
    pub a: f64,
    #[arg(long, default_value_t = 1.0)]
    pub b: f64,
    /// c for the exponential-expectation estimator
    #[arg(long, default_value_t = 2.0)]
    pub c: f64,
    /// If set, also run the mixture estimator with this lambda
    #[arg(long)]
    pub lambda: Option<f64>,
    /// Sample count (>= 1000)
    #[arg(long, default_value_t = 1_000_000)]
    pub n: u64,
    /// RNG seed (decimal or 0x-hex)
    #[arg(long, default_value = "42")]
    pub seed: Seed,
    #[arg(long, value_enum, default_value = "human")]
    pub format: OutputFormat,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Parse argv and run; returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // clap prints help/version through here too; keep its exit code
            // for those, use 2 for genuine usage errors
            let code = e.exit_code();
            let _ = e.print();
            return if code == 0 { 0 } else { EXIT_USAGE };
        }
    };
    match cli.command {
        Command::Verify(args) => cmd_verify(&args),
        Command::Table(args) => cmd_table(&args),
        Command::Sample(args) => cmd_sample(&args),
    }
}

fn usage_error(msg: impl std::fmt::Display) -> i32 {
    eprintln!("error: {msg}");
    EXIT_USAGE
}

fn write_output(out: &Option<PathBuf>, text: &str) -> Result<(), std::io::Error> {
    match out {
        Some(path) => std::fs::write(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn reports_to_human(reports: &[VerificationReport]) -> String {
    let mut out = String::new();
    for r in reports {
        let params = [
            r.params.a.map(|v| format!("a={v:.16e}")),
            r.params.b.map(|v| format!("b={v:.16e}")),
            r.params.c.map(|v| format!("c={v:.16e}")),
            r.params.n.map(|v| format!("n={v}")),
            r.params.s.map(|v| format!("s={v:.16e}")),
            r.params.lambda.map(|v| format!("lambda={v:.16e}")),
        ]
        .into_iter()
        .flatten()
        .collect::<Vec<_>>()
        .join(" ");
        out.push_str(&format!(
            "{} {:<16} {} lhs={:.16e} rhs={:.16e} rel_err={:.16e} tol={:.16e} [{}]\n",
            if r.passed { "PASS" } else { "FAIL" },
            r.identity.to_string(),
            params,
            r.lhs,
            r.rhs,
            r.rel_err,
            r.tol,
            r.note,
        ));
    }
    let passed = reports.iter().filter(|r| r.passed).count();
    out.push_str(&format!("{passed}/{} checks passed\n", reports.len()));
    out
}

fn cmd_verify(args: &VerifyArgs) -> i32 {
    let grid_flags_given = !(args.identities.is_empty()
        && args.a.is_empty()
        && args.b.is_empty()
        && args.c.is_empty()
        && args.n_order.is_empty()
        && args.s.is_empty()
        && args.lambda.is_empty());

    let mut cfg: SuiteConfig = if let Some(path) = &args.config {
        match std::fs::read_to_string(path)
            .map_err(|e| e.to_string())
            .and_then(|t| serde_json::from_str(&t).map_err(|e| e.to_string()))
        {
            Ok(cfg) => cfg,
            Err(e) => return usage_error(format!("cannot load config {}: {e}", path.display())),
        }
    } else {
        serde_json::from_str(DEFAULT_GRID_JSON).expect("built-in grid parses")
    };

    if grid_flags_given {
        let ids: Vec<IdentityId> = if args.identities.is_empty() {
            IdentityId::ALL.to_vec()
        } else {
            args.identities.iter().map(|i| i.0).collect()
        };
        cfg.runs = ids
            .into_iter()
            .map(|identity| RunSpec {
                identity,
                a: args.a.clone(),
                b: args.b.clone(),
                c: args.c.clone(),
                n: args.n_order.clone(),
                s: args.s.clone(),
                lambda: args.lambda.clone(),
                tol: args.tol,
            })
            .collect();
    } else if let Some(t) = args.tol {
        for run in &mut cfg.runs {
            run.tol = Some(t);
        }
    }
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }
    if let Some(n) = args.n {
        cfg.mc_samples = n;
    }
    if cfg.mc_samples < 1000 {
        return usage_error("--n must be at least 1000");
    }

    let reports = match run_suite(&cfg) {
        Ok(r) => r,
        Err(e @ Error::Config(_)) | Err(e @ Error::Domain(_)) => return usage_error(e),
        Err(e) => return usage_error(e),
    };
    let text = match args.format {
        OutputFormat::Human => reports_to_human(&reports),
        OutputFormat::Json => reports_to_json(&reports),
        OutputFormat::Csv => reports_to_csv(&reports),
    };
    if let Err(e) = write_output(&args.out, &text) {
        return usage_error(format!("cannot write output: {e}"));
    }
    if reports.iter().all(|r| r.passed) {
        EXIT_OK
    } else {
        EXIT_VERIFICATION_FAILED
    }
}

struct TableRow {
    b: f64,
    c: f64,
    lhs_series: f64,
    rhs_closed_form: f64,
    rel_err: f64,
}

fn cmd_table(args: &TableArgs) -> i32 {
    if args.b.is_empty() || args.c.is_empty() {
        return usage_error("table requires --b and --c grids");
    }
    if args.b.iter().any(|&b| !(b > 0.0)) {
        return usage_error("table requires b > 0");
    }
    if args.c.iter().any(|&c| !(c > 0.0 && c < 1.0)) {
        return usage_error("table requires c in (0, 1)");
    }
    let tol = args.tol.unwrap_or(TOL_THM2);
    if !(tol > 0.0) {
        return usage_error("--tol must be > 0");
    }
    let mut rows = Vec::new();
    let mut worst = 0.0_f64;
    for &b in &args.b {
        for &c in &args.c {
            let closed = match theorem2_closed_form(b, c) {
                Ok(v) => v,
                Err(e) => return usage_error(e),
            };
            let series = match theorem2_lhs_series(b, c, (tol / 10.0) * closed.abs().max(1e-12)) {
                Ok(s) => s,
                Err(e) => return usage_error(e),
            };
            let rel_err =
                (series.value - closed).abs() / closed.abs().max(series.value.abs()).max(1e-300);
            worst = worst.max(rel_err);
            rows.push(TableRow {
                b,
                c,
                lhs_series: series.value,
                rhs_closed_form: closed,
                rel_err,
            });
        }
    }
    let text = match args.format {
        OutputFormat::Human => {
            let mut t = String::from("b  c  lhs_series  rhs_closed_form  rel_err\n");
            for r in &rows {
                t.push_str(&format!(
                    "{:.16e} {:.16e} {:.16e} {:.16e} {:.16e}\n",
                    r.b, r.c, r.lhs_series, r.rhs_closed_form, r.rel_err
                ));
            }
            t
        }
        OutputFormat::Json => {
            let mut t = String::from("[\n");
            for (i, r) in rows.iter().enumerate() {
                t.push_str(&format!(
                    "  {{\"b\": {:.16e}, \"c\": {:.16e}, \"lhs_series\": {:.16e}, \"rhs_closed_form\": {:.16e}, \"rel_err\": {:.16e}}}{}\n",
                    r.b, r.c, r.lhs_series, r.rhs_closed_form, r.rel_err,
                    if i + 1 < rows.len() { "," } else { "" }
                ));
            }
            t.push_str("]\n");
            t
        }
        OutputFormat::Csv => {
            let mut t = String::from("b,c,lhs_series,rhs_closed_form,rel_err\n");
            for r in &rows {
                t.push_str(&format!(
                    "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}\n",
                    r.b, r.c, r.lhs_series, r.rhs_closed_form, r.rel_err
                ));
            }
            t
        }
    };
    if let Err(e) = write_output(&args.out, &text) {
        return usage_error(format!("cannot write output: {e}"));
    }
    if worst <= tol {
        EXIT_OK
    } else {
        EXIT_VERIFICATION_FAILED
    }
}

fn cmd_sample(args: &SampleArgs) -> i32 {
    if args.n < 1000 {
        return usage_error("--n must be at least 1000");
    }
    let quad = QuadConfig::default();
    let mut lines = Vec::new();
    let mut all_passed = true;

    let p = match Params::series_domain(args.a, args.b, args.c) {
        Ok(p) => p,
        Err(e) => return usage_error(e),
    };
    let est = match theorem1_rhs_expectation(&p, args.n, args.seed, 0) {
        Ok(e) => e,
        Err(e) => return usage_error(e),
    };
    let integral = match rhs_integral(args.a, args.b, args.c, &quad) {
        Ok(q) => q,
        Err(e) => return usage_error(e),
    };
    let reference = 2.0 * PI.sqrt() * integral.value;
    let passed = (est.mean - reference).abs() <= MC_SIGMA * est.std_error + integral.est_abs_error;
    all_passed &= passed;
    lines.push(format!(
        "{} exponential-expectation mc={:.16e} se={:.16e} quadrature={:.16e} n={} seed={}",
        if passed { "PASS" } else { "FAIL" },
        est.mean,
        est.std_error,
        reference,
        est.n_samples,
        args.seed.value,
    ));

    if let Some(lambda) = args.lambda {
        let spec = match MixtureSpec::new(lambda) {
            Ok(s) => s,
            Err(e) => return usage_error(e),
        };
        let est = match mc_mixture_expectation(args.a, args.b, spec, args.n, args.seed, 1) {
            Ok(e) => e,
            Err(e) => return usage_error(e),
        };
        let cond = match expectation_via_conditioning(args.a, args.b, lambda, &quad) {
            Ok(q) => q,
            Err(e) => return usage_error(e),
        };
        let passed =
            (est.mean - cond.value).abs() <= MC_SIGMA * est.std_error + cond.est_abs_error;
        all_passed &= passed;
        lines.push(format!(
            "{} mixture-expectation mc={:.16e} se={:.16e} quadrature={:.16e} n={} seed={}",
            if passed { "PASS" } else { "FAIL" },
            est.mean,
            est.std_error,
            cond.value,
            est.n_samples,
            args.seed.value,
        ));
    }

    let text = lines.join("\n") + "\n";
    if let Err(e) = write_output(&args.out, &text) {
        return usage_error(format!("cannot write output: {e}"));
    }
    if all_passed {
        EXIT_OK
    } else {
        EXIT_VERIFICATION_FAILED
    }
}
