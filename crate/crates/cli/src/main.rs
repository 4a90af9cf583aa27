//! `hhsum`: evaluate and verify hyperharmonic number series with reciprocal
//! binomial coefficients.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use hhsum_core::closed::SumSpec;
use hhsum_core::report::VerificationReport;
use hhsum_core::sequences::coeff_table;
use hhsum_core::{Engine, EngineConfig, Error};

#[derive(Parser, Debug)]
#[command(
    name = "hhsum",
    version,
    about = "Hyperharmonic series evaluation and verification"
)]
struct Cli {
    /// Config file, JSON or key=value lines; explicit flags win.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Significant digits for printing and precision targets (>= 15).
    #[arg(long, global = true, env = "HHSUM_PRECISION")]
    precision_digits: Option<u32>,

    /// Truncation depth for non-alternating Euler sums.
    #[arg(long, global = true)]
    euler_truncation: Option<u64>,

    /// Terms the oracle keeps exact before switching to extended precision.
    #[arg(long, global = true)]
    oracle_exact_terms: Option<u64>,

    /// Acceleration depth for alternating series.
    #[arg(long, global = true)]
    accel_depth: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the closed-form value of one series.
    Eval {
        #[command(flatten)]
        spec: SpecArgs,
        /// Emit a single-line JSON object {value, err}.
        #[arg(long)]
        json: bool,
    },
    /// Compare the closed form of one series against the brute-force oracle.
    Verify {
        #[command(flatten)]
        spec: SpecArgs,
        /// Verification tolerance (default: engine default_tolerance).
        #[arg(long)]
        tol: Option<f64>,
        /// Cap on oracle summation length.
        #[arg(long)]
        max_terms: Option<u64>,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        csv: bool,
    },
    /// Run a named verification suite.
    Suite {
        name: SuiteName,
        /// Sweep bound for exact identity checks.
        #[arg(long, default_value_t = 200)]
        n_max: u64,
        /// Sweep bound for table orders.
        #[arg(long, default_value_t = 5)]
        r_max: u32,
        /// Suite tolerance (default: engine default_tolerance).
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        csv: bool,
    },
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum SuiteName {
    Coeffs,
    Identities,
    Integrals,
    Examples,
    Euler,
    All,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum KindArg {
    Linear,
    Quadratic,
}

#[derive(Args, Debug)]
struct SpecArgs {
    /// Series shape: one hyperharmonic factor or a product of two.
    #[arg(long, value_enum)]
    kind: KindArg,

    /// Use the alternating weight (-1)^(n+1).
    #[arg(long)]
    alt: bool,

    /// Harmonic order of the (first) factor.
    #[arg(short = 'p', long)]
    p: u32,

    /// Hyperharmonic depth of the (first) factor.
    #[arg(short = 's', long)]
    s: u32,

    /// Harmonic order of the second factor (quadratic only).
    #[arg(long)]
    p2: Option<u32>,

    /// Hyperharmonic depth of the second factor (quadratic only).
    #[arg(long)]
    s2: Option<u32>,

    /// Power of n in the denominator.
    #[arg(short = 'm', long)]
    m: u32,

    /// Binomial parameter: the weight is 1/C(n+k, k).
    #[arg(short = 'k', long)]
    k: u32,
}

impl SpecArgs {
    fn to_spec(&self) -> Result<SumSpec, Error> {
        let spec = match self.kind {
            KindArg::Linear => {
                if self.p2.is_some() || self.s2.is_some() {
                    return Err(Error::InvalidArgument(
                        "--p2/--s2 only apply to --kind quadratic".into(),
                    ));
                }
                SumSpec::linear(self.p, self.s, self.m, self.k, self.alt)
            }
            KindArg::Quadratic => {
                let p2 = self.p2.ok_or_else(|| {
                    Error::InvalidArgument("--kind quadratic requires --p2".into())
                })?;
                let s2 = self.s2.ok_or_else(|| {
                    Error::InvalidArgument("--kind quadratic requires --s2".into())
                })?;
                SumSpec::quadratic(self.p, self.s, p2, s2, self.m, self.k, self.alt)
            }
        };
        spec.validate()?;
        Ok(spec)
    }
}

fn build_config(cli: &Cli) -> Result<EngineConfig, Error> {
    let mut cfg = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
            EngineConfig::from_file_contents(&text)?
        }
        None => EngineConfig::default(),
    };
    if let Some(d) = cli.precision_digits {
        cfg.precision_digits = d;
    }
    if let Some(t) = cli.euler_truncation {
        cfg.euler_truncation = t;
    }
    if let Some(t) = cli.oracle_exact_terms {
        cfg.oracle_exact_terms = t;
    }
    if let Some(d) = cli.accel_depth {
        cfg.accel_depth = d;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn run() -> Result<u8, Error> {
    let cli = Cli::parse();
    let cfg = build_config(&cli)?;
    let digits = cfg.precision_digits as usize;
    let engine = Engine::new(cfg)?;

    match &cli.command {
        Command::Eval { spec, json } => {
            let spec = spec.to_spec()?;
            let value = engine.theorem_value(&spec)?;
            if *json {
                println!(
                    "{}",
                    serde_json::json!({"value": value.to_f64(), "err": value.err})
                );
            } else {
                println!("{} = {:.*}", spec.id(), digits, value);
            }
            Ok(0)
        }
        Command::Verify {
            spec,
            tol,
            max_terms,
            json,
            csv,
        } => {
            let spec = spec.to_spec()?;
            let tol = tol.unwrap_or(engine.config.default_tolerance);
            if tol.is_nan() || tol <= 0.0 {
                return Err(Error::Config("tolerance must be positive".into()));
            }
            let mut scoped = engine;
            if let Some(mt) = max_terms {
                scoped.config.oracle_max_terms = *mt;
            }
            let report = scoped.verify(&spec, tol);
            emit_reports(std::slice::from_ref(&report), *json, *csv, None);
            // Conclusive verification needs the error bounds inside the
            // requested tolerance; an absurdly small tolerance fails here.
            let conclusive = report.closed_err + report.oracle_err <= tol;
            Ok(if report.status.is_failure() || !conclusive {
                1
            } else {
                0
            })
        }
        Command::Suite {
            name,
            n_max,
            r_max,
            tol,
            json,
            csv,
        } => {
            let tol = tol.unwrap_or(engine.config.default_tolerance);
            if tol.is_nan() || tol <= 0.0 {
                return Err(Error::Config("tolerance must be positive".into()));
            }
            let started = Instant::now();
            let reports = match name {
                SuiteName::Coeffs => {
                    if !*json && !*csv {
                        print_coeff_tables(*r_max);
                    }
                    engine.suite_coeffs(*r_max, *n_max)
                }
                SuiteName::Identities => engine.suite_identities(*n_max, *r_max),
                SuiteName::Integrals => engine.suite_integrals(tol)?,
                SuiteName::Examples => engine.suite_examples(tol)?,
                SuiteName::Euler => engine.suite_euler(tol)?,
                SuiteName::All => engine.suite_all(*n_max, *r_max, tol)?,
            };
            emit_reports(&reports, *json, *csv, Some(started));
            let failures = reports.iter().filter(|r| r.status.is_failure()).count();
            Ok(if failures > 0 { 1 } else { 0 })
        }
    }
}

fn print_coeff_tables(r_max: u32) {
    for r in 1..=r_max {
        let table = coeff_table(r);
        println!("a({r},m,j):");
        for (&(m, j), c) in table.iter() {
            println!("  a({r},{m},{j}) = {c}");
        }
    }
}

fn emit_reports(reports: &[VerificationReport], json: bool, csv: bool, started: Option<Instant>) {
    if json {
        if reports.len() == 1 {
            println!("{}", serde_json::to_string(&reports[0]).unwrap());
        } else {
            println!("{}", serde_json::to_string(reports).unwrap());
        }
        return;
    }
    if csv {
        println!("{}", VerificationReport::csv_header());
        for r in reports {
            println!("{}", r.csv_row());
        }
        return;
    }
    for r in reports {
        println!("{}", r.line());
    }
    let verified = reports
        .iter()
        .filter(|r| r.status.label() == "VERIFIED")
        .count();
    let expected = reports
        .iter()
        .filter(|r| r.status.label() == "DISCREPANCY-EXPECTED")
        .count();
    let failures = reports.iter().filter(|r| r.status.is_failure()).count();
    let skipped = reports.len() - verified - expected - failures;
    let mut summary = format!(
        "{} items: {verified} verified, {expected} expected discrepancies, {failures} discrepancies, {skipped} skipped",
        reports.len()
    );
    if let Some(t) = started {
        summary.push_str(&format!(" ({:.2}s)", t.elapsed().as_secs_f64()));
    }
    println!("{summary}");
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
