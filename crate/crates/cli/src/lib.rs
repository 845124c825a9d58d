//! Command-line front end for the `superirr` library.

pub mod cache;
pub mod output;

use std::io::Write;
use std::path::PathBuf;

use anyhow::{anyhow, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};
use superirr::counting::{self, CountMethod, CountRecord, S2Method};
use superirr::field::DEFAULT_CEILING;
use superirr::papercheck::{self, ReproductionReport};
use superirr::superirr::{test_weak_k, NaiveOptions, DEFAULT_BUDGET};
use superirr::{Error, Poly};

use crate::cache::Cache;
use crate::output::{render, Format};

pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "superirr",
    version,
    about = "Weak k-superirreducibility over finite fields"
)]
pub struct Cli {
    #[command(flatten)]
    pub config: CliConfig,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct CliConfig {
    /// Operation budget for exhaustive searches (coefficient operations).
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget: u64,
    /// Largest field or enumeration size accepted.
    #[arg(long, global = true, default_value_t = DEFAULT_CEILING, value_parser = clap::value_parser!(u64).range(1..))]
    pub ceiling: u64,
    /// JSON-lines file of count records.
    #[arg(long, global = true, env = "SUPERIRR_CACHE")]
    pub cache: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Worker threads; defaults to the number of cores.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub workers: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Auto,
    Formula,
    Roots,
    Bruteforce,
    Gauss,
    Enumeration,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Paper,
    Bounds,
    All,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count s_2(q, d), or s_1(q, d) with --k 1.
    Count {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        d: u32,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..=2))]
        k: u32,
    },
    /// Decide weak k-superirreducibility of one polynomial.
    Test {
        #[arg(long)]
        q: u64,
        /// `x^4-x^2-1` over prime fields, or comma-separated canonical coefficients.
        #[arg(long)]
        poly: String,
        #[arg(long, default_value_t = 2)]
        k: usize,
    },
    /// List the monic weakly k-superirreducible polynomials of degree d.
    Search {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 2)]
        k: usize,
    },
    /// Autocorrelation of the quadratic character of F_{q^e} over offsets in F_q.
    Autocorr {
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = 1)]
        e: u32,
        #[arg(long, value_delimiter = ',', required = true)]
        offsets: Vec<u64>,
    },
    /// Run a reproduction suite; exits nonzero if any item fails.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
    },
}

/// Process exit status for an error raised while running a command.
pub fn exit_code(err: &anyhow::Error) -> i32 {
    match err.downcast_ref::<Error>() {
        Some(Error::BudgetExceeded { .. }) => EXIT_BUDGET,
        Some(Error::Invariant(_)) => EXIT_FAILURE,
        Some(_) => EXIT_INVALID,
        None => EXIT_FAILURE,
    }
}

fn check_ceiling(q: u64, d: u32, ceiling: u64) -> Result<()> {
    let size = (q as u128).checked_pow(d);
    match size {
        Some(s) if s <= ceiling as u128 => Ok(()),
        _ => Err(Error::CeilingExceeded {
            size: format!("{q}^{d}"),
            ceiling,
        }
        .into()),
    }
}

/// `[main - (q/2d) q^(d/2), main + (q/2d) q^(d/2)]` for odd `q`, even `d`.
pub fn larged_interval(q: u64, d: u32) -> Option<(BigRational, BigRational)> {
    if q.is_multiple_of(2) || d % 2 == 1 {
        return None;
    }
    let main = counting::expected_main_term(q, d);
    let radius = BigRational::new(
        BigInt::from(q) * BigInt::from(q).pow(d / 2),
        BigInt::from(2 * d),
    );
    Some((&main - &radius, main + radius))
}

fn compute_count(q: u64, d: u32, k: u32, method: MethodArg, budget: u64) -> Result<CountRecord> {
    let rec = match (k, method) {
        (1, MethodArg::Auto | MethodArg::Gauss) => counting::s1(q, d, CountMethod::Gauss)?,
        (1, MethodArg::Enumeration) => counting::s1(q, d, CountMethod::Enumeration)?,
        (2, MethodArg::Auto) => counting::s2(q, d, S2Method::Auto, budget)?,
        (2, MethodArg::Formula) => counting::s2(q, d, S2Method::Formula, budget)?,
        (2, MethodArg::Roots) => counting::s2(q, d, S2Method::Roots, budget)?,
        (2, MethodArg::Bruteforce) => counting::s2(q, d, S2Method::Bruteforce, budget)?,
        (k, m) => {
            return Err(Error::InvalidArgument(format!(
                "method {} does not apply to k = {k}",
                m.to_possible_value()
                    .expect("no skipped variants")
                    .get_name()
            ))
            .into());
        }
    };
    Ok(rec)
}

fn cached_method(k: u32, method: MethodArg) -> Option<CountMethod> {
    match (k, method) {
        (1, MethodArg::Auto | MethodArg::Gauss) => Some(CountMethod::Gauss),
        (1, MethodArg::Enumeration) => Some(CountMethod::Enumeration),
        (2, MethodArg::Formula) => Some(CountMethod::Formula),
        (2, MethodArg::Roots) => Some(CountMethod::Roots),
        (2, MethodArg::Bruteforce) => Some(CountMethod::Bruteforce),
        _ => None,
    }
}

/// `count` with cache lookup; returns the record and whether it came from the cache.
pub fn count(
    config: &CliConfig,
    q: u64,
    d: u32,
    k: u32,
    method: MethodArg,
) -> Result<(CountRecord, bool)> {
    check_ceiling(q, d, config.ceiling)?;
    let mut cache = config.cache.as_deref().map(Cache::open).transpose()?;
    let key = cached_method(k, method);
    if let (Some(cache), Some(m)) = (cache.as_mut(), key) {
        if let Some(rec) = cache.lookup(q, d, k, m)? {
            return Ok((rec, true));
        }
    }
    let rec = compute_count(q, d, k, method, config.budget)?;
    if let Some(cache) = cache.as_mut() {
        if rec.method != CountMethod::TheoremZero {
            cache.store(&rec)?;
        }
    }
    Ok((rec, false))
}

fn count_json(rec: &CountRecord, cached: bool) -> Value {
    let mut v = serde_json::to_value(rec).expect("record serializes");
    let obj = v.as_object_mut().expect("record is an object");
    if rec.k == 2 {
        if let Some((lo, hi)) = larged_interval(rec.q, rec.d) {
            obj.insert("larged_low".into(), json!(lo.to_string()));
            obj.insert("larged_high".into(), json!(hi.to_string()));
        }
    }
    obj.insert("cached".into(), json!(cached));
    v
}

fn base_field(q: u64) -> Result<std::sync::Arc<superirr::Field>> {
    Ok(counting::tower_for(q, 1)?.mid().clone())
}

fn reports_json(reports: &[ReproductionReport]) -> Value {
    serde_json::to_value(reports).expect("reports serialize")
}

/// Runs a parsed command, writing its rendering to `out`. Returns the exit
/// status for commands that succeed in running (nonzero for failed suites).
pub fn run(cli: &Cli, out: &mut impl Write) -> Result<i32> {
    let config = &cli.config;
    let (value, status) = match &cli.command {
        Command::Count { q, d, method, k } => {
            let (rec, cached) = count(config, *q, *d, *k, *method)?;
            (count_json(&rec, cached), 0)
        }
        Command::Test { q, poly, k } => {
            let field = base_field(*q)?;
            let f = Poly::parse(&field, poly)?;
            let opts = NaiveOptions {
                translation_reduction: false,
                budget: config.budget,
            };
            let verdict = test_weak_k(&f, *k, opts)?;
            let mut v = verdict.to_json();
            let obj = v.as_object_mut().expect("verdict is an object");
            obj.insert("q".into(), json!(q));
            obj.insert("poly".into(), json!(f.pretty("x")));
            if let Some(w) = &verdict.witness {
                obj.insert("witness".into(), json!(w.pretty("t")));
            }
            (v, 0)
        }
        Command::Search { q, d, k } => {
            check_ceiling(*q, *d as u32, config.ceiling)?;
            let field = base_field(*q)?;
            let found = papercheck::search_degree(&field, *d, *k, config.budget)?;
            let rows: Vec<Value> = found
                .iter()
                .map(|f| json!({"q": q, "d": d, "k": k, "poly": f.pretty("x"), "coefficients": f.to_text()}))
                .collect();
            (Value::Array(rows), 0)
        }
        Command::Autocorr { q, e, offsets } => {
            check_ceiling(*q, *e, config.ceiling)?;
            let a = counting::autocorrelation_q(*q, *e, offsets)?;
            (serde_json::to_value(a)?, 0)
        }
        Command::Verify { suite } => {
            let mut reports = Vec::new();
            if matches!(suite, Suite::Paper | Suite::All) {
                reports.extend(papercheck::paper_suite()?);
            }
            if matches!(suite, Suite::Bounds | Suite::All) {
                reports.extend(papercheck::bounds_suite()?);
            }
            let status = if reports.iter().all(|r| r.pass) {
                0
            } else {
                EXIT_FAILURE
            };
            (reports_json(&reports), status)
        }
    };
    render(&value, config.format, out)?;
    Ok(status)
}

/// Parses `args`, configures the worker pool, runs, and maps errors to exit codes.
pub fn main_with(args: impl IntoIterator<Item = String>) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INVALID } else { 0 };
        }
    };
    if let Some(n) = cli.config.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n as usize)
            .build_global()
        {
            eprintln!("error: {}", anyhow!(e));
            return EXIT_FAILURE;
        }
    }
    let stdout = std::io::stdout();
    match run(&cli, &mut stdout.lock()) {
        Ok(status) => status,
        Err(e) => {
            eprintln!("error: {e:#}");
            exit_code(&e)
        }
    }
}
