//! Command-line front end for `hhlab`: compute single values, verify one
//! identity at one point, sweep parameter grids into reports, maintain the
//! correction ledger, and time oracle against closed-form evaluation.
//!
//! Exit codes: 0 all pass, 1 identity failure, 2 usage or constraint
//! error, 3 I/O error.

pub mod bench;
pub mod cache;
pub mod compute;
pub mod config;
pub mod error;
pub mod ledger;
pub mod report;
pub mod sweep;

use std::ffi::OsString;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use hhlab::{Coefficients, Registry, Variant};

use crate::bench::BenchPlan;
use crate::compute::ComputeArgs;
use crate::config::{ConfigBuilder, Format, VariantPolicy};
use crate::error::{CliError, CliResult};
use crate::report::RunReport;

#[derive(Debug, Parser)]
#[command(
    name = "hhlab",
    version,
    about = "Exact verifier for harmonic and hyperharmonic summation identities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print one exact sequence value or coefficient.
    Compute(ComputeArgs),
    /// Check one identity at one point.
    Verify(VerifyArgs),
    /// Check identities over parameter grids and write a report.
    Sweep(SweepArgs),
    /// Time the oracle against the closed form.
    Bench(BenchArgs),
    /// List the registered identities.
    List,
}

/// Identity parameters shared by `verify` and `bench`.
#[derive(Debug, Clone, Args)]
struct PointArgs {
    #[arg(long, allow_hyphen_values = true)]
    k: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    l: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    p: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    q: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    r: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    s: Option<i64>,
}

impl PointArgs {
    fn pairs(&self) -> Vec<(&'static str, i64)> {
        [
            ("k", self.k),
            ("l", self.l),
            ("p", self.p),
            ("q", self.q),
            ("r", self.r),
            ("s", self.s),
        ]
        .into_iter()
        .filter_map(|(k, v)| v.map(|v| (k, v)))
        .collect()
    }
}

#[derive(Debug, Args)]
struct VerifyArgs {
    id: String,
    #[arg(long, allow_hyphen_values = true)]
    n: Option<i64>,
    #[command(flatten)]
    point: PointArgs,
    /// `paper` or `corrected`; defaults to the corrected form when one exists.
    #[arg(long)]
    variant: Option<String>,
}

#[derive(Debug, Args)]
struct SweepArgs {
    /// Flat `key = value` config file; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Comma-separated identity ids, or `all`.
    #[arg(long)]
    ids: Vec<String>,
    /// `name=lo..hi`; repeat to union ranges for one name.
    #[arg(long = "range")]
    ranges: Vec<String>,
    /// paper, corrected or both.
    #[arg(long)]
    variant: Option<String>,
    /// json, csv or md; defaults from the output extension, then json.
    #[arg(long)]
    format: Option<String>,
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long)]
    workers: Option<usize>,
    /// Rewrite the machine section of this ledger from the sweep.
    #[arg(long)]
    update_ledger: Option<PathBuf>,
    /// Fail if the sweep disagrees with this ledger's machine section.
    #[arg(long)]
    check_ledger: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct BenchArgs {
    id: String,
    /// Comma-separated values of n.
    #[arg(long, value_delimiter = ',', default_value = "100,1000")]
    n: Vec<i64>,
    #[arg(long, default_value_t = 3)]
    reps: usize,
    #[command(flatten)]
    point: PointArgs,
    #[arg(long)]
    variant: Option<String>,
    /// csv or md.
    #[arg(long, default_value = "csv")]
    format: String,
    #[arg(long)]
    output: Option<PathBuf>,
}

fn parse_variant(text: Option<&str>) -> CliResult<Option<Variant>> {
    text.map(|t| t.parse::<Variant>().map_err(CliError::from))
        .transpose()
}

fn write_out(path: Option<&Path>, text: &str) -> CliResult<()> {
    match path {
        Some(p) => {
            std::fs::write(p, text).map_err(|e| CliError::io(format!("writing {}", p.display()), e))
        }
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::io("writing standard output", e)),
    }
}

fn read_file(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::io(format!("reading {}", path.display()), e))
}

fn cmd_verify(args: &VerifyArgs, coeffs: &Coefficients) -> CliResult<i32> {
    let row = Registry::standard().get(&args.id)?;
    let mut pairs = args.point.pairs();
    if let Some(n) = args.n {
        pairs.push(("n", n));
    }
    let point = row.point(&pairs)?;
    let variant = match parse_variant(args.variant.as_deref())? {
        Some(v) => v,
        None => match row.preferred_variant() {
            Some(v) => v,
            None => {
                row.check(&point)?;
                let lhs = row.oracle_lhs(coeffs.seq(), &point)?;
                return Err(CliError::usage(format!(
                    "{} has no closed form; lhs = {lhs}",
                    row.id
                )));
            }
        },
    };
    let res = row.verify(coeffs, &point, variant)?;
    let show =
        |v: &Option<hhlab::Rational>| v.as_ref().map_or("error".to_string(), ToString::to_string);
    let (lhs, rhs) = (show(&res.lhs), show(&res.rhs));
    println!("identity: {}", row.id);
    println!("variant: {variant}");
    println!("point: {point}");
    println!("lhs: {lhs}");
    println!("rhs: {rhs}");
    match &res.outcome {
        hhlab::Outcome::Pass => {
            println!("{lhs} = {rhs}");
            println!("result: pass");
            Ok(0)
        }
        hhlab::Outcome::Fail => {
            println!("{lhs} != {rhs}");
            println!("result: fail");
            Ok(1)
        }
        hhlab::Outcome::Error(msg) => {
            println!("result: error ({msg})");
            Ok(1)
        }
    }
}

fn cmd_sweep(args: &SweepArgs, coeffs: &Coefficients) -> CliResult<i32> {
    let mut builder = ConfigBuilder::default();
    if let Some(path) = &args.config {
        builder.apply_file(&read_file(path)?)?;
    }
    builder.ids(&args.ids);
    builder.range_flags(&args.ranges)?;
    builder.policy(
        args.variant
            .as_deref()
            .map(str::parse::<VariantPolicy>)
            .transpose()?,
    );
    builder.format(
        args.format
            .as_deref()
            .map(str::parse::<Format>)
            .transpose()?,
    );
    builder.output(args.output.clone());
    builder.workers(args.workers);
    let cfg = builder.finish()?;

    let outcome = sweep::run_sweep(&cfg, coeffs)?;
    let report = RunReport::new(&cfg, outcome);
    write_out(cfg.output.as_deref(), &report.render(cfg.format))?;

    let section = ledger::machine_section(&report.records);
    if let Some(path) = &args.update_ledger {
        let doc = match std::fs::read_to_string(path) {
            Ok(doc) => doc,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => "# Corrections\n".to_string(),
            Err(e) => return Err(CliError::io(format!("reading {}", path.display()), e)),
        };
        std::fs::write(path, ledger::splice(&doc, &section))
            .map_err(|e| CliError::io(format!("writing {}", path.display()), e))?;
    }
    if let Some(path) = &args.check_ledger {
        let doc = read_file(path)?;
        if ledger::extract(&doc)? != section {
            return Err(CliError::Failure(format!(
                "ledger drift: {} does not match this sweep; regenerate it with --update-ledger",
                path.display()
            )));
        }
        eprintln!("ledger up to date: {}", path.display());
    }
    let t = &report.totals;
    eprintln!(
        "{} checked, {} passed, {} failed, {} skipped",
        t.tested, t.passes, t.failures, t.skips
    );
    Ok(if report.all_passed() { 0 } else { 1 })
}

fn cmd_bench(args: &BenchArgs) -> CliResult<i32> {
    let format: Format = args.format.parse()?;
    let plan = BenchPlan {
        id: args.id.clone(),
        variant: parse_variant(args.variant.as_deref())?,
        ns: args.n.clone(),
        reps: args.reps,
        fixed: args
            .point
            .pairs()
            .into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect(),
    };
    let (_, rows) = bench::run_bench(&plan)?;
    write_out(args.output.as_deref(), &bench::render(&rows, format)?)?;
    Ok(0)
}

fn cmd_list() -> CliResult<i32> {
    let mut out = String::new();
    for row in Registry::standard().iter() {
        let variants: Vec<&str> = row.variant_tags().iter().map(|v| v.name()).collect();
        let variants = if variants.is_empty() {
            "oracle only".to_string()
        } else {
            variants.join(",")
        };
        out.push_str(&format!(
            "{:<14} ({})  [{}]  {}\n",
            row.id,
            row.param_names().join(","),
            variants,
            row.summary
        ));
    }
    write_out(None, &out)?;
    Ok(0)
}

fn dispatch(cli: Cli) -> CliResult<i32> {
    let path = cache::cache_path();
    let seq = Arc::new(cache::load(path.as_deref()));
    let coeffs = Coefficients::new(seq.clone());
    let code = match &cli.command {
        Command::Compute(args) => {
            println!("{}", compute::compute(args, &coeffs)?);
            0
        }
        Command::Verify(args) => cmd_verify(args, &coeffs)?,
        Command::Sweep(args) => cmd_sweep(args, &coeffs)?,
        Command::Bench(args) => cmd_bench(args)?,
        Command::List => cmd_list()?,
    };
    if let Some(path) = path {
        if let Err(e) = cache::save(&path, &seq) {
            eprintln!("warning: {e}");
        }
    }
    Ok(code)
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
