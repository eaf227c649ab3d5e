//! Oracle versus closed-form timing.
//!
//! Every sampled point is cross-checked with a shared cache before anything
//! is timed; a single mismatch aborts the run without printing timings.
//! Each timed repetition then starts from empty caches so that neither path
//! benefits from work done by the other.

use std::fmt::Write as _;
use std::sync::Arc;
use std::time::{Duration, Instant};

use hhlab::{Coefficients, Identity, Point, Registry, SeqCache, Variant};

use crate::config::Format;
use crate::error::{CliError, CliResult};

#[derive(Debug, Clone)]
pub struct BenchRow {
    pub n: i64,
    pub oracle: Duration,
    pub closed: Duration,
}

impl BenchRow {
    pub fn ratio(&self) -> f64 {
        self.oracle.as_secs_f64() / self.closed.as_secs_f64().max(1e-9)
    }
}

#[derive(Debug, Clone)]
pub struct BenchPlan {
    pub id: String,
    pub variant: Option<Variant>,
    pub ns: Vec<i64>,
    pub reps: usize,
    /// Values for every parameter other than `n`; missing ones take their minimum.
    pub fixed: Vec<(String, i64)>,
}

fn points(row: &Identity, plan: &BenchPlan) -> CliResult<Vec<Point>> {
    if !row.param_names().contains(&"n") {
        return Err(CliError::usage(format!(
            "{} has no parameter n to scale",
            row.id
        )));
    }
    for (name, _) in &plan.fixed {
        if name == "n" || !row.param_names().contains(&name.as_str()) {
            return Err(CliError::usage(format!(
                "{} does not take --{name} here",
                row.id
            )));
        }
    }
    plan.ns
        .iter()
        .map(|&n| {
            let pairs: Vec<(&str, i64)> = row
                .params
                .iter()
                .map(|p| {
                    let v = if p.name == "n" {
                        n
                    } else {
                        plan.fixed
                            .iter()
                            .find(|(k, _)| k == p.name)
                            .map_or(p.min, |(_, v)| *v)
                    };
                    (p.name, v)
                })
                .collect();
            let point = row.point(&pairs)?;
            row.check(&point)?;
            Ok(point)
        })
        .collect()
}

fn median(mut v: Vec<Duration>) -> Duration {
    v.sort();
    v[v.len() / 2]
}

/// Cross-checks, then times. Returns the chosen variant and one row per `n`.
pub fn run_bench(plan: &BenchPlan) -> CliResult<(Variant, Vec<BenchRow>)> {
    let row = Registry::standard().get(&plan.id)?;
    let variant = match plan.variant {
        Some(v) => v,
        None => row
            .preferred_variant()
            .ok_or_else(|| CliError::usage(format!("{} has no closed form to time", row.id)))?,
    };
    if !row.has_variant(variant) {
        return Err(hhlab::Error::UnknownVariant {
            id: row.id.to_string(),
            variant: variant.to_string(),
        }
        .into());
    }
    if plan.reps == 0 || plan.ns.is_empty() {
        return Err(CliError::usage(
            "bench needs at least one n and one repetition",
        ));
    }
    let pts = points(row, plan)?;

    let shared = Coefficients::new(Arc::new(SeqCache::new()));
    for point in &pts {
        let res = row.verify(&shared, point, variant)?;
        if !res.pass() {
            let show = |v: &Option<hhlab::Rational>| {
                v.as_ref().map_or("error".into(), ToString::to_string)
            };
            return Err(CliError::Failure(format!(
                "{} {variant} disagrees at {point}: lhs={} rhs={}; no timings reported",
                row.id,
                show(&res.lhs),
                show(&res.rhs)
            )));
        }
    }

    let mut rows = Vec::new();
    for (point, &n) in pts.iter().zip(&plan.ns) {
        let mut oracle = Vec::new();
        let mut closed = Vec::new();
        for _ in 0..plan.reps {
            let seq = SeqCache::new();
            let t = Instant::now();
            row.oracle_lhs(&seq, point)?;
            oracle.push(t.elapsed());

            let coeffs = Coefficients::new(Arc::new(SeqCache::new()));
            let t = Instant::now();
            row.closed_rhs(&coeffs, point, variant)?;
            closed.push(t.elapsed());
        }
        rows.push(BenchRow {
            n,
            oracle: median(oracle),
            closed: median(closed),
        });
    }
    Ok((variant, rows))
}

fn ms(d: Duration) -> String {
    format!("{:.3}", d.as_secs_f64() * 1e3)
}

pub fn render(rows: &[BenchRow], format: Format) -> CliResult<String> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["n", "oracle_ms", "closed_ms", "ratio"])
                .expect("in-memory write");
            for r in rows {
                w.write_record([
                    r.n.to_string(),
                    ms(r.oracle),
                    ms(r.closed),
                    format!("{:.2}", r.ratio()),
                ])
                .expect("in-memory write");
            }
            Ok(String::from_utf8(w.into_inner().expect("in-memory flush"))
                .expect("csv output is utf-8"))
        }
        Format::Md => {
            let mut s =
                String::from("| n | oracle ms | closed ms | ratio |\n|---:|---:|---:|---:|\n");
            for r in rows {
                let _ = writeln!(
                    s,
                    "| {} | {} | {} | {:.2} |",
                    r.n,
                    ms(r.oracle),
                    ms(r.closed),
                    r.ratio()
                );
            }
            Ok(s)
        }
        Format::Json => Err(CliError::usage("bench writes csv or md")),
    }
}
