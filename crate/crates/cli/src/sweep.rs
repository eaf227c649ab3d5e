use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use hhlab::{Coefficients, Identity, Point, Rational, Registry, Variant};
use rayon::prelude::*;

use crate::config::{soft_limit, SweepConfig, VariantPolicy};
use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skip(String),
    Error(String),
}

/// One evaluated (identity, point, variant). `variant` is `None` for
/// oracle-only rows, which are always skipped.
#[derive(Debug, Clone)]
pub struct Record {
    pub id: &'static str,
    pub variant: Option<Variant>,
    pub point: Point,
    pub lhs: Option<Rational>,
    pub rhs: Option<Rational>,
    pub status: Status,
}

impl Record {
    pub fn variant_name(&self) -> &'static str {
        self.variant.map_or("none", Variant::name)
    }

    pub fn is_failure(&self) -> bool {
        matches!(self.status, Status::Fail | Status::Error(_))
    }
}

#[derive(Debug)]
pub struct SweepOutcome {
    /// Sorted by identity id, point, then variant.
    pub records: Vec<Record>,
    pub per_identity: BTreeMap<&'static str, Duration>,
    pub total: Duration,
}

pub fn variants_for(row: &Identity, policy: VariantPolicy) -> Vec<Variant> {
    match policy {
        VariantPolicy::Paper => row
            .variant_tags()
            .into_iter()
            .filter(|v| *v == Variant::Paper)
            .collect(),
        VariantPolicy::Corrected => row.preferred_variant().into_iter().collect(),
        VariantPolicy::Both => row.variant_tags(),
    }
}

fn evaluate(
    row: &Identity,
    point: &Point,
    variants: &[Variant],
    coeffs: &Coefficients,
) -> Vec<Record> {
    let record = |variant, lhs, rhs, status| Record {
        id: row.id,
        variant,
        point: point.clone(),
        lhs,
        rhs,
        status,
    };
    if variants.is_empty() {
        let reason = if row.variant_tags().is_empty() {
            "no closed form"
        } else {
            "no variant under this policy"
        };
        return vec![record(None, None, None, Status::Skip(reason.into()))];
    }
    if let Err(e) = row.check(point) {
        let reason = e.to_string();
        return variants
            .iter()
            .map(|v| record(Some(*v), None, None, Status::Skip(reason.clone())))
            .collect();
    }
    let lhs = row.oracle_lhs(coeffs.seq(), point);
    variants
        .iter()
        .map(|&v| match (&lhs, row.closed_rhs(coeffs, point, v)) {
            (Ok(l), Ok(r)) => {
                let status = if *l == r { Status::Pass } else { Status::Fail };
                record(Some(v), Some(l.clone()), Some(r), status)
            }
            (l, r) => {
                let msg = [
                    l.as_ref().err().map(ToString::to_string),
                    r.as_ref().err().map(ToString::to_string),
                ]
                .into_iter()
                .flatten()
                .collect::<Vec<_>>()
                .join("; ");
                record(
                    Some(v),
                    l.as_ref().ok().cloned(),
                    r.ok(),
                    Status::Error(msg),
                )
            }
        })
        .collect()
}

/// Runs the full cross product of the configuration on `workers` threads.
/// The record order does not depend on scheduling.
pub fn run_sweep(cfg: &SweepConfig, coeffs: &Coefficients) -> CliResult<SweepOutcome> {
    let registry = Registry::standard();
    let mut tasks: Vec<(&Identity, Point, Vec<Variant>)> = Vec::new();
    for id in &cfg.identities {
        let row = registry.get(id)?;
        let variants = variants_for(row, cfg.policy);
        for point in row.grid(&cfg.ranges)? {
            for (name, v) in point.entries() {
                if *v > soft_limit(name) {
                    return Err(CliError::usage(format!(
                        "{id} point {point} exceeds the soft limit {name} <= {}",
                        soft_limit(name)
                    )));
                }
            }
            tasks.push((row, point, variants.clone()));
        }
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| CliError::usage(format!("cannot start {} workers: {e}", cfg.workers)))?;
    let start = Instant::now();
    let results: Vec<(Vec<Record>, &'static str, Duration)> = pool.install(|| {
        tasks
            .par_iter()
            .map(|(row, point, variants)| {
                let t = Instant::now();
                let recs = evaluate(row, point, variants, coeffs);
                (recs, row.id, t.elapsed())
            })
            .collect()
    });
    let total = start.elapsed();
    let mut per_identity: BTreeMap<&'static str, Duration> = BTreeMap::new();
    let mut records = Vec::new();
    for (recs, id, t) in results {
        *per_identity.entry(id).or_default() += t;
        records.extend(recs);
    }
    records.sort_by(|a, b| (a.id, &a.point, a.variant).cmp(&(b.id, &b.point, b.variant)));
    Ok(SweepOutcome {
        records,
        per_identity,
        total,
    })
}
