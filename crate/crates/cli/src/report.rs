//! Run reports in JSON, CSV and Markdown.
//!
//! Everything except the timing section is a pure function of the
//! configuration and the tool version, so two runs of one configuration
//! produce identical bodies. CSV carries no timing at all.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::config::{Format, SweepConfig};
use crate::sweep::{Record, Status, SweepOutcome};

pub const TOOL: &str = "hhlab";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Failure rows per (identity, variant) shown in Markdown reports.
const MD_FAILURE_ROWS: usize = 20;

#[derive(Debug, Clone, Serialize)]
pub struct ConfigEcho {
    pub identities: Vec<String>,
    pub ranges: BTreeMap<String, Vec<String>>,
    pub variant_policy: String,
}

#[derive(Debug, Clone, Default, Serialize, PartialEq, Eq)]
pub struct Counts {
    pub tested: usize,
    pub passes: usize,
    pub failures: usize,
    pub skips: usize,
}

impl Counts {
    fn add(&mut self, status: &Status) {
        self.tested += 1;
        match status {
            Status::Pass => self.passes += 1,
            Status::Fail | Status::Error(_) => self.failures += 1,
            Status::Skip(_) => self.skips += 1,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub identity: String,
    pub variant: String,
    #[serde(flatten)]
    pub counts: Counts,
}

#[derive(Debug, Clone, Serialize)]
pub struct FailureDetail {
    pub identity: String,
    pub variant: String,
    pub point: String,
    pub lhs: Option<String>,
    pub rhs: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Timing {
    pub workers: usize,
    pub total_ms: f64,
    pub per_identity_ms: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub tool: String,
    pub version: String,
    pub config: ConfigEcho,
    pub summary: Vec<Summary>,
    pub totals: Counts,
    pub failures: Vec<FailureDetail>,
    pub timing: Timing,
    #[serde(skip)]
    pub records: Vec<Record>,
}

fn ms(d: std::time::Duration) -> f64 {
    (d.as_secs_f64() * 1e6).round() / 1e3
}

impl RunReport {
    pub fn new(cfg: &SweepConfig, outcome: SweepOutcome) -> Self {
        let mut groups: BTreeMap<(&str, &str), Counts> = BTreeMap::new();
        let mut totals = Counts::default();
        let mut failures = Vec::new();
        for rec in &outcome.records {
            groups
                .entry((rec.id, rec.variant_name()))
                .or_default()
                .add(&rec.status);
            totals.add(&rec.status);
            if rec.is_failure() {
                failures.push(FailureDetail {
                    identity: rec.id.to_string(),
                    variant: rec.variant_name().to_string(),
                    point: rec.point.to_string(),
                    lhs: rec.lhs.as_ref().map(ToString::to_string),
                    rhs: rec.rhs.as_ref().map(ToString::to_string),
                    error: match &rec.status {
                        Status::Error(m) => Some(m.clone()),
                        _ => None,
                    },
                });
            }
        }
        let summary = groups
            .into_iter()
            .map(|((id, v), counts)| Summary {
                identity: id.into(),
                variant: v.into(),
                counts,
            })
            .collect();
        let identities = if cfg.all {
            vec!["all".to_string()]
        } else {
            cfg.identities.iter().map(|s| s.to_string()).collect()
        };
        let ranges = cfg
            .ranges
            .iter()
            .map(|(k, v)| (k.clone(), v.iter().map(ToString::to_string).collect()))
            .collect();
        RunReport {
            tool: TOOL.into(),
            version: VERSION.into(),
            config: ConfigEcho {
                identities,
                ranges,
                variant_policy: cfg.policy.to_string(),
            },
            summary,
            totals,
            failures,
            timing: Timing {
                workers: cfg.workers,
                total_ms: ms(outcome.total),
                per_identity_ms: outcome
                    .per_identity
                    .iter()
                    .map(|(k, v)| (k.to_string(), ms(*v)))
                    .collect(),
            },
            records: outcome.records,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.totals.failures == 0
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
            Format::Md => self.to_markdown(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["identity", "variant", "point", "lhs", "rhs", "pass"])
            .expect("in-memory write");
        for rec in &self.records {
            let pass = match rec.status {
                Status::Pass => "true",
                Status::Fail => "false",
                Status::Skip(_) => "skip",
                Status::Error(_) => "error",
            };
            let text = |v: &Option<hhlab::Rational>| {
                v.as_ref().map(ToString::to_string).unwrap_or_default()
            };
            w.write_record([
                rec.id,
                rec.variant_name(),
                &rec.point.to_string(),
                &text(&rec.lhs),
                &text(&rec.rhs),
                pass,
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv output is utf-8")
    }

    pub fn to_markdown(&self) -> String {
        let mut s = String::new();
        let c = &self.config;
        let _ = writeln!(s, "# {} sweep report\n", self.tool);
        let _ = writeln!(s, "- version: {}", self.version);
        let _ = writeln!(s, "- identities: {}", c.identities.join(", "));
        let _ = writeln!(s, "- variant policy: {}", c.variant_policy);
        if c.ranges.is_empty() {
            let _ = writeln!(s, "- ranges: standard grid");
        } else {
            let shown: Vec<String> = c
                .ranges
                .iter()
                .map(|(k, v)| format!("{k} = {}", v.join(" | ")))
                .collect();
            let _ = writeln!(s, "- ranges: {} (others standard)", shown.join("; "));
        }
        let _ = writeln!(s, "\n## Summary\n");
        let _ = writeln!(
            s,
            "| identity | variant | tested | passes | failures | skips |"
        );
        let _ = writeln!(s, "|---|---|---:|---:|---:|---:|");
        for row in &self.summary {
            let k = &row.counts;
            let _ = writeln!(
                s,
                "| {} | {} | {} | {} | {} | {} |",
                row.identity, row.variant, k.tested, k.passes, k.failures, k.skips
            );
        }
        let t = &self.totals;
        let _ = writeln!(
            s,
            "| **total** | | {} | {} | {} | {} |",
            t.tested, t.passes, t.failures, t.skips
        );

        let _ = writeln!(s, "\n## Failures\n");
        if self.failures.is_empty() {
            let _ = writeln!(s, "None.");
        }
        let mut grouped: BTreeMap<(&str, &str), Vec<&FailureDetail>> = BTreeMap::new();
        for f in &self.failures {
            grouped
                .entry((&f.identity, &f.variant))
                .or_default()
                .push(f);
        }
        for ((id, variant), rows) in grouped {
            let _ = writeln!(s, "### {id} ({variant})\n");
            let _ = writeln!(s, "| point | lhs | rhs |");
            let _ = writeln!(s, "|---|---|---|");
            for f in rows.iter().take(MD_FAILURE_ROWS) {
                let rhs = f
                    .error
                    .clone()
                    .or_else(|| f.rhs.clone())
                    .unwrap_or_default();
                let _ = writeln!(
                    s,
                    "| {} | {} | {} |",
                    f.point,
                    f.lhs.as_deref().unwrap_or(""),
                    rhs
                );
            }
            if rows.len() > MD_FAILURE_ROWS {
                let _ = writeln!(
                    s,
                    "\n{} more; the JSON and CSV reports list all of them.",
                    rows.len() - MD_FAILURE_ROWS
                );
            }
            s.push('\n');
        }

        let _ = writeln!(s, "\n## Timing\n");
        let _ = writeln!(s, "- workers: {}", self.timing.workers);
        let _ = writeln!(s, "- total: {:.3} ms\n", self.timing.total_ms);
        let _ = writeln!(s, "| identity | ms |");
        let _ = writeln!(s, "|---|---:|");
        for (id, v) in &self.timing.per_identity_ms {
            let _ = writeln!(s, "| {id} | {v:.3} |");
        }
        s
    }
}

/// The part of a rendered report that must match across runs.
pub fn comparable_body(format: Format, text: &str) -> String {
    match format {
        Format::Csv => text.to_string(),
        Format::Md => text.split("\n## Timing").next().unwrap_or(text).to_string(),
        Format::Json => {
            let mut v: serde_json::Value =
                serde_json::from_str(text).unwrap_or(serde_json::Value::Null);
            if let Some(obj) = v.as_object_mut() {
                obj.remove("timing");
            }
            serde_json::to_string_pretty(&v).unwrap_or_default()
        }
    }
}
