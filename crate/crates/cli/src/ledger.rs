//! The correction ledger.
//!
//! The ledger is a Markdown file with a hand-written table and a machine
//! section between two marker comments. The machine section lists every
//! failing point of a sweep, compressed into runs of the last parameter,
//! plus the first two counterexamples per identity and variant:
//!
//! ```text
//! fail thm1 paper p=1,r=1,s=1,n=1..25
//! example thm1 paper p=1,r=1,s=1,n=1 lhs=1/2 rhs=0
//! ```

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{CliError, CliResult};
use crate::sweep::Record;

pub const BEGIN: &str = "<!-- machine-section:begin -->";
pub const END: &str = "<!-- machine-section:end -->";
pub const EXAMPLES_PER_GROUP: usize = 2;

/// Renders the machine section (without markers) from sorted records.
pub fn machine_section(records: &[Record]) -> String {
    let mut groups: BTreeMap<(&str, &str), Vec<&Record>> = BTreeMap::new();
    for rec in records.iter().filter(|r| r.is_failure()) {
        groups
            .entry((rec.id, rec.variant_name()))
            .or_default()
            .push(rec);
    }
    let mut out = String::from("```text\n");
    out.push_str(
        "# regenerate: hhlab sweep --variant both --update-ledger ledger/CORRECTIONS.md\n",
    );
    if groups.is_empty() {
        out.push_str("# no failing points\n");
    }
    for ((id, variant), recs) in &groups {
        for line in compress(recs) {
            out.push_str(&format!("fail {id} {variant} {line}\n"));
        }
        for rec in recs.iter().take(EXAMPLES_PER_GROUP) {
            let show = |v: &Option<hhlab::Rational>| {
                v.as_ref().map_or("error".to_string(), ToString::to_string)
            };
            out.push_str(&format!(
                "example {id} {variant} {} lhs={} rhs={}\n",
                rec.point,
                show(&rec.lhs),
                show(&rec.rhs)
            ));
        }
    }
    out.push_str("```\n");
    out
}

/// Groups points sharing all but the last parameter and merges consecutive
/// last-parameter values into `lo..hi` runs.
fn compress(recs: &[&Record]) -> Vec<String> {
    let mut lines = Vec::new();
    let mut current: Option<(String, &str, i64, i64)> = None;
    for rec in recs {
        let entries = rec.point.entries();
        let (last_name, last) = *entries.last().expect("every identity has parameters");
        let prefix: Vec<String> = entries[..entries.len() - 1]
            .iter()
            .map(|(n, v)| format!("{n}={v}"))
            .collect();
        let prefix = prefix.join(",");
        match &mut current {
            Some((p, _, _, hi)) if *p == prefix && *hi + 1 == last => *hi = last,
            _ => {
                if let Some(run) = current.take() {
                    lines.push(render_run(run));
                }
                current = Some((prefix, last_name, last, last));
            }
        }
    }
    if let Some(run) = current {
        lines.push(render_run(run));
    }
    lines
}

fn render_run((prefix, name, lo, hi): (String, &str, i64, i64)) -> String {
    let sep = if prefix.is_empty() { "" } else { "," };
    if lo == hi {
        format!("{prefix}{sep}{name}={lo}")
    } else {
        format!("{prefix}{sep}{name}={lo}..{hi}")
    }
}

/// Replaces the machine section of `doc`, or appends one if absent.
pub fn splice(doc: &str, section: &str) -> String {
    match (doc.find(BEGIN), doc.find(END)) {
        (Some(b), Some(e)) if b < e => {
            format!("{}{BEGIN}\n{section}{}", &doc[..b], &doc[e..])
        }
        _ => format!("{doc}\n{BEGIN}\n{section}{END}\n"),
    }
}

/// The machine section of `doc`, without markers.
pub fn extract(doc: &str) -> CliResult<&str> {
    match (doc.find(BEGIN), doc.find(END)) {
        (Some(b), Some(e)) if b < e => Ok(doc[b + BEGIN.len()..e].trim_start_matches('\n')),
        _ => Err(CliError::usage("ledger has no machine section markers")),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Example {
    pub id: String,
    pub variant: String,
    pub point: String,
    pub lhs: String,
    pub rhs: String,
}

/// Parsed machine section: failing points expanded, plus examples.
#[derive(Debug, Clone, Default)]
pub struct Entries {
    /// `(identity, variant, point)`.
    pub fails: BTreeSet<(String, String, String)>,
    pub examples: Vec<Example>,
}

pub fn parse(section: &str) -> CliResult<Entries> {
    let mut entries = Entries::default();
    let bad = |line: &str| CliError::usage(format!("malformed ledger line {line:?}"));
    for line in section.lines().map(str::trim) {
        if line.is_empty() || line.starts_with('#') || line.starts_with("```") {
            continue;
        }
        let mut parts = line.split_whitespace();
        match parts.next() {
            Some("fail") => {
                let (id, variant, spec) = (parts.next(), parts.next(), parts.next());
                let (Some(id), Some(variant), Some(spec)) = (id, variant, spec) else {
                    return Err(bad(line));
                };
                for point in expand(spec).ok_or_else(|| bad(line))? {
                    entries.fails.insert((id.into(), variant.into(), point));
                }
            }
            Some("example") => {
                let fields: Vec<&str> = parts.collect();
                let [id, variant, point, lhs, rhs] = fields[..] else {
                    return Err(bad(line));
                };
                let (Some(lhs), Some(rhs)) = (lhs.strip_prefix("lhs="), rhs.strip_prefix("rhs="))
                else {
                    return Err(bad(line));
                };
                entries.examples.push(Example {
                    id: id.into(),
                    variant: variant.into(),
                    point: point.into(),
                    lhs: lhs.into(),
                    rhs: rhs.into(),
                });
            }
            _ => return Err(bad(line)),
        }
    }
    Ok(entries)
}

/// `p=1,n=2..4` becomes `p=1,n=2`, `p=1,n=3`, `p=1,n=4`.
fn expand(spec: &str) -> Option<Vec<String>> {
    let (prefix, last) = match spec.rsplit_once(',') {
        Some((p, l)) => (format!("{p},"), l),
        None => (String::new(), spec),
    };
    let (name, values) = last.split_once('=')?;
    let (lo, hi) = match values.split_once("..") {
        Some((lo, hi)) => (lo.parse::<i64>().ok()?, hi.parse::<i64>().ok()?),
        None => {
            let v = values.parse::<i64>().ok()?;
            (v, v)
        }
    };
    Some((lo..=hi).map(|v| format!("{prefix}{name}={v}")).collect())
}
