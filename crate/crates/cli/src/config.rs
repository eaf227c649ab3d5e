//! Sweep configuration.
//!
//! A config file is flat `key = value` text. Parameter keys take ranges and
//! may repeat; repeated ranges for one parameter are unioned:
//!
//! ```text
//! # thm1 and thm2 on a wider grid
//! ids = thm1, thm2
//! n = 1..25
//! n = 40..50
//! q = r..r+3
//! variant = both
//! format = md
//! workers = 4
//! ```
//!
//! Command-line flags override the file: a range flag for a parameter
//! replaces every file range for that parameter.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use hhlab::{Bound, ParamRange, Registry};

use crate::error::{CliError, CliResult};

/// Which right-hand sides a sweep evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VariantPolicy {
    /// Only the printed statements.
    Paper,
    /// The corrected variant where one exists, otherwise the printed one.
    Corrected,
    /// Every registered variant.
    Both,
}

impl FromStr for VariantPolicy {
    type Err = CliError;
    fn from_str(s: &str) -> CliResult<Self> {
        match s.trim() {
            "paper" => Ok(VariantPolicy::Paper),
            "corrected" => Ok(VariantPolicy::Corrected),
            "both" => Ok(VariantPolicy::Both),
            other => Err(CliError::usage(format!(
                "unknown variant policy {other:?} (paper, corrected, both)"
            ))),
        }
    }
}

impl fmt::Display for VariantPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VariantPolicy::Paper => "paper",
            VariantPolicy::Corrected => "corrected",
            VariantPolicy::Both => "both",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Md,
}

impl FromStr for Format {
    type Err = CliError;
    fn from_str(s: &str) -> CliResult<Self> {
        match s.trim() {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "md" => Ok(Format::Md),
            other => Err(CliError::usage(format!(
                "unknown format {other:?} (json, csv, md)"
            ))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Md => "md",
        })
    }
}

impl Format {
    fn from_extension(path: &std::path::Path) -> Option<Format> {
        match path.extension()?.to_str()? {
            "json" => Some(Format::Json),
            "csv" => Some(Format::Csv),
            "md" => Some(Format::Md),
            _ => None,
        }
    }
}

/// Largest admissible value per parameter name.
pub fn soft_limit(name: &str) -> i64 {
    match name {
        "n" | "l" => 500,
        _ => 10,
    }
}

#[derive(Debug, Clone)]
pub struct SweepConfig {
    /// Identity ids in registry order.
    pub identities: Vec<&'static str>,
    /// Whether the filter was `all`.
    pub all: bool,
    pub ranges: BTreeMap<String, Vec<ParamRange>>,
    pub policy: VariantPolicy,
    pub format: Format,
    pub output: Option<PathBuf>,
    pub workers: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        ConfigBuilder::default()
            .finish()
            .expect("the default configuration is valid")
    }
}

/// Collects settings from a file and from flags, then validates.
#[derive(Debug, Default, Clone)]
pub struct ConfigBuilder {
    ids: Option<Vec<String>>,
    ranges: BTreeMap<String, Vec<ParamRange>>,
    policy: Option<VariantPolicy>,
    format: Option<Format>,
    output: Option<PathBuf>,
    workers: Option<usize>,
}

fn parse_ids(value: &str) -> Vec<String> {
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(String::from)
        .collect()
}

fn parse_range(key: &str, value: &str) -> CliResult<ParamRange> {
    value
        .trim()
        .parse()
        .map_err(|e| CliError::usage(format!("range for {key}: {e}")))
}

fn is_param_name(key: &str) -> bool {
    !key.is_empty() && key.len() <= 2 && key.chars().all(|c| c.is_ascii_lowercase())
}

impl ConfigBuilder {
    /// Reads `key = value` lines; `#` starts a comment.
    pub fn apply_file(&mut self, text: &str) -> CliResult<()> {
        let mut file_ranges: BTreeMap<String, Vec<ParamRange>> = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::usage(format!("config line {}: expected key = value", lineno + 1))
            })?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "ids" | "identities" => self
                    .ids
                    .get_or_insert_with(Vec::new)
                    .extend(parse_ids(value)),
                "variant" => self.policy = Some(value.parse()?),
                "format" => self.format = Some(value.parse()?),
                "output" => self.output = Some(PathBuf::from(value)),
                "workers" => self.workers = Some(parse_workers(value)?),
                k if is_param_name(k) => file_ranges
                    .entry(k.to_string())
                    .or_default()
                    .push(parse_range(k, value)?),
                other => {
                    return Err(CliError::usage(format!(
                        "config line {}: unknown key {other:?}",
                        lineno + 1
                    )))
                }
            }
        }
        for (k, v) in file_ranges {
            self.ranges.entry(k).or_default().extend(v);
        }
        Ok(())
    }

    pub fn ids(&mut self, ids: &[String]) {
        if !ids.is_empty() {
            self.ids = Some(ids.iter().flat_map(|s| parse_ids(s)).collect());
        }
    }

    /// Applies `name=range` flags; they replace file ranges for that name.
    pub fn range_flags(&mut self, flags: &[String]) -> CliResult<()> {
        let mut by_name: BTreeMap<String, Vec<ParamRange>> = BTreeMap::new();
        for flag in flags {
            let (k, v) = flag.split_once('=').ok_or_else(|| {
                CliError::usage(format!("--range expects name=lo..hi, got {flag:?}"))
            })?;
            let k = k.trim();
            if !is_param_name(k) {
                return Err(CliError::usage(format!(
                    "--range: bad parameter name {k:?}"
                )));
            }
            by_name
                .entry(k.to_string())
                .or_default()
                .push(parse_range(k, v)?);
        }
        self.ranges.extend(by_name);
        Ok(())
    }

    pub fn policy(&mut self, policy: Option<VariantPolicy>) {
        if policy.is_some() {
            self.policy = policy;
        }
    }

    pub fn format(&mut self, format: Option<Format>) {
        if format.is_some() {
            self.format = format;
        }
    }

    pub fn output(&mut self, output: Option<PathBuf>) {
        if output.is_some() {
            self.output = output;
        }
    }

    pub fn workers(&mut self, workers: Option<usize>) {
        if workers.is_some() {
            self.workers = workers;
        }
    }

    pub fn finish(self) -> CliResult<SweepConfig> {
        let registry = Registry::standard();
        let ids = self.ids.unwrap_or_else(|| vec!["all".to_string()]);
        if ids.is_empty() {
            return Err(CliError::usage("empty identity filter"));
        }
        let all = ids.iter().any(|s| s == "all");
        let identities: Vec<&'static str> = if all {
            registry.iter().map(|r| r.id).collect()
        } else {
            for id in &ids {
                registry.get(id)?;
            }
            registry
                .iter()
                .map(|r| r.id)
                .filter(|id| ids.iter().any(|s| s == id))
                .collect()
        };
        for (name, list) in &self.ranges {
            for range in list {
                if let (Bound::Const(lo), Bound::Const(hi)) = (&range.lo, &range.hi) {
                    if lo > hi {
                        return Err(CliError::usage(format!("empty range {name} = {range}")));
                    }
                }
                for b in [&range.lo, &range.hi] {
                    if let Bound::Const(v) = b {
                        if *v > soft_limit(name) {
                            return Err(CliError::usage(format!(
                                "range {name} = {range} exceeds the soft limit {name} <= {}",
                                soft_limit(name)
                            )));
                        }
                    }
                }
            }
        }
        let format = self
            .format
            .or_else(|| self.output.as_deref().and_then(Format::from_extension))
            .unwrap_or(Format::Json);
        let workers = self.workers.unwrap_or_else(|| {
            std::thread::available_parallelism()
                .map(|n| n.get())
                .unwrap_or(1)
        });
        if workers == 0 {
            return Err(CliError::usage("workers must be at least 1"));
        }
        Ok(SweepConfig {
            identities,
            all,
            ranges: self.ranges,
            policy: self.policy.unwrap_or(VariantPolicy::Corrected),
            format,
            output: self.output,
            workers,
        })
    }
}

fn parse_workers(value: &str) -> CliResult<usize> {
    value
        .trim()
        .parse()
        .map_err(|_| CliError::usage(format!("workers must be a positive integer, got {value:?}")))
}
