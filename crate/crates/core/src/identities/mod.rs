//! Registry of summation identities.
//!
//! Each [`Identity`] pairs a brute-force left-hand side with one or more
//! closed-form right-hand sides. The two sides live in separate modules and
//! see different inputs: [`oracle`] evaluators only get a [`SeqCache`] and
//! sum term by term, [`closed`] evaluators only get a [`Coefficients`]
//! engine and never iterate the defining sum. A verification is the exact
//! comparison of the two.
//!
//! Every identity carries a `paper` variant that transcribes the printed
//! statement. A `corrected` variant exists only where the printed one fails
//! at some point of the standard sweep.

mod catalog;
pub mod closed;
pub mod oracle;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use crate::coefficients::Coefficients;
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::sequences::SeqCache;

pub use catalog::{corollary_readings, CorollaryReadings};

/// How a parameter is used, mirroring the letters of the summation formulas.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Role {
    /// Upper summation limit or a point inside it.
    N,
    /// Power or rising-factorial weight.
    P,
    /// Generalized harmonic order.
    Q,
    /// Hyperharmonic order of the first factor.
    R,
    /// Hyperharmonic order of the second factor.
    S,
}

/// One end of a parameter range: a constant or another parameter plus an
/// offset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bound {
    Const(i64),
    Rel(String, i64),
}

impl Bound {
    pub fn resolve(&self, known: &BTreeMap<&str, i64>) -> Option<i64> {
        match self {
            Bound::Const(v) => Some(*v),
            Bound::Rel(name, off) => known.get(name.as_str()).map(|v| v + off),
        }
    }

    pub fn depends_on(&self) -> Option<&str> {
        match self {
            Bound::Const(_) => None,
            Bound::Rel(name, _) => Some(name),
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Const(v) => write!(f, "{v}"),
            Bound::Rel(name, 0) => write!(f, "{name}"),
            Bound::Rel(name, off) if *off > 0 => write!(f, "{name}+{off}"),
            Bound::Rel(name, off) => write!(f, "{name}{off}"),
        }
    }
}

impl FromStr for Bound {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("range bound {s:?}"));
        if let Ok(v) = s.parse::<i64>() {
            return Ok(Bound::Const(v));
        }
        let split = s.find(['+', '-']).unwrap_or(s.len());
        let (name, rest) = s.split_at(split);
        if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphabetic()) {
            return Err(bad());
        }
        let off = match rest {
            "" => 0,
            r => r.parse::<i64>().map_err(|_| bad())?,
        };
        Ok(Bound::Rel(name.to_string(), off))
    }
}

/// Inclusive range `lo..hi`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamRange {
    pub lo: Bound,
    pub hi: Bound,
}

impl ParamRange {
    pub fn new(lo: i64, hi: i64) -> Self {
        ParamRange {
            lo: Bound::Const(lo),
            hi: Bound::Const(hi),
        }
    }
}

impl fmt::Display for ParamRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)
    }
}

impl FromStr for ParamRange {
    type Err = Error;
    /// `1..25`, `r..r+3`, `0..n`, or a single value `5`.
    fn from_str(s: &str) -> Result<Self> {
        match s.split_once("..") {
            Some((lo, hi)) => Ok(ParamRange {
                lo: lo.parse()?,
                hi: hi.parse()?,
            }),
            None => {
                let b: Bound = s.parse()?;
                Ok(ParamRange {
                    lo: b.clone(),
                    hi: b,
                })
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct Param {
    pub name: &'static str,
    pub role: Role,
    /// Smallest admissible value.
    pub min: i64,
    /// Range used by the standard sweep.
    pub default_range: ParamRange,
}

/// Extra admissibility condition on a point, beyond the per-parameter
/// minimums.
#[derive(Clone)]
pub struct Constraint {
    pub label: &'static str,
    pub check: fn(&Point) -> bool,
}

impl fmt::Debug for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label)
    }
}

/// A parameter assignment, in the identity's declared parameter order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Point(Vec<(&'static str, i64)>);

impl Point {
    pub fn get(&self, name: &str) -> i64 {
        self.0
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, v)| *v)
            .unwrap_or_else(|| panic!("point {self} has no parameter {name}"))
    }

    /// Non-negative parameter as `u32`; admissibility is checked before any
    /// evaluator runs.
    pub fn u(&self, name: &str) -> u32 {
        u32::try_from(self.get(name)).expect("parameter admissibility is checked before evaluation")
    }

    pub fn values(&self) -> impl Iterator<Item = i64> + '_ {
        self.0.iter().map(|(_, v)| *v)
    }

    pub fn entries(&self) -> &[(&'static str, i64)] {
        &self.0
    }
}

impl PartialOrd for Point {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Point {
    fn cmp(&self, other: &Self) -> Ordering {
        self.values().cmp(other.values())
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (n, v)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{n}={v}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    Paper,
    Corrected,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::Paper => "paper",
            Variant::Corrected => "corrected",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper" => Ok(Variant::Paper),
            "corrected" => Ok(Variant::Corrected),
            _ => Err(Error::Parse(format!("variant {s:?}"))),
        }
    }
}

pub type OracleFn = fn(&SeqCache, &Point) -> Rational;
pub type ClosedFn = fn(&Coefficients, &Point) -> Rational;

/// A registered identity.
#[derive(Clone)]
pub struct Identity {
    pub id: &'static str,
    /// The left-hand side, in plain text.
    pub summary: &'static str,
    pub params: Vec<Param>,
    pub constraints: Vec<Constraint>,
    pub(crate) lhs: OracleFn,
    pub(crate) variants: Vec<(Variant, ClosedFn)>,
    pub notes: &'static str,
}

impl fmt::Debug for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Identity")
            .field("id", &self.id)
            .field("params", &self.param_names())
            .field("constraints", &self.constraints)
            .field("variants", &self.variant_tags())
            .finish()
    }
}

impl Identity {
    pub fn param_names(&self) -> Vec<&'static str> {
        self.params.iter().map(|p| p.name).collect()
    }

    pub fn variant_tags(&self) -> Vec<Variant> {
        self.variants.iter().map(|(v, _)| *v).collect()
    }

    pub fn has_variant(&self, variant: Variant) -> bool {
        self.variants.iter().any(|(v, _)| *v == variant)
    }

    /// The variant a "best available" policy runs: corrected when present,
    /// otherwise paper. `None` for oracle-only rows.
    pub fn preferred_variant(&self) -> Option<Variant> {
        if self.has_variant(Variant::Corrected) {
            Some(Variant::Corrected)
        } else if self.has_variant(Variant::Paper) {
            Some(Variant::Paper)
        } else {
            None
        }
    }

    /// All constraint labels, including the per-parameter minimums.
    pub fn constraint_labels(&self) -> Vec<String> {
        self.params
            .iter()
            .map(|p| format!("{} >= {}", p.name, p.min))
            .chain(self.constraints.iter().map(|c| c.label.to_string()))
            .collect()
    }

    /// Builds a point from `(name, value)` pairs, in any order.
    pub fn point(&self, pairs: &[(&str, i64)]) -> Result<Point> {
        for (name, _) in pairs {
            if !self.params.iter().any(|p| p.name == *name) {
                return Err(Error::UnexpectedParam {
                    id: self.id.into(),
                    param: (*name).into(),
                });
            }
        }
        let entries = self
            .params
            .iter()
            .map(|p| {
                pairs
                    .iter()
                    .find(|(n, _)| *n == p.name)
                    .map(|(_, v)| (p.name, *v))
                    .ok_or_else(|| Error::MissingParam {
                        id: self.id.into(),
                        param: p.name.into(),
                    })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Point(entries))
    }

    /// Checks minimums and constraints, naming the first violated predicate.
    pub fn check(&self, point: &Point) -> Result<()> {
        for p in &self.params {
            if point.get(p.name) < p.min {
                return Err(Error::Constraint {
                    id: self.id.into(),
                    predicate: format!("{} >= {}", p.name, p.min),
                });
            }
        }
        for c in &self.constraints {
            if !(c.check)(point) {
                return Err(Error::Constraint {
                    id: self.id.into(),
                    predicate: c.label.into(),
                });
            }
        }
        Ok(())
    }

    /// Cross product of the parameter ranges, with `overrides` replacing the
    /// defaults by name; several ranges for one name are unioned. Relative
    /// bounds are resolved per point. Points are returned in ascending order
    /// and may violate constraints; callers decide whether to skip them.
    pub fn grid(&self, overrides: &BTreeMap<String, Vec<ParamRange>>) -> Result<Vec<Point>> {
        let ranges: Vec<(&'static str, &[ParamRange])> = self
            .params
            .iter()
            .map(|p| match overrides.get(p.name) {
                Some(list) if !list.is_empty() => (p.name, list.as_slice()),
                _ => (p.name, std::slice::from_ref(&p.default_range)),
            })
            .collect();
        for (name, list) in &ranges {
            for range in list.iter() {
                for dep in [&range.lo, &range.hi].iter().filter_map(|b| b.depends_on()) {
                    if dep == *name || !ranges.iter().any(|(n, _)| *n == dep) {
                        return Err(Error::OutOfRange(format!(
                            "range {name} = {range} refers to {dep}, which {} cannot resolve",
                            self.id
                        )));
                    }
                }
            }
        }
        let mut order: Vec<usize> = Vec::new();
        while order.len() < ranges.len() {
            let before = order.len();
            for (i, (_, list)) in ranges.iter().enumerate() {
                let ready =
                    list.iter()
                        .flat_map(|r| [&r.lo, &r.hi])
                        .all(|b| match b.depends_on() {
                            None => true,
                            Some(dep) => order.iter().any(|&j| ranges[j].0 == dep),
                        });
                if ready && !order.contains(&i) {
                    order.push(i);
                }
            }
            if order.len() == before {
                return Err(Error::OutOfRange(format!(
                    "circular parameter ranges for {}",
                    self.id
                )));
            }
        }
        let mut out = Vec::new();
        let mut known = BTreeMap::new();
        self.enumerate(&ranges, &order, &mut known, &mut out);
        out.sort();
        Ok(out)
    }

    fn enumerate(
        &self,
        ranges: &[(&'static str, &[ParamRange])],
        order: &[usize],
        known: &mut BTreeMap<&'static str, i64>,
        out: &mut Vec<Point>,
    ) {
        let Some((&i, rest)) = order.split_first() else {
            let entries = self
                .params
                .iter()
                .map(|p| (p.name, known[p.name]))
                .collect();
            out.push(Point(entries));
            return;
        };
        let (name, list) = ranges[i];
        let mut values = std::collections::BTreeSet::new();
        for range in list {
            let lo = range
                .lo
                .resolve(known)
                .expect("dependencies resolved first");
            let hi = range
                .hi
                .resolve(known)
                .expect("dependencies resolved first");
            values.extend(lo..=hi);
        }
        for v in values {
            known.insert(name, v);
            self.enumerate(ranges, rest, known, out);
        }
        known.remove(name);
    }

    pub fn oracle_lhs(&self, seq: &SeqCache, point: &Point) -> Result<Rational> {
        self.check(point)?;
        Ok((self.lhs)(seq, point))
    }

    pub fn closed_rhs(
        &self,
        coeffs: &Coefficients,
        point: &Point,
        variant: Variant,
    ) -> Result<Rational> {
        let f = self
            .variants
            .iter()
            .find(|(v, _)| *v == variant)
            .map(|(_, f)| *f)
            .ok_or_else(|| Error::UnknownVariant {
                id: self.id.into(),
                variant: variant.name().into(),
            })?;
        self.check(point)?;
        Ok(f(coeffs, point))
    }

    /// Compares both sides exactly. The oracle reads only the sequence
    /// cache behind `coeffs`, never the coefficient memo.
    pub fn verify(
        &self,
        coeffs: &Coefficients,
        point: &Point,
        variant: Variant,
    ) -> Result<VerificationResult> {
        if !self.has_variant(variant) {
            return Err(Error::UnknownVariant {
                id: self.id.into(),
                variant: variant.name().into(),
            });
        }
        self.check(point)?;
        let start = Instant::now();
        let lhs = self.oracle_lhs(coeffs.seq(), point);
        let rhs = self.closed_rhs(coeffs, point, variant);
        let elapsed = start.elapsed();
        Ok(match (lhs, rhs) {
            (Ok(lhs), Ok(rhs)) => {
                let outcome = if lhs == rhs {
                    Outcome::Pass
                } else {
                    Outcome::Fail
                };
                VerificationResult {
                    id: self.id,
                    point: point.clone(),
                    variant,
                    lhs: Some(lhs),
                    rhs: Some(rhs),
                    outcome,
                    elapsed,
                }
            }
            (lhs, rhs) => {
                let msg = [lhs.as_ref().err(), rhs.as_ref().err()]
                    .into_iter()
                    .flatten()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join("; ");
                VerificationResult {
                    id: self.id,
                    point: point.clone(),
                    variant,
                    lhs: lhs.ok(),
                    rhs: rhs.ok(),
                    outcome: Outcome::Error(msg),
                    elapsed,
                }
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
    Error(String),
}

/// One (identity, point, variant) check. `pass` holds iff both sides were
/// computed and are equal.
#[derive(Debug, Clone)]
pub struct VerificationResult {
    pub id: &'static str,
    pub point: Point,
    pub variant: Variant,
    pub lhs: Option<Rational>,
    pub rhs: Option<Rational>,
    pub outcome: Outcome,
    pub elapsed: Duration,
}

impl VerificationResult {
    pub fn pass(&self) -> bool {
        self.outcome == Outcome::Pass
    }
}

/// The identity catalog, in a stable order.
#[derive(Debug)]
pub struct Registry {
    rows: Vec<Identity>,
}

impl Registry {
    /// The shared catalog.
    pub fn standard() -> &'static Registry {
        static REGISTRY: OnceLock<Registry> = OnceLock::new();
        REGISTRY.get_or_init(|| Registry {
            rows: catalog::rows(),
        })
    }

    pub fn iter(&self) -> impl Iterator<Item = &Identity> {
        self.rows.iter()
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn get(&self, id: &str) -> Result<&Identity> {
        self.rows
            .iter()
            .find(|r| r.id == id)
            .ok_or_else(|| Error::UnknownIdentity(id.into()))
    }

    pub fn verify(
        &self,
        id: &str,
        pairs: &[(&str, i64)],
        variant: Variant,
        coeffs: &Coefficients,
    ) -> Result<VerificationResult> {
        let row = self.get(id)?;
        let point = row.point(pairs)?;
        row.verify(coeffs, &point, variant)
    }
}
