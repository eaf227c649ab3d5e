//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails. Spot values are recomputed here from their definitions
//! with plain loops, independent of the library's own evaluators.

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::{Command, Stdio};
use std::sync::{Arc, OnceLock};
use std::time::{Duration, Instant};

use hhlab::{AhatTable, Coefficients, HyperRoute, ParamRange, Rational, Registry, SeqCache};
use num_bigint::BigInt;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn frac(a: i64, b: i64) -> Rational {
    Rational::new(a, b).expect("non-zero denominator")
}

/// `sum_{j=1}^n j^(-q)` for any integer `q`.
fn local_harmonic(n: i64, q: i64) -> Rational {
    (1..=n)
        .map(|j| {
            let p = hhlab::int_pow(j, q.unsigned_abs() as u32);
            if q >= 0 {
                p.recip().expect("j >= 1")
            } else {
                p
            }
        })
        .sum()
}

/// `H_n^(p,r)` by `r - 1` rounds of partial sums, for `0 <= n <= n_max`.
fn local_gen_hyper(n_max: i64, p: i64, r: u32) -> Vec<Rational> {
    let mut row: Vec<Rational> = (0..=n_max).map(|n| local_harmonic(n, p)).collect();
    for _ in 1..r {
        let mut acc = Rational::zero();
        row = row
            .into_iter()
            .map(|v| {
                acc = &acc + &v;
                acc.clone()
            })
            .collect();
    }
    row
}

fn falling_int(x: i64, n: i64) -> BigInt {
    (0..n).map(|i| BigInt::from(x - i)).product()
}

fn coeffs() -> Coefficients {
    Coefficients::new(Arc::new(SeqCache::new()))
}

fn ranges(spec: &[(&str, &str)]) -> BTreeMap<String, Vec<ParamRange>> {
    spec.iter()
        .map(|(k, v)| (k.to_string(), vec![v.parse().expect("valid range")]))
        .collect()
}

/// Verifies the preferred variant of each row on its grid. Returns the
/// number of points checked.
fn check_rows(c: &Coefficients, ids: &[&str], spec: &[(&str, &str)]) -> Result<usize, String> {
    let mut count = 0;
    for id in ids {
        let row = Registry::standard().get(id).map_err(|e| e.to_string())?;
        let variant = row
            .preferred_variant()
            .ok_or(format!("{id} has no closed form"))?;
        let wanted: BTreeMap<String, Vec<ParamRange>> = ranges(spec)
            .into_iter()
            .filter(|(k, _)| row.param_names().contains(&k.as_str()))
            .collect();
        for point in row.grid(&wanted).map_err(|e| e.to_string())? {
            if row.check(&point).is_err() {
                continue;
            }
            let res = row.verify(c, &point, variant).map_err(|e| e.to_string())?;
            if !res.pass() {
                return Err(format!(
                    "{id} {variant} fails at {point}: lhs={:?} rhs={:?}",
                    res.lhs, res.rhs
                ));
            }
            count += 1;
        }
    }
    Ok(count)
}

fn within(elapsed: Duration, limit: Duration, what: &str) -> Result<(), String> {
    if elapsed < limit {
        Ok(())
    } else {
        Err(format!("{what} took {elapsed:.2?}, limit {limit:?}"))
    }
}

fn criterion_1() -> Outcome {
    let seq = SeqCache::new();
    let start = Instant::now();
    for r in 1..=6 {
        for n in 0..=40 {
            let [a, b, c] = HyperRoute::ALL.map(|route| seq.hyperharmonic(n, r, route));
            if a != b || b != c {
                return Err(format!("routes disagree at n={n}, r={r}: {a} {b} {c}"));
            }
        }
    }
    let t = start.elapsed();
    within(t, Duration::from_secs(5), "triple-route check")?;
    Ok(format!("246 points, {t:.2?}"))
}

fn criterion_2() -> Outcome {
    let seq = SeqCache::new();
    let s1 = |n: i64, k: i64| seq.stirling_first(n as u32, k);
    let s2 = |n: i64, k: i64| seq.stirling_second(n as u32, k);
    for n in 0..=12i64 {
        for m in 0..=12i64 {
            let delta = BigInt::from(i32::from(n == m));
            let a: BigInt = (0..=12).map(|k| s1(n, k) * s2(k, m)).sum();
            let b: BigInt = (0..=12).map(|k| s2(n, k) * s1(k, m)).sum();
            if a != delta || b != delta {
                return Err(format!("orthogonality fails at n={n}, m={m}"));
            }
        }
        let fact: BigInt = (1..=n).map(BigInt::from).product();
        let unsigned: BigInt = (0..=n).map(|k| seq.stirling_unsigned(n as u32, k)).sum();
        if unsigned != fact {
            return Err(format!("unsigned row sum {n} is {unsigned}, want {fact}"));
        }
        for x in -5..=5i64 {
            let falling: BigInt = (0..=n)
                .map(|k| s1(n, k) * BigInt::from(x).pow(k as u32))
                .sum();
            let power: BigInt = (0..=n).map(|k| s2(n, k) * falling_int(x, k)).sum();
            if falling != falling_int(x, n) || power != BigInt::from(x).pow(n as u32) {
                return Err(format!("basis change fails at n={n}, x={x}"));
            }
        }
    }
    // Bell numbers from the Bell triangle
    let mut bell = vec![BigInt::from(1)];
    let mut row = vec![BigInt::from(1)];
    for _ in 0..12 {
        let mut next = vec![row.last().unwrap().clone()];
        for v in &row {
            let x = next.last().unwrap() + v;
            next.push(x);
        }
        bell.push(next[0].clone());
        row = next;
    }
    for n in 0..=12 {
        let sum: BigInt = (0..=n).map(|k| s2(n, k)).sum();
        if sum != bell[n as usize] {
            return Err(format!("Bell number {n}"));
        }
    }
    for k in 0..=20i64 {
        let lhs: Rational = (0..=k)
            .map(|j| hhlab::binomial(k + 1, j) * seq.bernoulli_plus(j as u32))
            .sum();
        if lhs != k + 1 {
            return Err(format!("Bernoulli recurrence fails at k={k}"));
        }
    }
    let firsts: Vec<String> = (0..=4).map(|n| seq.bernoulli_plus(n).to_string()).collect();
    if firsts != ["1", "1/2", "1/6", "0", "-1/30"] {
        return Err(format!("B+ starts {firsts:?}"));
    }
    Ok("n <= 12, x in [-5,5], k <= 20".into())
}

fn criterion_3() -> Outcome {
    let c = coeffs();
    let ids = [
        "base_a", "base_b", "base_c", "base_d", "base_e", "base_fg", "base_h",
    ];
    let count = check_rows(&c, &ids, &[("k", "0..5"), ("n", "0..30"), ("r", "1..6")])?;
    let g = c.spiess_g(1, 2);
    if g != frac(-1, 2) {
        return Err(format!("G(1,2) = {g}"));
    }
    // sum_{l<=2} l (H_l)^2 = 1 + 2 (3/2)^2
    let lhs = frac(11, 2);
    let (a, f, h2) = (c.spiess_a(1, 2), c.spiess_f(1, 2), frac(3, 2));
    if &a * &h2 * &h2 - f * h2 + g != lhs {
        return Err("G(1,2) does not close the k=1, n=2 instance".into());
    }
    Ok(format!("{count} points over 7 rows, G(1,2) = -1/2"))
}

fn criterion_4() -> Outcome {
    let c = coeffs();
    let start = Instant::now();
    let count = check_rows(
        &c,
        &["bhh6", "bhh4", "bhh5", "cor_h2conv"],
        &[("n", "1..100")],
    )?;
    let t = start.elapsed();
    let h: Vec<Rational> = (0..=100).map(|n| local_harmonic(n, 1)).collect();
    let row = Registry::standard().get("bhh6").unwrap();
    for n in [1i64, 2, 3, 10, 57, 100] {
        let local: Rational = (1..=n)
            .map(|l| Rational::from(l) * &h[l as usize] * &h[(n - l) as usize])
            .sum();
        let point = row.point(&[("n", n)]).unwrap();
        if row.oracle_lhs(c.seq(), &point).unwrap() != local {
            return Err(format!("bhh6 oracle differs from a plain loop at n={n}"));
        }
    }
    within(t, Duration::from_secs(10), "convolution check")?;
    Ok(format!("{count} points, {t:.2?}"))
}

fn criterion_5() -> Outcome {
    let c = coeffs();
    let ids = ["kamano5", "kamano6", "lemma3", "lemma4", "lemma5", "lemma6"];
    let count = check_rows(
        &c,
        &ids,
        &[("r", "1..5"), ("s", "1..5"), ("n", "0..20"), ("l", "0..n")],
    )?;
    let free = check_rows(
        &c,
        &["a4_expansion", "a5_expansion"],
        &[("r", "1..5"), ("l", "0..20")],
    )?;
    Ok(format!("{} points", count + free))
}

fn criterion_6() -> Outcome {
    let c = coeffs();
    let count = check_rows(
        &c,
        &["lemma7"],
        &[("r", "1..5"), ("p", "r..8"), ("n", "0..25")],
    )?;
    let table = AhatTable::build(5, c.seq());
    let row2 = [table.get(2, 0, 0), table.get(2, 0, 1), table.get(2, 1, 0)];
    if row2 != [Rational::from(1), Rational::from(1), Rational::from(-1)] {
        return Err(format!("ahat(2,.,.) = {row2:?}"));
    }
    for r in 1..=5u32 {
        for p in i64::from(r)..=8 {
            let direct = local_gen_hyper(25, p, r);
            for n in 0..=25i64 {
                let mut expansion = Rational::zero();
                for m in 0..i64::from(r) {
                    for j in 0..i64::from(r) - m {
                        expansion += table.get(r, m, j)
                            * hhlab::int_pow(n, j as u32)
                            * local_harmonic(n, p - m);
                    }
                }
                if expansion != direct[n as usize] {
                    return Err(format!("ahat expansion fails at r={r}, p={p}, n={n}"));
                }
            }
        }
    }
    Ok(format!(
        "{count} registry points plus the table expansion, ahat(2) = (1, 1, -1)"
    ))
}

fn criterion_7() -> Outcome {
    let c = coeffs();
    let count = check_rows(
        &c,
        &["lemma8", "thm6"],
        &[("p", "1..4"), ("r", "1..5"), ("n", "2..25")],
    )?;
    // sum_{l=0}^3 l H_{3-l} and sum_{k=1}^3 C(k,1) H_{3-k}
    let h = |n: i64| local_harmonic(n, 1);
    let thm6_local: Rational = (0..=3).map(|l| Rational::from(l) * h(3 - l)).sum();
    let lemma8_local: Rational = (1..=3).map(|k| Rational::from(k) * h(3 - k)).sum();
    for (id, local) in [("thm6", thm6_local), ("lemma8", lemma8_local)] {
        let row = Registry::standard().get(id).unwrap();
        let point = row.point(&[("p", 1), ("r", 1), ("n", 3)]).unwrap();
        let res = row
            .verify(&c, &point, row.preferred_variant().unwrap())
            .unwrap();
        if local != frac(7, 2) || res.lhs != Some(local.clone()) || res.rhs != Some(local) {
            return Err(format!("{id} worked point differs from 7/2"));
        }
    }
    Ok(format!("{count} points, worked point 7/2 = 7/2"))
}

fn hhlab_bin() -> &'static str {
    env!("CARGO_BIN_EXE_hhlab")
}

fn repo_file(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../..")
        .join(rel)
}

struct SweepRun {
    code: i32,
    report: String,
    elapsed: Duration,
}

fn sweep(extra: &[&str]) -> SweepRun {
    let dir = tempfile::tempdir().expect("temp dir");
    let out = dir.path().join("report.json");
    let start = Instant::now();
    let status = Command::new(hhlab_bin())
        .args(["sweep", "--workers", "4", "--output"])
        .arg(&out)
        .args(extra)
        .env_remove("HHLAB_CACHE_DIR")
        .stderr(Stdio::null())
        .status()
        .expect("binary runs");
    let elapsed = start.elapsed();
    SweepRun {
        code: status.code().unwrap_or(-1),
        report: std::fs::read_to_string(&out).unwrap_or_default(),
        elapsed,
    }
}

fn default_sweep() -> &'static SweepRun {
    static RUN: OnceLock<SweepRun> = OnceLock::new();
    RUN.get_or_init(|| sweep(&[]))
}

fn criterion_8() -> Outcome {
    let corrected = default_sweep();
    let json: serde_json::Value =
        serde_json::from_str(&corrected.report).map_err(|e| e.to_string())?;
    if corrected.code != 0 || json["totals"]["failures"] != 0 {
        return Err(format!(
            "corrected sweep: exit {}, failures {}",
            corrected.code, json["totals"]["failures"]
        ));
    }
    let paper = sweep(&["--variant", "paper"]);
    let json: serde_json::Value = serde_json::from_str(&paper.report).map_err(|e| e.to_string())?;
    let failures = json["failures"].as_array().ok_or("no failures array")?;
    let field = |f: &serde_json::Value, k: &str| f[k].as_str().unwrap_or("").to_string();
    let found: BTreeSet<(String, String, String)> = failures
        .iter()
        .map(|f| (field(f, "identity"), field(f, "variant"), field(f, "point")))
        .collect();

    let doc =
        std::fs::read_to_string(repo_file("ledger/CORRECTIONS.md")).map_err(|e| e.to_string())?;
    let section = hhlab_cli::ledger::extract(&doc).map_err(|e| e.to_string())?;
    let ledger = hhlab_cli::ledger::parse(section).map_err(|e| e.to_string())?;
    let recorded: BTreeSet<_> = ledger
        .fails
        .iter()
        .filter(|(_, v, _)| v == "paper")
        .cloned()
        .collect();
    if found != recorded {
        let extra = found.difference(&recorded).count();
        let missing = recorded.difference(&found).count();
        return Err(format!(
            "paper failures differ from the ledger: {extra} unrecorded, {missing} not reproduced"
        ));
    }
    for ex in ledger.examples.iter().filter(|e| e.variant == "paper") {
        let hit = failures.iter().find(|f| {
            field(f, "identity") == ex.id
                && field(f, "point") == ex.point
                && field(f, "variant") == ex.variant
        });
        match hit {
            Some(f) if field(f, "lhs") == ex.lhs && field(f, "rhs") == ex.rhs => {}
            _ => {
                return Err(format!(
                    "ledger example {} {} {} not reproduced",
                    ex.id, ex.variant, ex.point
                ))
            }
        }
    }
    let total = corrected.elapsed + paper.elapsed;
    within(
        total,
        Duration::from_secs(120),
        "corrected plus paper sweep",
    )?;
    Ok(format!(
        "corrected: {} points, 0 failures; paper: {} failures = ledger; {total:.2?}",
        corrected_tested(corrected),
        found.len()
    ))
}

fn corrected_tested(run: &SweepRun) -> String {
    serde_json::from_str::<serde_json::Value>(&run.report)
        .map(|j| j["totals"]["tested"].to_string())
        .unwrap_or_default()
}

fn criterion_9() -> Outcome {
    for n in 0..=30i64 {
        if local_harmonic(n, 0) != n || local_harmonic(n, -1) != frac(n * (n + 1), 2) {
            return Err(format!("local orders 0 and -1 at n={n}"));
        }
    }
    let seq = SeqCache::new();
    for n in 0..=30u32 {
        let n64 = i64::from(n);
        if seq.harmonic(n, 0) != n64 || seq.harmonic(n, -1) != frac(n64 * (n64 + 1), 2) {
            return Err(format!("H_n^(0) or H_n^(-1) wrong at n={n}"));
        }
    }
    let c = coeffs();
    let row = Registry::standard().get("base_h").unwrap();
    let point = row.point(&[("k", 1), ("r", 1), ("n", 2)]).unwrap();
    let res = row
        .verify(&c, &point, row.preferred_variant().unwrap())
        .unwrap();
    // 1 * H_1 + 2 * H_2
    let local = Rational::from(1) + Rational::from(2) * frac(3, 2);
    if !res.pass() || res.lhs != Some(local.clone()) || local != Rational::from(4) {
        return Err(format!("k=1, r=1, n=2 gives {:?} = {:?}", res.lhs, res.rhs));
    }
    Ok("4 = 4; H^(0) = n and H^(-1) = n(n+1)/2 for n <= 30".into())
}

fn criterion_10() -> Outcome {
    let first = default_sweep();
    let second = sweep(&[]);
    let body = |run: &SweepRun| {
        hhlab_cli::report::comparable_body(hhlab_cli::config::Format::Json, &run.report)
    };
    let (a, b) = (body(first), body(&second));
    if a.is_empty() || a != b {
        return Err("report bodies differ".into());
    }
    Ok(format!("{} bytes identical", a.len()))
}

fn criterion_11() -> Outcome {
    let run = |args: &[&str]| {
        Command::new(hhlab_bin())
            .args(args)
            .env_remove("HHLAB_CACHE_DIR")
            .output()
            .expect("binary runs")
    };
    let refused = run(&[
        "bench",
        "thm1",
        "--variant",
        "paper",
        "--n",
        "2,3,4",
        "--p",
        "1",
        "--r",
        "1",
        "--s",
        "1",
    ]);
    if refused.status.code() != Some(1) || !refused.stdout.is_empty() {
        return Err(format!(
            "mismatched bench exited {:?} with {} bytes of output",
            refused.status.code(),
            refused.stdout.len()
        ));
    }
    let timed = run(&[
        "bench", "thm1", "--n", "2,3,4", "--reps", "1", "--p", "2", "--r", "2", "--s", "2",
    ]);
    let text = String::from_utf8_lossy(&timed.stdout);
    if timed.status.code() != Some(0) || text.lines().count() != 4 {
        return Err("agreeing bench did not report timings".into());
    }
    Ok("mismatch refused with exit 1 and no timings; agreeing run timed".into())
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("hyperharmonic routes agree", criterion_1),
        ("Stirling and Bernoulli identities", criterion_2),
        ("base identities", criterion_3),
        ("concrete convolutions", criterion_4),
        ("binomial-product expansions", criterion_5),
        ("generalized hyperharmonic expansion", criterion_6),
        ("power-weighted sums of H^(r)", criterion_7),
        ("standard sweep and ledger", criterion_8),
        ("negative-order convention", criterion_9),
        ("deterministic reports", criterion_10),
        ("bench interlock", criterion_11),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        match result {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
    println!("all {} criteria passed", criteria.len());
}
