//! Stirling, Bernoulli, harmonic, hyperharmonic and generalized hyperharmonic
//! numbers over a shared memo cache.
//!
//! Every table grows on demand and is never evicted. Lookups take a read lock
//! and only fall back to the write lock when a table has to be extended, so a
//! single [`SeqCache`] can be shared freely between worker threads.

use std::collections::HashMap;
use std::hash::Hash;
use std::sync::RwLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{binomial, factorial, int_pow, Rational};

/// Which closed form to use for `h_n^(r)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HyperRoute {
    /// Iterated partial sums of the order `r - 1` numbers.
    Recurrence,
    /// `C(n+r-1, r-1) (H_{n+r-1} - H_{r-1})`.
    Conway,
    /// `sum_{j=1}^n C(n+r-j-1, r-1) / j`.
    Bgg,
}

impl HyperRoute {
    pub const ALL: [HyperRoute; 3] = [HyperRoute::Recurrence, HyperRoute::Conway, HyperRoute::Bgg];

    pub fn name(self) -> &'static str {
        match self {
            HyperRoute::Recurrence => "recurrence",
            HyperRoute::Conway => "conway",
            HyperRoute::Bgg => "bgg",
        }
    }
}

impl std::str::FromStr for HyperRoute {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        HyperRoute::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| Error::OutOfRange(format!("unknown route {s:?}")))
    }
}

/// Plain copy of the integer-valued tables, used to persist a cache between
/// runs.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct CacheSnapshot {
    pub stirling1: Vec<Vec<BigInt>>,
    pub stirling2: Vec<Vec<BigInt>>,
    pub bernoulli: Vec<Rational>,
}

type Prefix<K> = RwLock<HashMap<K, Vec<Rational>>>;

/// Memoized sequence tables.
#[derive(Debug, Default)]
pub struct SeqCache {
    stirling1: RwLock<Vec<Vec<BigInt>>>,
    stirling2: RwLock<Vec<Vec<BigInt>>>,
    bernoulli: RwLock<Vec<Rational>>,
    harmonic: Prefix<i64>,
    hyperharmonic: Prefix<u32>,
    gen_hyperharmonic: Prefix<(i64, u32)>,
}

#[derive(Clone, Copy)]
enum StirlingKind {
    First,
    Second,
}

impl SeqCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// Signed Stirling number of the first kind `s(n, k)`.
    pub fn stirling_first(&self, n: u32, k: i64) -> BigInt {
        self.stirling(StirlingKind::First, n, k)
    }

    /// Stirling number of the second kind `S(n, k)`.
    pub fn stirling_second(&self, n: u32, k: i64) -> BigInt {
        self.stirling(StirlingKind::Second, n, k)
    }

    /// Unsigned Stirling number of the first kind, `(-1)^(n+k) s(n, k)`.
    pub fn stirling_unsigned(&self, n: u32, k: i64) -> BigInt {
        let s = self.stirling_first(n, k);
        if (i64::from(n) + k).rem_euclid(2) == 1 {
            -s
        } else {
            s
        }
    }

    fn stirling(&self, kind: StirlingKind, n: u32, k: i64) -> BigInt {
        if k < 0 || k > i64::from(n) {
            return BigInt::zero();
        }
        let (n, k) = (n as usize, k as usize);
        let lock = match kind {
            StirlingKind::First => &self.stirling1,
            StirlingKind::Second => &self.stirling2,
        };
        if let Some(row) = lock.read().expect("stirling lock").get(n) {
            return row[k].clone();
        }
        let mut rows = lock.write().expect("stirling lock");
        if rows.is_empty() {
            rows.push(vec![BigInt::one()]);
        }
        while rows.len() <= n {
            let m = rows.len() - 1;
            let next = stirling_row(kind, m, &rows[m]);
            rows.push(next);
        }
        rows[n][k].clone()
    }

    /// Bernoulli number `B_n^+` (with `B_1^+ = 1/2`), from
    /// `sum_{j=0}^k C(k+1, j) B_j^+ = k + 1`.
    pub fn bernoulli_plus(&self, n: u32) -> Rational {
        let n = n as usize;
        if let Some(b) = self.bernoulli.read().expect("bernoulli lock").get(n) {
            return b.clone();
        }
        let mut table = self.bernoulli.write().expect("bernoulli lock");
        while table.len() <= n {
            let k = table.len() as i64;
            let partial: Rational = table
                .iter()
                .enumerate()
                .map(|(j, b)| binomial(k + 1, j as i64) * b)
                .sum();
            let next = (Rational::from(k + 1) - partial) * Rational::frac(1, k + 1);
            table.push(next);
        }
        table[n].clone()
    }

    /// Generalized harmonic number `H_n^(q) = sum_{j=1}^n j^(-q)` for any
    /// integer order `q`; non-positive orders give power sums.
    pub fn harmonic(&self, n: u32, q: i64) -> Rational {
        prefix_entry(&self.harmonic, q, n, |table, upto| {
            for j in table.len()..=upto {
                let term = if q >= 0 {
                    int_pow(j as i64, q as u32).recip().expect("j >= 1")
                } else {
                    int_pow(j as i64, (-q) as u32)
                };
                let next = &table[j - 1] + term;
                table.push(next);
            }
        })
    }

    /// Hyperharmonic number `h_n^(r)` through the chosen route.
    ///
    /// # Panics
    /// If `r == 0`.
    pub fn hyperharmonic(&self, n: u32, r: u32, route: HyperRoute) -> Rational {
        assert!(r >= 1, "hyperharmonic order must be positive");
        match route {
            HyperRoute::Recurrence => self.hyperharmonic_recurrence(n, r),
            HyperRoute::Conway => {
                let (n, r) = (i64::from(n), i64::from(r));
                binomial(n + r - 1, r - 1)
                    * (self.harmonic((n + r - 1) as u32, 1) - self.harmonic((r - 1) as u32, 1))
            }
            HyperRoute::Bgg => {
                let (n64, r64) = (i64::from(n), i64::from(r));
                (1..=n64)
                    .map(|j| binomial(n64 + r64 - j - 1, r64 - 1) * Rational::frac(1, j))
                    .sum()
            }
        }
    }

    fn hyperharmonic_recurrence(&self, n: u32, r: u32) -> Rational {
        if r == 1 {
            return self.harmonic(n, 1);
        }
        if let Some(v) = read_entry(&self.hyperharmonic, &r, n) {
            return v;
        }
        let below: Vec<Rational> = (0..=n)
            .map(|i| self.hyperharmonic_recurrence(i, r - 1))
            .collect();
        prefix_entry(&self.hyperharmonic, r, n, |table, upto| {
            for i in table.len()..=upto {
                let next = &table[i - 1] + &below[i];
                table.push(next);
            }
        })
    }

    /// Generalized hyperharmonic number `H_n^(p,r)` by its defining
    /// recurrence with `H_n^(p,1) = H_n^(p)`. Any integer `p` is accepted.
    ///
    /// # Panics
    /// If `r == 0`.
    pub fn gen_hyperharmonic(&self, n: u32, p: i64, r: u32) -> Rational {
        assert!(r >= 1, "generalized hyperharmonic order must be positive");
        if r == 1 {
            return self.harmonic(n, p);
        }
        if let Some(v) = read_entry(&self.gen_hyperharmonic, &(p, r), n) {
            return v;
        }
        let below: Vec<Rational> = (0..=n)
            .map(|i| self.gen_hyperharmonic(i, p, r - 1))
            .collect();
        prefix_entry(&self.gen_hyperharmonic, (p, r), n, |table, upto| {
            for i in table.len()..=upto {
                let next = &table[i - 1] + &below[i];
                table.push(next);
            }
        })
    }

    /// `S_n = (H_n)^2 - H_n^(2)`.
    pub fn s_quantity(&self, n: u32) -> Rational {
        let h = self.harmonic(n, 1);
        &h * &h - self.harmonic(n, 2)
    }

    pub fn snapshot(&self) -> CacheSnapshot {
        CacheSnapshot {
            stirling1: self.stirling1.read().expect("stirling lock").clone(),
            stirling2: self.stirling2.read().expect("stirling lock").clone(),
            bernoulli: self.bernoulli.read().expect("bernoulli lock").clone(),
        }
    }

    /// Rebuilds a cache from persisted tables. Every row is checked against
    /// the defining recurrences first, so a damaged snapshot can never make a
    /// cached value differ from a fresh computation.
    pub fn from_snapshot(snapshot: CacheSnapshot) -> Result<Self> {
        check_stirling_rows(StirlingKind::First, &snapshot.stirling1)?;
        check_stirling_rows(StirlingKind::Second, &snapshot.stirling2)?;
        for (k, _) in snapshot.bernoulli.iter().enumerate() {
            let k = k as i64;
            let lhs: Rational = snapshot.bernoulli[..=k as usize]
                .iter()
                .enumerate()
                .map(|(j, b)| binomial(k + 1, j as i64) * b)
                .sum();
            if lhs != k + 1 {
                return Err(Error::OutOfRange(format!(
                    "bernoulli snapshot broken at {k}"
                )));
            }
        }
        Ok(SeqCache {
            stirling1: RwLock::new(snapshot.stirling1),
            stirling2: RwLock::new(snapshot.stirling2),
            bernoulli: RwLock::new(snapshot.bernoulli),
            ..Default::default()
        })
    }
}

fn stirling_row(kind: StirlingKind, m: usize, prev: &[BigInt]) -> Vec<BigInt> {
    // row m+1 from row m; entries k = 0..=m+1
    let at = |k: usize| prev.get(k).cloned().unwrap_or_default();
    (0..=m + 1)
        .map(|k| {
            if k == 0 {
                return BigInt::zero();
            }
            match kind {
                StirlingKind::First => at(k - 1) - at(k) * m,
                StirlingKind::Second => at(k - 1) + at(k) * k,
            }
        })
        .collect()
}

fn check_stirling_rows(kind: StirlingKind, rows: &[Vec<BigInt>]) -> Result<()> {
    let broken = || Error::OutOfRange("stirling snapshot does not satisfy its recurrence".into());
    match rows.first() {
        None => return Ok(()),
        Some(first) if *first != [BigInt::one()] => return Err(broken()),
        Some(_) => {}
    }
    for m in 1..rows.len() {
        if rows[m] != stirling_row(kind, m - 1, &rows[m - 1]) {
            return Err(broken());
        }
    }
    Ok(())
}

fn read_entry<K: Hash + Eq>(map: &Prefix<K>, key: &K, n: u32) -> Option<Rational> {
    map.read()
        .expect("prefix lock")
        .get(key)
        .and_then(|t| t.get(n as usize).cloned())
}

/// Looks up entry `n` of a prefix table whose entry 0 is zero, extending it
/// with `extend` under the write lock when needed.
fn prefix_entry<K: Hash + Eq + Copy>(
    map: &Prefix<K>,
    key: K,
    n: u32,
    extend: impl FnOnce(&mut Vec<Rational>, usize),
) -> Rational {
    if let Some(v) = read_entry(map, &key, n) {
        return v;
    }
    let mut guard = map.write().expect("prefix lock");
    let table = guard.entry(key).or_insert_with(|| vec![Rational::zero()]);
    let n = n as usize;
    if table.len() <= n {
        extend(table, n);
    }
    table[n].clone()
}

/// `n!` as a rational, for the normalizing prefactors used throughout.
pub(crate) fn factorial_rat(n: u32) -> Rational {
    Rational::from_integer(factorial(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{falling_factorial, rising_factorial};

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn stirling_small_values() {
        let c = SeqCache::new();
        assert_eq!(c.stirling_first(0, 0), BigInt::one());
        assert_eq!(c.stirling_first(3, 1), BigInt::from(2));
        assert_eq!(c.stirling_first(3, 2), BigInt::from(-3));
        assert_eq!(c.stirling_first(5, 2), BigInt::from(-50));
        assert_eq!(c.stirling_first(4, 0), BigInt::zero());
        assert_eq!(c.stirling_first(3, 4), BigInt::zero());
        assert_eq!(c.stirling_first(3, -1), BigInt::zero());
        assert_eq!(c.stirling_second(0, 0), BigInt::one());
        assert_eq!(c.stirling_second(3, 2), BigInt::from(3));
        assert_eq!(c.stirling_second(4, 2), BigInt::from(7));
        assert_eq!(c.stirling_second(6, 2), BigInt::from(31));
        assert_eq!(c.stirling_unsigned(3, 2), BigInt::from(3));
        assert_eq!(c.stirling_unsigned(4, 3), BigInt::from(6));
        for n in 0..15 {
            assert_eq!(c.stirling_unsigned(n, n.into()), BigInt::one());
        }
    }

    /// Counts set partitions of {1..n} into k blocks by brute force
    /// (restricted growth strings).
    fn count_partitions(n: usize, k: usize) -> u64 {
        fn go(i: usize, n: usize, k: usize, max: usize) -> u64 {
            if i == n {
                return u64::from(max == k);
            }
            (0..=max.min(k - 1))
                .map(|b| go(i + 1, n, k, max.max(b + 1)))
                .sum()
        }
        if k == 0 {
            return u64::from(n == 0);
        }
        go(0, n, k, 0)
    }

    #[test]
    fn second_kind_counts_set_partitions() {
        let c = SeqCache::new();
        for n in 0..9u32 {
            for k in 0..=n {
                assert_eq!(
                    c.stirling_second(n, k.into()),
                    BigInt::from(count_partitions(n as usize, k as usize)),
                    "S({n},{k})"
                );
            }
        }
    }

    #[test]
    fn first_kind_matches_polynomial_expansion() {
        // multiply out x(x-1)...(x-n+1) coefficient by coefficient
        let c = SeqCache::new();
        let mut poly = vec![BigInt::one()];
        for n in 0..15u32 {
            for (k, coef) in poly.iter().enumerate() {
                assert_eq!(c.stirling_first(n, k as i64), *coef);
            }
            let mut next = vec![BigInt::zero(); poly.len() + 1];
            for (k, coef) in poly.iter().enumerate() {
                next[k + 1] += coef;
                next[k] -= coef * n;
            }
            poly = next;
        }
    }

    #[test]
    fn orthogonality_and_row_sums() {
        let c = SeqCache::new();
        for n in 0..=12u32 {
            for x in -5i64..=5 {
                let xr = Rational::from(x);
                let via_second: Rational = (0..=n)
                    .map(|k| {
                        Rational::from(c.stirling_second(n, k.into())) * falling_factorial(&xr, k)
                    })
                    .sum();
                assert_eq!(via_second, int_pow(x, n));
                let via_first: Rational = (0..=n)
                    .map(|k| Rational::from(c.stirling_first(n, k.into())) * int_pow(x, k))
                    .sum();
                assert_eq!(via_first, falling_factorial(&xr, n));
            }
            let row: BigInt = (0..=n).map(|k| c.stirling_unsigned(n, k.into())).sum();
            assert_eq!(row, factorial(n));
            assert_eq!(Rational::from(row), rising_factorial(&Rational::one(), n));
        }
    }

    #[test]
    fn bernoulli_values() {
        let c = SeqCache::new();
        let want = [
            "1", "1/2", "1/6", "0", "-1/30", "0", "1/42", "0", "-1/30", "0", "5/66",
        ];
        for (n, w) in want.iter().enumerate() {
            assert_eq!(c.bernoulli_plus(n as u32), r(w), "B_{n}");
        }
        assert_eq!(c.bernoulli_plus(20), r("-174611/330"));
    }

    /// Akiyama-Tanigawa produces B_n with B_1 = +1/2, independently of the
    /// binomial recurrence.
    #[test]
    fn bernoulli_matches_akiyama_tanigawa() {
        let c = SeqCache::new();
        for n in 0..=20usize {
            let mut a: Vec<Rational> = (0..=n).map(|m| Rational::frac(1, m as i64 + 1)).collect();
            for m in (1..=n).rev() {
                for j in 0..m {
                    a[j] = Rational::from(j as i64 + 1) * (&a[j] - &a[j + 1]);
                }
            }
            assert_eq!(c.bernoulli_plus(n as u32), a[0], "B_{n}");
        }
    }

    #[test]
    fn harmonic_values() {
        let c = SeqCache::new();
        assert_eq!(c.harmonic(3, 1), r("11/6"));
        assert_eq!(c.harmonic(3, 2), r("49/36"));
        assert_eq!(c.harmonic(3, 0), 3);
        assert_eq!(c.harmonic(3, -1), 6);
        assert_eq!(c.harmonic(4, -2), 30);
        for q in -3..4 {
            assert_eq!(c.harmonic(0, q), 0);
        }
    }

    #[test]
    fn hyperharmonic_values() {
        let c = SeqCache::new();
        for route in HyperRoute::ALL {
            assert_eq!(c.hyperharmonic(3, 1, route), r("11/6"));
            assert_eq!(c.hyperharmonic(2, 2, route), r("5/2"));
            assert_eq!(c.hyperharmonic(3, 2, route), r("13/3"));
            assert_eq!(c.hyperharmonic(0, 4, route), 0);
        }
    }

    #[test]
    fn gen_hyperharmonic_values() {
        let c = SeqCache::new();
        assert_eq!(c.gen_hyperharmonic(3, 2, 1), r("49/36"));
        assert_eq!(c.gen_hyperharmonic(2, 1, 2), r("5/2"));
        assert_eq!(c.gen_hyperharmonic(2, 2, 2), r("9/4"));
        assert_eq!(c.gen_hyperharmonic(3, 2, 2), r("65/18"));
        assert_eq!(c.gen_hyperharmonic(0, 3, 3), 0);
    }

    #[test]
    fn s_quantity_values() {
        let c = SeqCache::new();
        assert_eq!(c.s_quantity(1), 0);
        assert_eq!(c.s_quantity(2), 1);
        assert_eq!(c.s_quantity(3), 2);
    }

    #[test]
    fn cache_is_transparent() {
        let warm = SeqCache::new();
        // fill out of order
        let _ = warm.hyperharmonic(30, 4, HyperRoute::Recurrence);
        let _ = warm.stirling_first(20, 3);
        for n in (0..25).rev() {
            let fresh = SeqCache::new();
            assert_eq!(
                warm.hyperharmonic(n, 3, HyperRoute::Recurrence),
                fresh.hyperharmonic(n, 3, HyperRoute::Recurrence)
            );
            assert_eq!(warm.stirling_first(n, 2), fresh.stirling_first(n, 2));
            assert_eq!(
                warm.gen_hyperharmonic(n, 2, 3),
                fresh.gen_hyperharmonic(n, 2, 3)
            );
        }
    }

    #[test]
    fn snapshot_round_trip_and_tamper_check() {
        let c = SeqCache::new();
        let _ = c.stirling_first(12, 1);
        let _ = c.stirling_second(9, 1);
        let _ = c.bernoulli_plus(10);
        let snap = c.snapshot();
        let back = SeqCache::from_snapshot(snap.clone()).unwrap();
        assert_eq!(back.snapshot(), snap);
        assert_eq!(
            back.stirling_first(14, 3),
            SeqCache::new().stirling_first(14, 3)
        );

        let mut bad = snap.clone();
        bad.stirling1[5][2] += 1;
        assert!(SeqCache::from_snapshot(bad).is_err());
        let mut bad = snap;
        bad.bernoulli[4] = Rational::zero();
        assert!(SeqCache::from_snapshot(bad).is_err());
    }

    #[test]
    fn concurrent_readers_agree() {
        let c = std::sync::Arc::new(SeqCache::new());
        let handles: Vec<_> = (0..8)
            .map(|i| {
                let c = c.clone();
                std::thread::spawn(move || {
                    for n in 0..40u32 {
                        c.hyperharmonic((n * 7 + i) % 40, 3, HyperRoute::Recurrence);
                    }
                })
            })
            .collect();
        for h in handles {
            h.join().unwrap();
        }
        let fresh = SeqCache::new();
        for n in 0..40 {
            assert_eq!(
                c.hyperharmonic(n, 3, HyperRoute::Recurrence),
                fresh.hyperharmonic(n, 3, HyperRoute::Conway)
            );
        }
    }
}
