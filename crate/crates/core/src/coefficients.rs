//! Coefficient families of the weighted harmonic summation formulas.
//!
//! All coefficients are evaluated exactly at concrete integer arguments.
//! Index arguments outside a family's window give zero, so callers can sum
//! over uniform ranges without edge-case branching. The one exception is
//! [`Coefficients::spiess_h`], whose `t` window is part of its contract.
//!
//! [`Coefficients`] memoizes on the full argument tuple and shares its
//! [`SeqCache`] with whoever built it.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, RwLock};

use crate::error::{Error, Result};
use crate::rational::{binomial, int_pow, Rational};
use crate::sequences::{factorial_rat, SeqCache};

/// Names of the coefficient families, as accepted by the CLI.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// Power sum `A(k, n)`.
    SpiessA,
    SpiessB,
    SpiessC,
    SpiessD,
    /// `D(k, n)` with `H_{l+1}^2` read as a square; does not close its identity.
    SpiessDPrinted,
    /// Polynomial part of `sum_{l=0}^n l^k H_l^(2)`.
    SpiessE,
    SpiessF,
    SpiessG,
    /// `G(k, n)` with the inner order taken from the outer index; does not
    /// close its identity.
    SpiessGPrinted,
    SpiessH,
    /// Binomial product expansion, no harmonic brackets.
    A,
    /// Expansion with the bracket on the `n - l` side.
    A1,
    /// Expansion with the bracket on the `l` side.
    A2,
    /// Expansion with both brackets.
    A3,
    A4,
    A5,
    A6,
    A7,
    A8,
    Ahat,
    /// `b(p, r, n, y)` of the generalized hyperharmonic power sum.
    B,
    /// `c(p, r, n, y)` of the reflected generalized hyperharmonic power sum.
    C,
}

impl Family {
    pub const ALL: [Family; 22] = [
        Family::SpiessA,
        Family::SpiessB,
        Family::SpiessC,
        Family::SpiessD,
        Family::SpiessDPrinted,
        Family::SpiessE,
        Family::SpiessF,
        Family::SpiessG,
        Family::SpiessGPrinted,
        Family::SpiessH,
        Family::A,
        Family::A1,
        Family::A2,
        Family::A3,
        Family::A4,
        Family::A5,
        Family::A6,
        Family::A7,
        Family::A8,
        Family::Ahat,
        Family::B,
        Family::C,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::SpiessA => "A",
            Family::SpiessB => "B",
            Family::SpiessC => "C",
            Family::SpiessD => "D",
            Family::SpiessDPrinted => "D-printed",
            Family::SpiessE => "E",
            Family::SpiessF => "F",
            Family::SpiessG => "G",
            Family::SpiessGPrinted => "G-printed",
            Family::SpiessH => "H",
            Family::A => "a",
            Family::A1 => "a1",
            Family::A2 => "a2",
            Family::A3 => "a3",
            Family::A4 => "a4",
            Family::A5 => "a5",
            Family::A6 => "a6",
            Family::A7 => "a7",
            Family::A8 => "a8",
            Family::Ahat => "ahat",
            Family::B => "b",
            Family::C => "c",
        }
    }

    /// Argument names, in call order.
    pub fn params(self) -> &'static [&'static str] {
        match self {
            Family::SpiessA
            | Family::SpiessB
            | Family::SpiessC
            | Family::SpiessD
            | Family::SpiessDPrinted
            | Family::SpiessE
            | Family::SpiessF
            | Family::SpiessG
            | Family::SpiessGPrinted => &["k", "n"],
            Family::SpiessH => &["k", "t"],
            Family::A | Family::A1 | Family::A2 | Family::A3 => &["r", "s", "n", "t"],
            Family::A4 | Family::A5 => &["r", "t"],
            Family::A6 | Family::A7 => &["p", "n", "t"],
            Family::A8 => &["r", "m", "k", "n"],
            Family::Ahat => &["r", "m", "j"],
            Family::B | Family::C => &["p", "r", "n", "y"],
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::OutOfRange(format!("unknown coefficient family {s:?}")))
    }
}

/// Triangular table of `ahat(r, m, j)` for `1 <= r <= r_max`,
/// `0 <= m <= r - 1`, `0 <= j <= r - 1 - m`, built by its three
/// recurrences from `ahat(1, 0, 0) = 1`.
///
/// These are the coefficients of
/// `H_n^(p,r) = sum_{m,j} ahat(r, m, j) n^j H_n^(p-m)`.
#[derive(Debug, Clone, PartialEq)]
pub struct AhatTable {
    // rows[r - 1][m][j]
    rows: Vec<Vec<Vec<Rational>>>,
}

impl AhatTable {
    pub fn build(r_max: u32, seq: &SeqCache) -> Self {
        let mut table = AhatTable {
            rows: vec![vec![vec![Rational::one()]]],
        };
        table.extend_to(r_max, seq);
        table
    }

    pub fn r_max(&self) -> u32 {
        self.rows.len() as u32
    }

    /// `ahat(r, m, j)`, zero outside the triangle or beyond `r_max`.
    pub fn get(&self, r: u32, m: i64, j: i64) -> Rational {
        if r == 0 || m < 0 || j < 0 {
            return Rational::zero();
        }
        self.rows
            .get(r as usize - 1)
            .and_then(|row| row.get(m as usize))
            .and_then(|col| col.get(j as usize))
            .cloned()
            .unwrap_or_default()
    }

    pub fn extend_to(&mut self, r_max: u32, seq: &SeqCache) {
        while self.r_max() < r_max {
            let r = self.r_max();
            let next = self.next_row(r, seq);
            self.rows.push(next);
        }
    }

    fn next_row(&self, r: u32, seq: &SeqCache) -> Vec<Vec<Rational>> {
        let ri = i64::from(r);
        let mut row: Vec<Vec<Rational>> = (0..=ri)
            .map(|m| vec![Rational::zero(); (ri - m + 1) as usize])
            .collect();

        row[r as usize][0] = -(0..ri)
            .map(|m| self.get(r, m, ri - m - 1) * Rational::frac(1, ri - m))
            .sum::<Rational>();

        for m in 0..ri {
            for l in 1..=ri - m {
                row[m as usize][l as usize] = (l - 1..=ri - 1 - m)
                    .map(|j| {
                        self.get(r, m, j)
                            * Rational::frac(1, j + 1)
                            * binomial(j + 1, j - l + 1)
                            * seq.bernoulli_plus((j - l + 1) as u32)
                    })
                    .sum();
            }
            let mut acc = Rational::zero();
            for y in 0..=m {
                for j in (m - y - 1).max(0)..=ri - 1 - y {
                    acc += self.get(r, y, j) * ahat_d_helper(r, m, j, y, seq);
                }
            }
            row[m as usize][0] = -acc;
        }
        row
    }
}

/// `D(r, m, j, y)` of the `ahat(r + 1, m, 0)` recurrence. The `r` argument
/// does not enter the sum; it is kept so the signature matches the
/// recurrence it belongs to.
pub fn ahat_d_helper(_r: u32, m: i64, j: i64, y: i64, seq: &SeqCache) -> Rational {
    ((m - y - 1).max(0)..=j)
        .map(|l| {
            let sign = if (1 + l - m + y).rem_euclid(2) == 0 {
                1
            } else {
                -1
            };
            Rational::frac(sign, j + 1)
                * binomial(j + 1, j - l)
                * seq.bernoulli_plus((j - l) as u32)
                * binomial(l + 1, m - y)
        })
        .sum()
}

/// Builds the `ahat` table up to order `r_max`.
pub fn build_ahat(r_max: u32, seq: &SeqCache) -> AhatTable {
    AhatTable::build(r_max, seq)
}

type MemoKey = (Family, [i64; 4]);

/// Evaluator for every coefficient family, with memoization.
#[derive(Debug)]
pub struct Coefficients {
    seq: Arc<SeqCache>,
    ahat: RwLock<AhatTable>,
    memo: RwLock<HashMap<MemoKey, Rational>>,
}

impl Default for Coefficients {
    fn default() -> Self {
        Self::new(Arc::new(SeqCache::new()))
    }
}

fn in_window(t: i64, hi: i64) -> bool {
    (0..=hi).contains(&t)
}

impl Coefficients {
    pub fn new(seq: Arc<SeqCache>) -> Self {
        let ahat = AhatTable::build(1, &seq);
        Coefficients {
            seq,
            ahat: RwLock::new(ahat),
            memo: RwLock::new(HashMap::new()),
        }
    }

    pub fn seq(&self) -> &SeqCache {
        &self.seq
    }

    pub fn seq_arc(&self) -> Arc<SeqCache> {
        self.seq.clone()
    }

    /// Overwrites a memo entry. Only useful for fault-injection tests that
    /// check which code paths read this cache.
    #[doc(hidden)]
    pub fn override_memo(&self, family: Family, args: [i64; 4], value: Rational) {
        self.memo
            .write()
            .expect("memo lock")
            .insert((family, args), value);
    }

    fn memoized(&self, family: Family, args: [i64; 4], f: impl FnOnce() -> Rational) -> Rational {
        if let Some(v) = self.memo.read().expect("memo lock").get(&(family, args)) {
            return v.clone();
        }
        let v = f();
        self.memo
            .write()
            .expect("memo lock")
            .entry((family, args))
            .or_insert(v)
            .clone()
    }

    fn s2(&self, n: i64, k: i64) -> Rational {
        Rational::from(self.seq.stirling_second(n as u32, k))
    }

    fn s1(&self, n: i64, k: i64) -> Rational {
        Rational::from(self.seq.stirling_first(n as u32, k))
    }

    fn su(&self, n: i64, k: i64) -> Rational {
        Rational::from(self.seq.stirling_unsigned(n as u32, k))
    }

    /// `sum_{l=0}^{k} S(k,l) l! * term(l)`, the shape shared by the power-sum
    /// coefficient families.
    fn stirling_weighted(&self, k: u32, term: impl Fn(i64) -> Rational) -> Rational {
        (0..=i64::from(k))
            .map(|l| self.s2(k.into(), l) * factorial_rat(l as u32) * term(l))
            .sum()
    }

    /// `A(k, n) = sum_{l=0}^{n} l^k`.
    pub fn spiess_a(&self, k: u32, n: u32) -> Rational {
        self.memoized(Family::SpiessA, [k.into(), n.into(), 0, 0], || {
            let n = i64::from(n);
            self.stirling_weighted(k, |l| binomial(n + 1, l + 1))
        })
    }

    pub fn spiess_b(&self, k: u32, n: u32) -> Rational {
        self.memoized(Family::SpiessB, [k.into(), n.into(), 0, 0], || {
            let n = i64::from(n);
            self.stirling_weighted(k, |l| Rational::frac(1, l + 1) * binomial(n + 1, l + 1))
        })
    }

    pub fn spiess_c(&self, k: u32, n: u32) -> Rational {
        self.memoized(Family::SpiessC, [k.into(), n.into(), 0, 0], || {
            let n = i64::from(n);
            self.stirling_weighted(k, |l| {
                binomial(n + 1, l + 1) * self.seq.harmonic((l + 1) as u32, 1)
            })
        })
    }

    /// `D(k, n)`, reading `H_{l+1}^2` as the second-order harmonic number
    /// `H_{l+1}^(2)`.
    pub fn spiess_d(&self, k: u32, n: u32) -> Rational {
        self.memoized(Family::SpiessD, [k.into(), n.into(), 0, 0], || {
            let n = i64::from(n);
            self.stirling_weighted(k, |l| {
                let m = (l + 1) as u32;
                binomial(n + 1, l + 1)
                    * (Rational::frac(1, l + 1) * self.seq.harmonic(m, 1) + self.seq.harmonic(m, 2))
            })
        })
    }

    /// `D(k, n)` with `H_{l+1}^2` read as `(H_{l+1})^2`.
    pub fn spiess_d_printed(&self, k: u32, n: u32) -> Rational {
        self.memoized(Family::SpiessDPrinted, [k.into(), n.into(), 0, 0], || {
            let n = i64::from(n);
            self.stirling_weighted(k, |l| {
                let h = self.seq.harmonic((l + 1) as u32, 1);
                binomial(n + 1, l + 1) * (Rational::frac(1, l + 1) * &h + &h * &h)
            })
        })
    }

    pub fn spiess_f(&self, k: u32, n: u32) -> Rational {
        self.memoized(Family::SpiessF, [k.into(), n.into(), 0, 0], || {
            let n = i64::from(n);
            self.stirling_weighted(k, |l| {
                let sign = if l % 2 == 0 { 1 } else { -1 };
                Rational::frac(1, l + 1)
                    * (binomial(n, l + 1) * Rational::from(2) + Rational::from(sign))
            })
        })
    }

    /// `G(k, n)` with inner harmonic order `2 - i`, `i` the inner summation
    /// index.
    pub fn spiess_g(&self, k: u32, n: u32) -> Rational {
        self.memoized(Family::SpiessG, [k.into(), n.into(), 0, 0], || {
            self.g_with(k, n, |_, i| 2 - i)
        })
    }

    /// `G(k, n)` with inner harmonic order `2 - l`, `l` the outer index.
    pub fn spiess_g_printed(&self, k: u32, n: u32) -> Rational {
        self.memoized(Family::SpiessGPrinted, [k.into(), n.into(), 0, 0], || {
            self.g_with(k, n, |l, _| 2 - l)
        })
    }

    fn g_with(&self, k: u32, n: u32, order: impl Fn(i64, i64) -> i64) -> Rational {
        let n64 = i64::from(n);
        self.stirling_weighted(k, |l| {
            let inner: Rational = (2..=l + 1)
                .map(|i| self.s1(l + 1, i) * self.seq.harmonic(n, order(l, i)))
                .sum();
            Rational::frac(2, (l + 1) * (l + 1)) * binomial(n64, l + 1)
                - inner
                    * factorial_rat((l + 1) as u32)
                        .recip()
                        .expect("factorial is non-zero")
        })
    }

    /// `E(k, n) = -sum_{t=2}^{k+1} H(k, t) H_n^(2-t)`, a polynomial in `n`
    /// of degree `k + 1`, so that
    /// `sum_{l=0}^n l^k H_l^(2) = A(k,n) H_n^(2) - (-1)^k B_k^+ H_n + E(k,n)`.
    pub fn spiess_e(&self, k: u32, n: u32) -> Rational {
        self.memoized(Family::SpiessE, [k.into(), n.into(), 0, 0], || {
            -(2..=i64::from(k) + 1)
                .map(|t| {
                    self.spiess_h(k, t).expect("t lies in 2..=k+1") * self.seq.harmonic(n, 2 - t)
                })
                .sum::<Rational>()
        })
    }

    /// `H(k, t)` for `1 <= t <= k + 1`.
    pub fn spiess_h(&self, k: u32, t: i64) -> Result<Rational> {
        if !(1..=i64::from(k) + 1).contains(&t) {
            return Err(Error::OutOfRange(format!(
                "H(k, t) needs 1 <= t <= k + 1, got k = {k}, t = {t}"
            )));
        }
        Ok(self.memoized(Family::SpiessH, [k.into(), t, 0, 0], || {
            let k64 = i64::from(k);
            (t - 1..=k64)
                .map(|l| Rational::frac(1, l + 1) * self.s2(k64, l) * self.s1(l + 1, t))
                .sum()
        }))
    }

    /// The `n - l` side of the binomial-product expansions: the coefficient
    /// of `l^t2` in `C(n-l+s-1, s-1)` (times the bracket, if `bracket`),
    /// before the `1/(s-1)!` normalization.
    fn right_factor(&self, s: i64, n: i64, t2: i64, k2_max: i64, bracket: bool) -> Rational {
        let sign = if t2 % 2 == 0 { 1 } else { -1 };
        (t2..=k2_max)
            .map(|k2| {
                let su = if bracket {
                    self.su(s, k2 + 2) * Rational::from(k2 + 1)
                } else {
                    self.su(s, k2 + 1)
                };
                su * binomial(k2, t2) * Rational::from(sign) * int_pow(n, (k2 - t2) as u32)
            })
            .sum()
    }

    /// The `l` side: the coefficient of `l^t1` in `C(l+r-1, r-1)` (times the
    /// bracket, if `bracket`), before normalization.
    fn left_factor(&self, r: i64, t1: i64, bracket: bool) -> Rational {
        if bracket {
            self.su(r, t1 + 2) * Rational::from(t1 + 1)
        } else {
            self.su(r, t1 + 1)
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn product_coeff(
        &self,
        r: u32,
        s: u32,
        n: u32,
        t: i64,
        left_bracket: bool,
        right_bracket: bool,
        k2_max: i64,
    ) -> Rational {
        let (r, s, n) = (i64::from(r), i64::from(s), i64::from(n));
        let t1_max = if left_bracket { r - 2 } else { r - 1 };
        let t2_max = if right_bracket { s - 2 } else { s - 1 };
        let sum: Rational = (0..=t1_max.min(t))
            .filter(|t1| in_window(t - t1, t2_max))
            .map(|t1| {
                self.left_factor(r, t1, left_bracket)
                    * self.right_factor(s, n, t - t1, k2_max, right_bracket)
            })
            .sum();
        sum * (factorial_rat((r - 1) as u32) * factorial_rat((s - 1) as u32))
            .recip()
            .expect("non-zero")
    }

    /// `a(r, s, n, t)`: coefficient of `l^t` in
    /// `C(l+r-1, r-1) C(n-l+s-1, s-1)`, `0 <= t <= r+s-2`.
    pub fn coeff_a(&self, r: u32, s: u32, n: u32, t: i64) -> Rational {
        if r == 0 || s == 0 || !in_window(t, i64::from(r + s) - 2) {
            return Rational::zero();
        }
        self.memoized(Family::A, [r.into(), s.into(), n.into(), t], || {
            self.product_coeff(r, s, n, t, false, false, i64::from(s) - 1)
        })
    }

    /// `a1(r, s, n, t)`: as [`Self::coeff_a`] times
    /// `1/(n-l+1) + ... + 1/(n-l+s-1)`, `0 <= t <= r+s-3`.
    pub fn coeff_a1(&self, r: u32, s: u32, n: u32, t: i64) -> Rational {
        if r == 0 || s == 0 || !in_window(t, i64::from(r + s) - 3) {
            return Rational::zero();
        }
        self.memoized(Family::A1, [r.into(), s.into(), n.into(), t], || {
            self.product_coeff(r, s, n, t, false, true, i64::from(s) - 2)
        })
    }

    /// `a2(r, s, n, t)`: as [`Self::coeff_a`] times
    /// `1/(l+1) + ... + 1/(l+r-1)`, `0 <= t <= r+s-3`.
    pub fn coeff_a2(&self, r: u32, s: u32, n: u32, t: i64) -> Rational {
        if r == 0 || s == 0 || !in_window(t, i64::from(r + s) - 3) {
            return Rational::zero();
        }
        self.memoized(Family::A2, [r.into(), s.into(), n.into(), t], || {
            self.product_coeff(r, s, n, t, true, false, i64::from(s) - 1)
        })
    }

    /// `a3(r, s, n, t)`: as [`Self::coeff_a`] times both brackets,
    /// `0 <= t <= r+s-4`.
    pub fn coeff_a3(&self, r: u32, s: u32, n: u32, t: i64) -> Rational {
        if r == 0 || s == 0 || !in_window(t, i64::from(r + s) - 4) {
            return Rational::zero();
        }
        // The k2 sum runs to s - 1; its last term carries su(s, s + 1) = 0.
        self.memoized(Family::A3, [r.into(), s.into(), n.into(), t], || {
            self.product_coeff(r, s, n, t, true, true, i64::from(s) - 1)
        })
    }

    /// `a4(r, r, t)`: coefficient of `l^t` in `C(l+r-1, r-1)^2`.
    pub fn coeff_a4(&self, r: u32, t: i64) -> Rational {
        let ri = i64::from(r);
        if r == 0 || !in_window(t, 2 * ri - 2) {
            return Rational::zero();
        }
        self.memoized(Family::A4, [ri, t, 0, 0], || {
            let sum: Rational = (0..=(ri - 1).min(t))
                .filter(|t1| in_window(t - t1, ri - 1))
                .map(|t1| self.su(ri, t1 + 1) * self.su(ri, t - t1 + 1))
                .sum();
            let norm = factorial_rat(r - 1);
            sum * (&norm * &norm).recip().expect("non-zero")
        })
    }

    /// `a5(r, r, t)`: coefficient of `l^t` in
    /// `C(l+r-1, r-1)^2 (1/(l+1) + ... + 1/(l+r-1))`.
    pub fn coeff_a5(&self, r: u32, t: i64) -> Rational {
        let ri = i64::from(r);
        if r == 0 || !in_window(t, 2 * ri - 3) {
            return Rational::zero();
        }
        self.memoized(Family::A5, [ri, t, 0, 0], || {
            let sum: Rational = (0..=(ri - 1).min(t))
                .filter(|t1| in_window(t - t1, ri - 2))
                .map(|t1| {
                    let t2 = t - t1;
                    self.su(ri, t1 + 1) * Rational::from(t2 + 1) * self.su(ri, t2 + 2)
                })
                .sum();
            let norm = factorial_rat(r - 1);
            sum * (&norm * &norm).recip().expect("non-zero")
        })
    }

    /// `a6(p, n, t)`, `0 <= t <= p + 1`: makes
    /// `sum_{k=1}^n C(k, p) H_{n-k}^(r) = sum_t a6(p, n, t) H_{n-1}^(r-t)`.
    pub fn coeff_a6(&self, p: u32, n: u32, t: i64) -> Rational {
        let pi = i64::from(p);
        if !in_window(t, pi + 1) {
            return Rational::zero();
        }
        self.memoized(Family::A6, [pi, n.into(), t, 0], || {
            let sign = if t % 2 == 0 { 1 } else { -1 };
            let sum: Rational = (t..=pi + 1)
                .map(|i| {
                    self.s1(pi + 1, i)
                        * binomial(i, t)
                        * Rational::from(sign)
                        * int_pow(i64::from(n) + 1, (i - t) as u32)
                })
                .sum();
            sum * factorial_rat(p + 1).recip().expect("non-zero")
        })
    }

    /// `a7(p, n, t) = sum_{l=1}^p S(p, l) l! a6(l, n, t)`.
    pub fn coeff_a7(&self, p: u32, n: u32, t: i64) -> Rational {
        if !in_window(t, i64::from(p) + 1) {
            return Rational::zero();
        }
        self.memoized(Family::A7, [p.into(), n.into(), t, 0], || {
            (1..=p)
                .map(|l| self.s2(p.into(), l.into()) * factorial_rat(l) * self.coeff_a6(l, n, t))
                .sum()
        })
    }

    /// `a8(r, m, k, n) = sum_{j=k}^{r-1-m} ahat(r, m, j) C(j, k) (-1)^k n^(j-k)`.
    pub fn coeff_a8(&self, r: u32, m: i64, k: i64, n: u32) -> Rational {
        let ri = i64::from(r);
        if r == 0 || !in_window(m, ri - 1) || !in_window(k, ri - 1 - m) {
            return Rational::zero();
        }
        let sign = if k % 2 == 0 { 1 } else { -1 };
        (k..=ri - 1 - m)
            .map(|j| {
                self.ahat(r, m, j)
                    * binomial(j, k)
                    * Rational::from(sign)
                    * int_pow(n.into(), (j - k) as u32)
            })
            .sum()
    }

    /// `ahat(r, m, j)`, growing the shared table as needed.
    pub fn ahat(&self, r: u32, m: i64, j: i64) -> Rational {
        {
            let table = self.ahat.read().expect("ahat lock");
            if table.r_max() >= r {
                return table.get(r, m, j);
            }
        }
        let mut table = self.ahat.write().expect("ahat lock");
        table.extend_to(r, &self.seq);
        table.get(r, m, j)
    }

    /// A copy of the `ahat` table up to order `r_max`.
    pub fn ahat_table(&self, r_max: u32) -> AhatTable {
        let _ = self.ahat(r_max, 0, 0);
        let table = self.ahat.read().expect("ahat lock");
        let mut out = table.clone();
        out.rows.truncate(r_max as usize);
        out
    }

    /// `b(p, r, n, y)`: coefficient of `H_n^(q-y)` in
    /// `sum_{l=0}^n l^p H_l^(q,r)`.
    pub fn theorem5_b(&self, p: u32, r: u32, n: u32, y: i64) -> Rational {
        let (pi, ri) = (i64::from(p), i64::from(r));
        let mut acc = Rational::zero();
        if in_window(y, ri - 1) {
            acc += (0..=ri - 1 - y)
                .map(|j| self.ahat(r, y, j) * self.spiess_a(p + j as u32, n))
                .sum::<Rational>();
        }
        if y >= 1 {
            for m in 0..=ri - 1 {
                let t = y - m;
                if !(1..=pi + ri - m).contains(&t) {
                    continue;
                }
                for j in (t - pi - 1).max(0)..=ri - 1 - m {
                    let h = self
                        .spiess_h(p + j as u32, t)
                        .expect("t is within 1..=p+j+1");
                    acc -= self.ahat(r, m, j) * h;
                }
            }
        }
        acc
    }

    /// `c(p, r, n, y)`: coefficient of `H_{n-1}^(q-y)` in
    /// `sum_{l=0}^n l^p H_{n-l}^(q,r)`.
    pub fn theorem7_c(&self, p: u32, r: u32, n: u32, y: i64) -> Rational {
        let (pi, ri) = (i64::from(p), i64::from(r));
        let mut acc = Rational::zero();
        for m in 0..=ri - 1 {
            let t = y - m;
            if !in_window(t, pi + ri - m) {
                continue;
            }
            for k in (t - pi - 1).max(0)..=ri - 1 - m {
                acc += self.coeff_a7(p + k as u32, n, t) * self.coeff_a8(r, m, k, n);
            }
        }
        acc
    }

    /// Evaluates a family by name with arguments in [`Family::params`] order.
    pub fn evaluate(&self, family: Family, args: &[i64]) -> Result<Rational> {
        let want = family.params();
        if args.len() != want.len() {
            return Err(Error::OutOfRange(format!(
                "{family} takes ({})",
                want.join(", ")
            )));
        }
        let nonneg = |i: usize| -> Result<u32> {
            u32::try_from(args[i])
                .map_err(|_| Error::OutOfRange(format!("{} must be non-negative", want[i])))
        };
        let positive = |i: usize| -> Result<u32> {
            let v = nonneg(i)?;
            if v == 0 {
                return Err(Error::OutOfRange(format!("{} must be positive", want[i])));
            }
            Ok(v)
        };
        Ok(match family {
            Family::SpiessA => self.spiess_a(nonneg(0)?, nonneg(1)?),
            Family::SpiessB => self.spiess_b(nonneg(0)?, nonneg(1)?),
            Family::SpiessC => self.spiess_c(nonneg(0)?, nonneg(1)?),
            Family::SpiessD => self.spiess_d(nonneg(0)?, nonneg(1)?),
            Family::SpiessDPrinted => self.spiess_d_printed(nonneg(0)?, nonneg(1)?),
            Family::SpiessE => self.spiess_e(nonneg(0)?, nonneg(1)?),
            Family::SpiessF => self.spiess_f(nonneg(0)?, nonneg(1)?),
            Family::SpiessG => self.spiess_g(nonneg(0)?, nonneg(1)?),
            Family::SpiessGPrinted => self.spiess_g_printed(nonneg(0)?, nonneg(1)?),
            Family::SpiessH => self.spiess_h(nonneg(0)?, args[1])?,
            Family::A => self.coeff_a(positive(0)?, positive(1)?, nonneg(2)?, args[3]),
            Family::A1 => self.coeff_a1(positive(0)?, positive(1)?, nonneg(2)?, args[3]),
            Family::A2 => self.coeff_a2(positive(0)?, positive(1)?, nonneg(2)?, args[3]),
            Family::A3 => self.coeff_a3(positive(0)?, positive(1)?, nonneg(2)?, args[3]),
            Family::A4 => self.coeff_a4(positive(0)?, args[1]),
            Family::A5 => self.coeff_a5(positive(0)?, args[1]),
            Family::A6 => self.coeff_a6(positive(0)?, nonneg(1)?, args[2]),
            Family::A7 => self.coeff_a7(nonneg(0)?, nonneg(1)?, args[2]),
            Family::A8 => self.coeff_a8(positive(0)?, args[1], args[2], nonneg(3)?),
            Family::Ahat => self.ahat(positive(0)?, args[1], args[2]),
            Family::B => self.theorem5_b(nonneg(0)?, positive(1)?, nonneg(2)?, args[3]),
            Family::C => self.theorem7_c(nonneg(0)?, positive(1)?, nonneg(2)?, args[3]),
        })
    }
}

#[cfg(test)]
mod tests;
