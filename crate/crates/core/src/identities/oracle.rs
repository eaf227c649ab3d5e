//! Brute-force left-hand sides.
//!
//! Every function here sums its defining expression term by term from the
//! sequence cache. Nothing in this module can reach the coefficient engine:
//! the only inputs are a [`SeqCache`] and a [`Point`].

use super::Point;
use crate::rational::{binomial, int_pow, rising_factorial, Rational};
use crate::sequences::{HyperRoute, SeqCache};

fn harm(seq: &SeqCache, n: i64) -> Rational {
    seq.harmonic(n as u32, 1)
}

fn hyper(seq: &SeqCache, n: i64, r: u32) -> Rational {
    seq.hyperharmonic(n as u32, r, HyperRoute::Recurrence)
}

fn pw(l: i64, k: u32) -> Rational {
    int_pow(l, k)
}

fn rising(l: i64, p: u32) -> Rational {
    rising_factorial(&Rational::from(l), p)
}

/// `1/(x+1) + ... + 1/(x+m-1)`, empty for `m <= 1`.
fn tail(x: i64, m: i64) -> Rational {
    (1..m).map(|i| Rational::frac(1, x + i)).sum()
}

fn sum_to(n: i64, f: impl Fn(i64) -> Rational) -> Rational {
    (0..=n).map(f).sum()
}

pub fn base_a(_: &SeqCache, pt: &Point) -> Rational {
    let k = pt.u("k");
    sum_to(pt.get("n"), |l| pw(l, k))
}

pub fn base_b(seq: &SeqCache, pt: &Point) -> Rational {
    let k = pt.u("k");
    sum_to(pt.get("n"), |l| pw(l, k) * harm(seq, l))
}

pub fn base_c(seq: &SeqCache, pt: &Point) -> Rational {
    let (k, n) = (pt.u("k"), pt.get("n"));
    sum_to(n, |l| pw(l, k) * harm(seq, n - l))
}

pub fn base_d(seq: &SeqCache, pt: &Point) -> Rational {
    let (k, n) = (pt.u("k"), pt.get("n"));
    sum_to(n, |l| pw(l, k) * harm(seq, l) * harm(seq, n - l))
}

pub fn base_e(seq: &SeqCache, pt: &Point) -> Rational {
    let k = pt.u("k");
    sum_to(pt.get("n"), |l| pw(l, k) * seq.harmonic(l as u32, 2))
}

pub fn base_fg(seq: &SeqCache, pt: &Point) -> Rational {
    let k = pt.u("k");
    sum_to(pt.get("n"), |l| {
        let h = harm(seq, l);
        pw(l, k) * &h * &h
    })
}

pub fn base_h(seq: &SeqCache, pt: &Point) -> Rational {
    let (k, r) = (pt.u("k"), pt.get("r"));
    sum_to(pt.get("n"), |l| pw(l, k) * seq.harmonic(l as u32, r))
}

/// `sum_{k=1}^n H_{n-k} / k`.
pub fn s_convolution(seq: &SeqCache, pt: &Point) -> Rational {
    let n = pt.get("n");
    (1..=n)
        .map(|k| harm(seq, n - k) * Rational::frac(1, k))
        .sum()
}

pub fn sum_hk_over_k(seq: &SeqCache, pt: &Point) -> Rational {
    (1..=pt.get("n"))
        .map(|k| harm(seq, k) * Rational::frac(1, k))
        .sum()
}

fn weighted_convolution(seq: &SeqCache, n: i64, p: u32) -> Rational {
    (1..=n)
        .map(|l| pw(l, p) * harm(seq, l) * harm(seq, n - l))
        .sum()
}

pub fn bhh6(seq: &SeqCache, pt: &Point) -> Rational {
    weighted_convolution(seq, pt.get("n"), 1)
}

pub fn bhh4(seq: &SeqCache, pt: &Point) -> Rational {
    weighted_convolution(seq, pt.get("n"), 2)
}

pub fn bhh5(seq: &SeqCache, pt: &Point) -> Rational {
    weighted_convolution(seq, pt.get("n"), 3)
}

/// `sum_{l=1}^n l h_l^(2) h_{n-l}^(2)`, second-order hyperharmonic reading.
pub fn cor_h2conv(seq: &SeqCache, pt: &Point) -> Rational {
    let n = pt.get("n");
    (1..=n)
        .map(|l| pw(l, 1) * hyper(seq, l, 2) * hyper(seq, n - l, 2))
        .sum()
}

/// The same sum read with generalized harmonic numbers `H^(2)`.
pub fn cor_h2conv_generalized(seq: &SeqCache, n: i64) -> Rational {
    (1..=n)
        .map(|l| pw(l, 1) * seq.harmonic(l as u32, 2) * seq.harmonic((n - l) as u32, 2))
        .sum()
}

pub fn lemma1(seq: &SeqCache, pt: &Point) -> Rational {
    let p = pt.u("p");
    sum_to(pt.get("n"), |l| pw(l, p) * harm(seq, l))
}

pub fn kamano5(_: &SeqCache, pt: &Point) -> Rational {
    let (r, n) = (pt.get("r"), pt.get("n"));
    binomial(n + r - 1, r - 1)
}

pub fn kamano6(_: &SeqCache, pt: &Point) -> Rational {
    let (r, n) = (pt.get("r"), pt.get("n"));
    binomial(n + r - 1, r - 1) * tail(n, r)
}

fn binom_pair(pt: &Point) -> (Rational, i64, i64, i64, i64) {
    let (r, s, n, l) = (pt.get("r"), pt.get("s"), pt.get("n"), pt.get("l"));
    (
        binomial(l + r - 1, r - 1) * binomial(n - l + s - 1, s - 1),
        r,
        s,
        n,
        l,
    )
}

pub fn lemma3(_: &SeqCache, pt: &Point) -> Rational {
    binom_pair(pt).0
}

pub fn lemma4(_: &SeqCache, pt: &Point) -> Rational {
    let (b, _, s, n, l) = binom_pair(pt);
    b * tail(n - l, s)
}

pub fn lemma5(_: &SeqCache, pt: &Point) -> Rational {
    let (b, r, _, _, l) = binom_pair(pt);
    b * tail(l, r)
}

pub fn lemma6(_: &SeqCache, pt: &Point) -> Rational {
    let (b, r, s, n, l) = binom_pair(pt);
    b * tail(l, r) * tail(n - l, s)
}

pub fn a4_expansion(_: &SeqCache, pt: &Point) -> Rational {
    let (r, l) = (pt.get("r"), pt.get("l"));
    let b = binomial(l + r - 1, r - 1);
    &b * &b
}

pub fn a5_expansion(_: &SeqCache, pt: &Point) -> Rational {
    let (r, l) = (pt.get("r"), pt.get("l"));
    let b = binomial(l + r - 1, r - 1);
    &b * &b * tail(l, r)
}

pub fn lemma7(seq: &SeqCache, pt: &Point) -> Rational {
    seq.gen_hyperharmonic(pt.u("n"), pt.get("p"), pt.u("r"))
}

/// `sum_{k=1}^n C(k, p) H_{n-k}^(r)`.
pub fn lemma8(seq: &SeqCache, pt: &Point) -> Rational {
    let (p, r, n) = (pt.get("p"), pt.get("r"), pt.get("n"));
    (1..=n)
        .map(|k| binomial(k, p) * seq.harmonic((n - k) as u32, r))
        .sum()
}

pub fn thm1(seq: &SeqCache, pt: &Point) -> Rational {
    let (p, r, s, n) = (pt.u("p"), pt.u("r"), pt.u("s"), pt.get("n"));
    sum_to(n, |l| pw(l, p) * hyper(seq, l, r) * hyper(seq, n - l, s))
}

pub fn thm2(seq: &SeqCache, pt: &Point) -> Rational {
    let (p, r, s, n) = (pt.u("p"), pt.u("r"), pt.u("s"), pt.get("n"));
    sum_to(n, |l| {
        rising(l, p) * hyper(seq, l, r) * hyper(seq, n - l, s)
    })
}

pub fn thm3(seq: &SeqCache, pt: &Point) -> Rational {
    let (p, r) = (pt.u("p"), pt.u("r"));
    sum_to(pt.get("n"), |l| {
        let h = hyper(seq, l, r);
        pw(l, p) * &h * &h
    })
}

pub fn thm4(seq: &SeqCache, pt: &Point) -> Rational {
    let (p, r) = (pt.u("p"), pt.u("r"));
    sum_to(pt.get("n"), |l| {
        let h = hyper(seq, l, r);
        rising(l, p) * &h * &h
    })
}

pub fn thm5(seq: &SeqCache, pt: &Point) -> Rational {
    let (p, q, r) = (pt.u("p"), pt.get("q"), pt.u("r"));
    sum_to(pt.get("n"), |l| {
        pw(l, p) * seq.gen_hyperharmonic(l as u32, q, r)
    })
}

pub fn thm6(seq: &SeqCache, pt: &Point) -> Rational {
    let (p, r, n) = (pt.u("p"), pt.get("r"), pt.get("n"));
    sum_to(n, |l| pw(l, p) * seq.harmonic((n - l) as u32, r))
}

pub fn thm7(seq: &SeqCache, pt: &Point) -> Rational {
    let (p, q, r, n) = (pt.u("p"), pt.get("q"), pt.u("r"), pt.get("n"));
    sum_to(n, |l| {
        pw(l, p) * seq.gen_hyperharmonic((n - l) as u32, q, r)
    })
}

pub fn rem_gen_hh(seq: &SeqCache, pt: &Point) -> Rational {
    let (p, q, r) = (pt.u("p"), pt.get("q"), pt.u("r"));
    sum_to(pt.get("n"), |l| {
        rising(l, p) * seq.gen_hyperharmonic(l as u32, q, r)
    })
}

pub fn rem_conv(seq: &SeqCache, pt: &Point) -> Rational {
    let (p, r, n) = (pt.u("p"), pt.get("r"), pt.get("n"));
    sum_to(n, |l| rising(l, p) * seq.harmonic((n - l) as u32, r))
}

pub fn rem_gen_conv(seq: &SeqCache, pt: &Point) -> Rational {
    let (p, q, r, n) = (pt.u("p"), pt.get("q"), pt.u("r"), pt.get("n"));
    sum_to(n, |l| {
        rising(l, p) * seq.gen_hyperharmonic((n - l) as u32, q, r)
    })
}
