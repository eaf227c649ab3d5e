//! Closed-form right-hand sides.
//!
//! Everything here is assembled from the coefficient engine plus a bounded
//! number of harmonic values at the endpoint `n`. None of these functions
//! iterate the defining sum of their identity; the one unexpanded finite sum
//! that the printed statement of [`thm3`] keeps is evaluated as printed.

use std::ops::RangeInclusive;

use super::Point;
use crate::coefficients::Coefficients;
use crate::rational::{binomial, int_pow, Rational};
use crate::sequences::factorial_rat;

fn win(hi: i64) -> RangeInclusive<i64> {
    0..=hi
}

fn harm(c: &Coefficients, n: u32, q: i64) -> Rational {
    c.seq().harmonic(n, q)
}

fn su(c: &Coefficients, n: u32, k: i64) -> Rational {
    Rational::from(c.seq().stirling_unsigned(n, k))
}

fn s_n(c: &Coefficients, n: u32) -> Rational {
    let h = harm(c, n, 1);
    &h * &h - harm(c, n, 2)
}

fn frac(a: i64, b: i64) -> Rational {
    Rational::frac(a, b)
}

pub fn base_a(c: &Coefficients, pt: &Point) -> Rational {
    c.spiess_a(pt.u("k"), pt.u("n"))
}

pub fn base_b(c: &Coefficients, pt: &Point) -> Rational {
    let (k, n) = (pt.u("k"), pt.u("n"));
    c.spiess_a(k, n) * harm(c, n + 1, 1) - c.spiess_b(k, n)
}

pub fn base_c(c: &Coefficients, pt: &Point) -> Rational {
    let (k, n) = (pt.u("k"), pt.u("n"));
    c.spiess_a(k, n) * harm(c, n + 1, 1) - c.spiess_c(k, n)
}

fn base_d_with(c: &Coefficients, pt: &Point, d: Rational) -> Rational {
    let (k, n) = (pt.u("k"), pt.u("n"));
    c.spiess_a(k, n) * s_n(c, n + 1) - (c.spiess_b(k, n) + c.spiess_c(k, n)) * harm(c, n + 1, 1) + d
}

pub fn base_d_paper(c: &Coefficients, pt: &Point) -> Rational {
    base_d_with(c, pt, c.spiess_d_printed(pt.u("k"), pt.u("n")))
}

pub fn base_d_corrected(c: &Coefficients, pt: &Point) -> Rational {
    base_d_with(c, pt, c.spiess_d(pt.u("k"), pt.u("n")))
}

fn base_fg_with(c: &Coefficients, pt: &Point, g: Rational) -> Rational {
    let (k, n) = (pt.u("k"), pt.u("n"));
    let h = harm(c, n, 1);
    c.spiess_a(k, n) * &h * &h - c.spiess_f(k, n) * &h + g
}

pub fn base_fg_paper(c: &Coefficients, pt: &Point) -> Rational {
    base_fg_with(c, pt, c.spiess_g_printed(pt.u("k"), pt.u("n")))
}

pub fn base_fg_corrected(c: &Coefficients, pt: &Point) -> Rational {
    base_fg_with(c, pt, c.spiess_g(pt.u("k"), pt.u("n")))
}

/// `A(k,n) H_n^(2) - (-1)^k B_k^+ H_n + E(k,n)`.
pub fn base_e_corrected(c: &Coefficients, pt: &Point) -> Rational {
    let (k, n) = (pt.u("k"), pt.u("n"));
    let bern = c.seq().bernoulli_plus(k) * frac(if k % 2 == 0 { 1 } else { -1 }, 1);
    c.spiess_a(k, n) * harm(c, n, 2) - bern * harm(c, n, 1) + c.spiess_e(k, n)
}

pub fn base_h(c: &Coefficients, pt: &Point) -> Rational {
    let (k, r, n) = (pt.u("k"), pt.get("r"), pt.u("n"));
    let tail: Rational = (1..=i64::from(k) + 1)
        .map(|t| harm(c, n, r - t) * c.spiess_h(k, t).expect("t lies in 1..=k+1"))
        .sum();
    c.spiess_a(k, n) * harm(c, n, r) - tail
}

/// `S_n = (2/n!) s_u(n+1, 3)`.
pub fn s_three_way(c: &Coefficients, pt: &Point) -> Rational {
    let n = pt.u("n");
    frac(2, 1) * su(c, n + 1, 3) * factorial_rat(n).recip().expect("factorial is non-zero")
}

/// `S_n = (H_n)^2 - H_n^(2)`.
pub fn s_squares(c: &Coefficients, pt: &Point) -> Rational {
    s_n(c, pt.u("n"))
}

pub fn sum_hk_over_k(c: &Coefficients, pt: &Point) -> Rational {
    let n = pt.u("n");
    let h = harm(c, n, 1);
    (&h * &h + harm(c, n, 2)) * frac(1, 2)
}

/// `a S_n - b H_n + c` with polynomial coefficients in `n`.
fn printed(c: &Coefficients, n: u32, a: Rational, b: Rational, k: Rational) -> Rational {
    a * s_n(c, n) - b * harm(c, n, 1) + k
}

pub fn bhh6(c: &Coefficients, pt: &Point) -> Rational {
    let n = pt.get("n");
    printed(
        c,
        pt.u("n"),
        frac(n * (n + 1), 2),
        frac(n * n, 1),
        frac(n * n, 1),
    )
}

pub fn bhh4(c: &Coefficients, pt: &Point) -> Rational {
    let n = pt.get("n");
    printed(
        c,
        pt.u("n"),
        frac(n * (n + 1) * (2 * n + 1), 6),
        frac(n * (13 * n * n + 6 * n - 1), 18),
        frac(n * (71 * n * n + 30 * n + 7), 108),
    )
}

pub fn bhh5(c: &Coefficients, pt: &Point) -> Rational {
    let n = pt.get("n");
    let half = frac(n * (n + 1), 2);
    printed(
        c,
        pt.u("n"),
        &half * &half,
        frac(n * n * (n + 1) * (7 * n - 1), 12),
        frac(n * n * (35 * n * n + 30 * n + 7), 72),
    )
}

pub fn cor_h2conv(c: &Coefficients, pt: &Point) -> Rational {
    let n = pt.get("n");
    printed(
        c,
        pt.u("n"),
        frac(n * (n + 1) * (n + 2) * (n + 3), 12),
        frac(n * n * (11 * n * n + 48 * n + 49), 36),
        frac(n * n * (85 * n * n + 312 * n + 251), 216),
    )
}

/// Conversion through `F(n, j) = C(n+1, j+1) (H_{n+1} - 1/(j+1))`, the
/// binomial-weighted harmonic sum.
pub fn lemma1(c: &Coefficients, pt: &Point) -> Rational {
    let (p, n) = (pt.u("p"), pt.get("n"));
    let h = harm(c, pt.u("n") + 1, 1);
    (0..=i64::from(p))
        .map(|j| {
            Rational::from(c.seq().stirling_second(p, j))
                * factorial_rat(j as u32)
                * binomial(n + 1, j + 1)
                * (&h - frac(1, j + 1))
        })
        .sum()
}

pub fn kamano5(c: &Coefficients, pt: &Point) -> Rational {
    let (r, n) = (pt.u("r"), pt.get("n"));
    let sum: Rational = (1..=i64::from(r))
        .map(|k| su(c, r, k) * int_pow(n, (k - 1) as u32))
        .sum();
    sum * factorial_rat(r - 1).recip().expect("non-zero")
}

pub fn kamano6(c: &Coefficients, pt: &Point) -> Rational {
    let (r, n) = (pt.u("r"), pt.get("n"));
    let sum: Rational = (1..i64::from(r))
        .map(|k| su(c, r, k + 1) * Rational::from(k) * int_pow(n, (k - 1) as u32))
        .sum();
    sum * factorial_rat(r - 1).recip().expect("non-zero")
}

fn poly_in_l(pt: &Point, hi: i64, coeff: impl Fn(i64) -> Rational) -> Rational {
    let l = pt.get("l");
    win(hi).map(|t| coeff(t) * int_pow(l, t as u32)).sum()
}

pub fn lemma3(c: &Coefficients, pt: &Point) -> Rational {
    let (r, s, n) = (pt.u("r"), pt.u("s"), pt.u("n"));
    poly_in_l(pt, i64::from(r + s) - 2, |t| c.coeff_a(r, s, n, t))
}

pub fn lemma4(c: &Coefficients, pt: &Point) -> Rational {
    let (r, s, n) = (pt.u("r"), pt.u("s"), pt.u("n"));
    poly_in_l(pt, i64::from(r + s) - 3, |t| c.coeff_a1(r, s, n, t))
}

pub fn lemma5(c: &Coefficients, pt: &Point) -> Rational {
    let (r, s, n) = (pt.u("r"), pt.u("s"), pt.u("n"));
    poly_in_l(pt, i64::from(r + s) - 3, |t| c.coeff_a2(r, s, n, t))
}

pub fn lemma6(c: &Coefficients, pt: &Point) -> Rational {
    let (r, s, n) = (pt.u("r"), pt.u("s"), pt.u("n"));
    poly_in_l(pt, i64::from(r + s) - 4, |t| c.coeff_a3(r, s, n, t))
}

pub fn a4_expansion(c: &Coefficients, pt: &Point) -> Rational {
    let r = pt.u("r");
    poly_in_l(pt, 2 * i64::from(r) - 2, |t| c.coeff_a4(r, t))
}

pub fn a5_expansion(c: &Coefficients, pt: &Point) -> Rational {
    let r = pt.u("r");
    poly_in_l(pt, 2 * i64::from(r) - 3, |t| c.coeff_a5(r, t))
}

pub fn lemma7(c: &Coefficients, pt: &Point) -> Rational {
    let (r, p, n) = (pt.u("r"), pt.get("p"), pt.u("n"));
    let ri = i64::from(r);
    let mut acc = Rational::zero();
    for m in 0..ri {
        let h = harm(c, n, p - m);
        for j in 0..ri - m {
            acc += c.ahat(r, m, j) * int_pow(n.into(), j as u32) * &h;
        }
    }
    acc
}

pub fn lemma8(c: &Coefficients, pt: &Point) -> Rational {
    let (p, r, n) = (pt.u("p"), pt.get("r"), pt.u("n"));
    win(i64::from(p) + 1)
        .map(|t| c.coeff_a6(p, n, t) * harm(c, n - 1, r - t))
        .sum()
}

/// The `A(k, n)`, `B(k, n)`, `C(k, n)`, `D(k, n)` values at `k = p + t`,
/// shared by the Theorem 1 assemblers.
struct Spiess<'a> {
    c: &'a Coefficients,
    p: u32,
    n: u32,
    inv: Rational,
}

impl<'a> Spiess<'a> {
    fn new(c: &'a Coefficients, p: u32, n: u32) -> Self {
        Spiess {
            c,
            p,
            n,
            inv: frac(1, i64::from(n) + 1),
        }
    }
    fn a(&self, t: i64) -> Rational {
        self.c.spiess_a(self.p + t as u32, self.n)
    }
    fn b(&self, t: i64) -> Rational {
        self.c.spiess_b(self.p + t as u32, self.n)
    }
    fn c(&self, t: i64) -> Rational {
        self.c.spiess_c(self.p + t as u32, self.n)
    }
    fn d(&self, t: i64) -> Rational {
        self.c.spiess_d(self.p + t as u32, self.n)
    }
    fn f(&self, t: i64) -> Rational {
        self.c.spiess_f(self.p + t as u32, self.n)
    }
    fn g(&self, t: i64) -> Rational {
        self.c.spiess_g(self.p + t as u32, self.n)
    }
    /// `A/(n+1) - B`.
    fn ab(&self, t: i64) -> Rational {
        self.a(t) * &self.inv - self.b(t)
    }
    /// `A/(n+1) - C`.
    fn ac(&self, t: i64) -> Rational {
        self.a(t) * &self.inv - self.c(t)
    }
}

fn thm1_args(pt: &Point) -> (u32, u32, u32, u32) {
    (pt.u("p"), pt.u("r"), pt.u("s"), pt.u("n"))
}

/// Theorem 1 with `A`, `B`, `C` transcribed from the printed statement.
pub fn thm1_paper_at(c: &Coefficients, p: u32, r: u32, s: u32, n: u32) -> Rational {
    let k = Spiess::new(c, p, n);
    let w2 = i64::from(r + s) - 2;
    let (hr, hs) = (harm(c, r - 1, 1), harm(c, s - 1, 1));
    let a = |t| c.coeff_a(r, s, n, t);
    let a1 = |t| c.coeff_a1(r, s, n, t);
    let a2 = |t| c.coeff_a2(r, s, n, t);
    let a3 = |t| c.coeff_a3(r, s, n, t);
    let two_inv = frac(2, 1) * &k.inv;

    let big_a: Rational = win(w2).map(|t| a(t) * k.a(t)).sum();
    let big_b: Rational = win(w2 - 1)
        .map(|t| (a1(t) + a2(t)) * k.a(t))
        .sum::<Rational>()
        + win(w2)
            .map(|t| a(t) * (k.a(t) * (&two_inv - &hs - &hr) - k.b(t) - k.c(t)))
            .sum::<Rational>();
    let big_c: Rational = win(w2)
        .map(|t| a(t) * (k.d(t) - &k.inv * (k.b(t) - k.c(t))))
        .sum::<Rational>()
        + win(w2 - 1).map(|t| a1(t) * k.ab(t)).sum::<Rational>()
        - &hs * win(w2).map(|t| a1(t) * k.ab(t)).sum::<Rational>()
        + win(w2 - 1).map(|t| a2(t) * k.ac(t)).sum::<Rational>()
        + win(w2 - 2).map(|t| a3(t) * k.a(t)).sum::<Rational>()
        - &hs * win(w2 - 1).map(|t| a2(t) * k.a(t)).sum::<Rational>()
        - &hr * win(w2).map(|t| a(t) * k.ac(t)).sum::<Rational>()
        - &hr * win(w2 - 1).map(|t| a1(t) * k.a(t)).sum::<Rational>()
        + &hr * &hs * win(w2).map(|t| a(t) * k.a(t)).sum::<Rational>();
    big_a * s_n(c, n) + big_b * harm(c, n, 1) + big_c
}

/// The nine parts of the Theorem 1 decomposition, each fully evaluated.
/// Their sum is the corrected right-hand side.
pub fn thm1_parts(c: &Coefficients, p: u32, r: u32, s: u32, n: u32) -> [Rational; 9] {
    let k = Spiess::new(c, p, n);
    let w2 = i64::from(r + s) - 2;
    let (hr, hs) = (harm(c, r - 1, 1), harm(c, s - 1, 1));
    let (hn, sn) = (harm(c, n, 1), s_n(c, n));
    let a = |t| c.coeff_a(r, s, n, t);
    let a1 = |t| c.coeff_a1(r, s, n, t);
    let a2 = |t| c.coeff_a2(r, s, n, t);
    let a3 = |t| c.coeff_a3(r, s, n, t);
    let two_inv = frac(2, 1) * &k.inv;

    let part1 = win(w2)
        .map(|t| {
            a(t) * (k.a(t) * &sn + (k.a(t) * &two_inv - k.b(t) - k.c(t)) * &hn + k.d(t)
                - &k.inv * (k.b(t) + k.c(t)))
        })
        .sum();
    let part2 = win(w2 - 1).map(|t| a1(t) * (k.a(t) * &hn + k.ab(t))).sum();
    let part3 = -(&hs
        * win(w2)
            .map(|t| a(t) * (k.a(t) * &hn + k.ab(t)))
            .sum::<Rational>());
    let part4 = win(w2 - 1).map(|t| a2(t) * (k.a(t) * &hn + k.ac(t))).sum();
    let part5 = win(w2 - 2).map(|t| a3(t) * k.a(t)).sum();
    let part6 = -(&hs * win(w2 - 1).map(|t| a2(t) * k.a(t)).sum::<Rational>());
    let part7 = -(&hr
        * win(w2)
            .map(|t| a(t) * (k.a(t) * &hn + k.ac(t)))
            .sum::<Rational>());
    let part8 = -(&hr * win(w2 - 1).map(|t| a1(t) * k.a(t)).sum::<Rational>());
    let part9 = &hr * &hs * win(w2).map(|t| a(t) * k.a(t)).sum::<Rational>();
    [
        part1, part2, part3, part4, part5, part6, part7, part8, part9,
    ]
}

pub fn thm1_corrected_at(c: &Coefficients, p: u32, r: u32, s: u32, n: u32) -> Rational {
    thm1_parts(c, p, r, s, n).into_iter().sum()
}

pub fn thm1_paper(c: &Coefficients, pt: &Point) -> Rational {
    let (p, r, s, n) = thm1_args(pt);
    thm1_paper_at(c, p, r, s, n)
}

pub fn thm1_corrected(c: &Coefficients, pt: &Point) -> Rational {
    let (p, r, s, n) = thm1_args(pt);
    thm1_corrected_at(c, p, r, s, n)
}

/// `sum_{m=1}^p s_u(p, m) f(m)`; the `m = 0` term vanishes for `p >= 1`.
fn rising_combination(c: &Coefficients, p: u32, f: impl Fn(u32) -> Rational) -> Rational {
    (1..=p).map(|m| su(c, p, m.into()) * f(m)).sum()
}

pub fn thm2_paper(c: &Coefficients, pt: &Point) -> Rational {
    let (p, r, s, n) = thm1_args(pt);
    rising_combination(c, p, |m| thm1_paper_at(c, m, r, s, n))
}

pub fn thm2_corrected(c: &Coefficients, pt: &Point) -> Rational {
    let (p, r, s, n) = thm1_args(pt);
    rising_combination(c, p, |m| thm1_corrected_at(c, m, r, s, n))
}

/// Theorem 3 as printed: `A(2,p,r,n) (H_n)^2 + B(2,p,r,n) H_n + C(2,p,r,n)`.
pub fn thm3_at(c: &Coefficients, p: u32, r: u32, n: u32) -> Rational {
    let k = Spiess::new(c, p, n);
    let w = 2 * i64::from(r) - 2;
    let hr = harm(c, r - 1, 1);
    let hn = harm(c, n, 1);
    let a4 = |t| c.coeff_a4(r, t);
    let a5 = |t| c.coeff_a5(r, t);

    let big_a: Rational = win(w).map(|t| a4(t) * k.a(t)).sum();
    let big_b = -win(w).map(|t| a4(t) * k.f(t)).sum::<Rational>() - frac(2, 1) * &hr * &big_a
        + frac(2, 1) * win(w - 1).map(|t| a5(t) * k.a(t)).sum::<Rational>();
    let big_c = win(w).map(|t| a4(t) * k.g(t)).sum::<Rational>() + thm3_part2(p, r, n, &hr)
        - frac(2, 1) * &hr * win(w).map(|t| a4(t) * k.ab(t)).sum::<Rational>()
        + frac(2, 1) * win(w - 1).map(|t| a5(t) * k.ab(t)).sum::<Rational>();
    big_a * &hn * &hn + big_b * &hn + big_c
}

/// The finite sum the statement leaves unexpanded:
/// `sum_{l=0}^n l^p C(l+r-1, r-1)^2 (1/(l+1) + ... + 1/(l+r-1) - H_{r-1})^2`.
fn thm3_part2(p: u32, r: u32, n: u32, hr: &Rational) -> Rational {
    let ri = i64::from(r);
    (0..=i64::from(n))
        .map(|l| {
            let b = binomial(l + ri - 1, ri - 1);
            let br: Rational = (1..ri).map(|i| frac(1, l + i)).sum::<Rational>() - hr;
            int_pow(l, p) * &b * &b * &br * &br
        })
        .sum()
}

pub fn thm3(c: &Coefficients, pt: &Point) -> Rational {
    thm3_at(c, pt.u("p"), pt.u("r"), pt.u("n"))
}

pub fn thm4(c: &Coefficients, pt: &Point) -> Rational {
    let (p, r, n) = (pt.u("p"), pt.u("r"), pt.u("n"));
    rising_combination(c, p, |m| thm3_at(c, m, r, n))
}

pub fn thm5_at(c: &Coefficients, p: u32, q: i64, r: u32, n: u32) -> Rational {
    win(i64::from(p + r))
        .map(|y| c.theorem5_b(p, r, n, y) * harm(c, n, q - y))
        .sum()
}

pub fn thm5(c: &Coefficients, pt: &Point) -> Rational {
    thm5_at(c, pt.u("p"), pt.get("q"), pt.u("r"), pt.u("n"))
}

pub fn thm6_at(c: &Coefficients, p: u32, r: i64, n: u32) -> Rational {
    win(i64::from(p) + 1)
        .map(|t| harm(c, n - 1, r - t) * c.coeff_a7(p, n, t))
        .sum()
}

pub fn thm6(c: &Coefficients, pt: &Point) -> Rational {
    thm6_at(c, pt.u("p"), pt.get("r"), pt.u("n"))
}

pub fn thm7_at(c: &Coefficients, p: u32, q: i64, r: u32, n: u32) -> Rational {
    win(i64::from(p + r))
        .map(|y| c.theorem7_c(p, r, n, y) * harm(c, n - 1, q - y))
        .sum()
}

pub fn thm7(c: &Coefficients, pt: &Point) -> Rational {
    thm7_at(c, pt.u("p"), pt.get("q"), pt.u("r"), pt.u("n"))
}

pub fn rem_gen_hh(c: &Coefficients, pt: &Point) -> Rational {
    let (p, q, r, n) = (pt.u("p"), pt.get("q"), pt.u("r"), pt.u("n"));
    rising_combination(c, p, |m| thm5_at(c, m, q, r, n))
}

pub fn rem_conv(c: &Coefficients, pt: &Point) -> Rational {
    let (p, r, n) = (pt.u("p"), pt.get("r"), pt.u("n"));
    rising_combination(c, p, |m| thm6_at(c, m, r, n))
}

pub fn rem_gen_conv(c: &Coefficients, pt: &Point) -> Rational {
    let (p, q, r, n) = (pt.u("p"), pt.get("q"), pt.u("r"), pt.u("n"));
    rising_combination(c, p, |m| thm7_at(c, m, q, r, n))
}
