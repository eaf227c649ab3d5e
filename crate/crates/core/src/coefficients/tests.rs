use super::*;
use crate::rational::factorial;

fn r(s: &str) -> Rational {
    s.parse().unwrap()
}

fn coeffs() -> Coefficients {
    Coefficients::default()
}

fn power_sum(k: u32, n: u32) -> Rational {
    (0..=n).map(|l| int_pow(l.into(), k)).sum()
}

/// `1/(x+1) + ... + 1/(x+m-1)`, straight from the definition.
fn bracket(x: i64, m: i64) -> Rational {
    (1..m).map(|i| Rational::frac(1, x + i)).sum()
}

#[test]
fn spiess_examples() {
    let c = coeffs();
    assert_eq!(c.spiess_a(0, 5), 6);
    assert_eq!(c.spiess_a(1, 3), 6);
    assert_eq!(c.spiess_a(2, 2), 5);
    assert_eq!(c.spiess_b(0, 2), 3);
    assert_eq!(c.spiess_b(1, 2), r("3/2"));
    assert_eq!(c.spiess_c(0, 2), 3);
    assert_eq!(c.spiess_f(1, 2), r("1/2"));
    assert_eq!(c.spiess_g(1, 2), r("-1/2"));
    assert_eq!(c.spiess_g_printed(1, 2), r("-1/4"));
    assert_eq!(c.spiess_h(1, 1).unwrap(), r("-1/2"));
    assert_eq!(c.spiess_h(1, 2).unwrap(), r("1/2"));
}

#[test]
fn spiess_e_is_the_polynomial_remainder() {
    let c = coeffs();
    for n in 0..8 {
        assert_eq!(c.spiess_e(1, n), Rational::frac(-i64::from(n), 2));
    }
    // brute force: E = sum l^k H_l^(2) - A H_n^(2) + (-1)^k B_k^+ H_n
    let inv_sq =
        |l: u32| -> Rational { (1..=l).map(|j| Rational::frac(1, i64::from(j * j))).sum() };
    let inv = |l: u32| -> Rational { (1..=l).map(|j| Rational::frac(1, i64::from(j))).sum() };
    for k in 0..=5u32 {
        let values: Vec<Rational> = (0..=12u32)
            .map(|n| {
                let lhs: Rational = (0..=n).map(|l| int_pow(l.into(), k) * inv_sq(l)).sum();
                let sign = if k % 2 == 0 { 1 } else { -1 };
                lhs - c.spiess_a(k, n) * inv_sq(n)
                    + Rational::from(sign) * c.seq().bernoulli_plus(k) * inv(n)
            })
            .collect();
        for n in 0..=12u32 {
            assert_eq!(c.spiess_e(k, n), values[n as usize], "k={k} n={n}");
        }
        // degree k + 1: the (k+2)-th finite difference vanishes
        let mut diff = values;
        for _ in 0..k + 2 {
            diff = diff.windows(2).map(|w| &w[1] - &w[0]).collect();
        }
        assert!(diff.iter().all(Rational::is_zero), "k={k}");
    }
}

#[test]
fn spiess_h_rejects_t_outside_window() {
    let c = coeffs();
    assert!(c.spiess_h(2, 0).is_err());
    assert!(c.spiess_h(2, 4).is_err());
    assert!(c.spiess_h(2, 3).is_ok());
}

#[test]
fn spiess_a_is_the_power_sum() {
    let c = coeffs();
    for k in 0..=6 {
        for n in 0..=40 {
            assert_eq!(c.spiess_a(k, n), power_sum(k, n), "A({k},{n})");
        }
    }
}

#[test]
fn base_identities_close() {
    let c = coeffs();
    let s = c.seq();
    for k in 0..=5u32 {
        for n in 0..=30u32 {
            let w = |l: u32| int_pow(l.into(), k);
            let a = c.spiess_a(k, n);
            let h1 = s.harmonic(n + 1, 1);

            let lhs: Rational = (0..=n).map(|l| w(l) * s.harmonic(l, 1)).sum();
            assert_eq!(lhs, &a * &h1 - c.spiess_b(k, n), "B k={k} n={n}");

            let lhs: Rational = (0..=n).map(|l| w(l) * s.harmonic(n - l, 1)).sum();
            assert_eq!(lhs, &a * &h1 - c.spiess_c(k, n), "C k={k} n={n}");

            let lhs: Rational = (0..=n)
                .map(|l| w(l) * s.harmonic(l, 1) * s.harmonic(n - l, 1))
                .sum();
            let rhs = &a * s.s_quantity(n + 1) - (c.spiess_b(k, n) + c.spiess_c(k, n)) * &h1
                + c.spiess_d(k, n);
            assert_eq!(lhs, rhs, "D k={k} n={n}");

            let hn = s.harmonic(n, 1);
            let lhs: Rational = (0..=n)
                .map(|l| w(l) * s.harmonic(l, 1) * s.harmonic(l, 1))
                .sum();
            let rhs = &a * &hn * &hn - c.spiess_f(k, n) * &hn + c.spiess_g(k, n);
            assert_eq!(lhs, rhs, "F/G k={k} n={n}");

            for order in -2..=6i64 {
                let lhs: Rational = (0..=n).map(|l| w(l) * s.harmonic(l, order)).sum();
                let tail: Rational = (1..=i64::from(k) + 1)
                    .map(|t| s.harmonic(n, order - t) * c.spiess_h(k, t).unwrap())
                    .sum();
                assert_eq!(
                    lhs,
                    &a * s.harmonic(n, order) - tail,
                    "H k={k} r={order} n={n}"
                );
            }
        }
    }
}

#[test]
fn printed_d_and_g_readings_fail() {
    let c = coeffs();
    let s = c.seq();
    // k = 1, n = 2: sum l H_l H_{2-l} = 1
    let lhs = Rational::one();
    let with = |d: Rational| {
        c.spiess_a(1, 2) * s.s_quantity(3)
            - (c.spiess_b(1, 2) + c.spiess_c(1, 2)) * s.harmonic(3, 1)
            + d
    };
    assert_eq!(with(c.spiess_d(1, 2)), lhs);
    assert_ne!(with(c.spiess_d_printed(1, 2)), lhs);
    assert_eq!(c.spiess_d(1, 2), 6);
    assert_eq!(c.spiess_d_printed(1, 2), 9);

    // k = 1, n = 2: sum l (H_l)^2 = 11/2 = 27/4 - 3/4 + G
    let h = s.harmonic(2, 1);
    let rhs = |g: Rational| c.spiess_a(1, 2) * &h * &h - c.spiess_f(1, 2) * &h + g;
    assert_eq!(rhs(c.spiess_g(1, 2)), r("11/2"));
    assert_eq!(rhs(c.spiess_g_printed(1, 2)), r("23/4"));
}

#[test]
fn negative_order_convention_check() {
    // k = 1, r = 1, n = 2: 1 H_1 + 2 H_2 = 4 = 3 (3/2) + (1/2) H_2^(0) - (1/2) H_2^(-1)
    let c = coeffs();
    let s = c.seq();
    assert_eq!(s.harmonic(2, 0), 2);
    assert_eq!(s.harmonic(2, -1), 3);
    let rhs = c.spiess_a(1, 2) * s.harmonic(2, 1)
        - s.harmonic(2, 0) * c.spiess_h(1, 1).unwrap()
        - s.harmonic(2, -1) * c.spiess_h(1, 2).unwrap();
    assert_eq!(rhs, 4);
}

#[test]
fn lemma_coefficient_examples() {
    let c = coeffs();
    for n in 0..6 {
        assert_eq!(c.coeff_a(1, 1, n, 0), 1);
        for t in -1..5 {
            assert_eq!(c.coeff_a1(3, 1, n, t), 0);
            assert_eq!(c.coeff_a2(1, 3, n, t), 0);
        }
    }
    assert_eq!(c.coeff_a(2, 2, 3, 2), -1);
    assert_eq!(c.coeff_a(2, 2, 3, 0), 4);
    assert_eq!(c.coeff_a(2, 2, 3, 3), 0);
    assert_eq!(c.coeff_a1(1, 2, 4, 0), 1);
    assert_eq!(c.coeff_a4(1, 0), 1);
    assert_eq!(c.coeff_a4(2, 2), 1);
    assert_eq!(c.coeff_a5(2, 0), 1);
}

fn expand(coef: impl Fn(i64) -> Rational, degree: i64, l: u32) -> Rational {
    (0..=degree)
        .map(|t| coef(t) * int_pow(l.into(), t as u32))
        .sum()
}

#[test]
fn binomial_product_lemmas_hold_pointwise() {
    let c = coeffs();
    for rr in 1..=5u32 {
        for ss in 1..=5u32 {
            let (ri, si) = (i64::from(rr), i64::from(ss));
            for n in 0..=20u32 {
                for l in 0..=n {
                    let (li, ni) = (i64::from(l), i64::from(n));
                    let base = binomial(li + ri - 1, ri - 1) * binomial(ni - li + si - 1, si - 1);
                    let right = bracket(ni - li, si);
                    let left = bracket(li, ri);
                    let deg = ri + si - 2;
                    assert_eq!(
                        expand(|t| c.coeff_a(rr, ss, n, t), deg, l),
                        base,
                        "a {rr} {ss} {n} {l}"
                    );
                    assert_eq!(
                        expand(|t| c.coeff_a1(rr, ss, n, t), deg, l),
                        &base * &right,
                        "a1"
                    );
                    assert_eq!(
                        expand(|t| c.coeff_a2(rr, ss, n, t), deg, l),
                        &base * &left,
                        "a2"
                    );
                    assert_eq!(
                        expand(|t| c.coeff_a3(rr, ss, n, t), deg, l),
                        &base * &left * &right,
                        "a3"
                    );
                }
            }
        }
    }
}

/// The last display in the proof of the one-bracket lemma uses
/// `su(s, k2 + 1)` where the statement has `su(s, k2 + 2)`. Evaluated
/// literally it does not reproduce the product, so the statement form is
/// the one implemented.
#[test]
fn proof_display_of_right_bracket_lemma_fails() {
    let seq = SeqCache::new();
    let su = |n: i64, k: i64| Rational::from(seq.stirling_unsigned(n as u32, k));
    let proof_form = |r: i64, s: i64, n: i64, t: i64| -> Rational {
        let mut acc = Rational::zero();
        for t1 in 0..=r - 1 {
            let t2 = t - t1;
            if !(0..=s - 2).contains(&t2) {
                continue;
            }
            for k2 in t2..=s - 2 {
                let sign = if t2 % 2 == 0 { 1 } else { -1 };
                acc += su(r, t1 + 1)
                    * su(s, k2 + 1)
                    * Rational::from(k2 + 1)
                    * binomial(k2, t2)
                    * Rational::from(sign)
                    * int_pow(n, (k2 - t2) as u32);
            }
        }
        acc * Rational::from(factorial((r - 1) as u32) * factorial((s - 1) as u32))
            .recip()
            .unwrap()
    };
    // r = 1, s = 3, n = 0, l = 0: C(2,2) (1/1 + 1/2) = 3/2
    let literal: Rational = proof_form(1, 3, 0, 0);
    assert_ne!(literal, r("3/2"));
    assert_eq!(coeffs().coeff_a1(1, 3, 0, 0), r("3/2"));
}

#[test]
fn square_expansions_hold_pointwise() {
    let c = coeffs();
    for rr in 1..=5u32 {
        let ri = i64::from(rr);
        for l in 0..=20u32 {
            let li = i64::from(l);
            let b = binomial(li + ri - 1, ri - 1);
            assert_eq!(expand(|t| c.coeff_a4(rr, t), 2 * ri - 2, l), &b * &b);
            assert_eq!(
                expand(|t| c.coeff_a5(rr, t), 2 * ri - 3, l),
                &b * &b * bracket(li, ri)
            );
        }
    }
}

#[test]
fn kamano_expansions() {
    let s = SeqCache::new();
    for rr in 1..=6u32 {
        let ri = i64::from(rr);
        let inv = Rational::from(factorial(rr - 1)).recip().unwrap();
        for n in 0..=30i64 {
            let rhs: Rational = (1..=ri)
                .map(|k| Rational::from(s.stirling_unsigned(rr, k)) * int_pow(n, (k - 1) as u32))
                .sum();
            assert_eq!(binomial(n + ri - 1, ri - 1), &inv * rhs);
            let rhs: Rational = (1..ri)
                .map(|k| {
                    Rational::from(s.stirling_unsigned(rr, k + 1) * k) * int_pow(n, (k - 1) as u32)
                })
                .sum();
            assert_eq!(binomial(n + ri - 1, ri - 1) * bracket(n, ri), &inv * rhs);
        }
    }
}

#[test]
fn ahat_small_tables() {
    let seq = SeqCache::new();
    let t1 = build_ahat(1, &seq);
    assert_eq!(t1.r_max(), 1);
    assert_eq!(t1.get(1, 0, 0), 1);
    assert_eq!(t1.get(1, 0, 1), 0);

    let t2 = build_ahat(2, &seq);
    assert_eq!(t2.get(2, 0, 0), 1);
    assert_eq!(t2.get(2, 0, 1), 1);
    assert_eq!(t2.get(2, 1, 0), -1);
    assert_eq!(t2.get(2, 1, 1), 0);

    let t3 = build_ahat(3, &seq);
    let row3 = [
        ((0, 0), "1"),
        ((0, 1), "3/2"),
        ((0, 2), "1/2"),
        ((1, 0), "-3/2"),
        ((1, 1), "-1"),
        ((2, 0), "1/2"),
    ];
    for ((m, j), v) in row3 {
        assert_eq!(t3.get(3, m, j), r(v), "ahat(3,{m},{j})");
    }
    // truncating a bigger table gives the same rows
    assert_eq!(coeffs().ahat_table(3), t3);
}

#[test]
fn ahat_expansion_reproduces_generalized_hyperharmonic() {
    let c = coeffs();
    let table = build_ahat(5, c.seq());
    for rr in 1..=5u32 {
        let ri = i64::from(rr);
        for p in i64::from(rr)..=8 {
            for n in 0..=25u32 {
                let rhs: Rational = (0..ri)
                    .flat_map(|m| (0..ri - m).map(move |j| (m, j)))
                    .map(|(m, j)| {
                        table.get(rr, m, j)
                            * int_pow(n.into(), j as u32)
                            * c.seq().harmonic(n, p - m)
                    })
                    .sum();
                assert_eq!(
                    rhs,
                    c.seq().gen_hyperharmonic(n, p, rr),
                    "r={rr} p={p} n={n}"
                );
            }
        }
    }
    // worked point r = 2, p = 2, n = 3
    let s = c.seq();
    assert_eq!(
        Rational::from(4) * s.harmonic(3, 2) - s.harmonic(3, 1),
        r("65/18")
    );
}

#[test]
fn a6_through_a8_examples() {
    let c = coeffs();
    assert_eq!(c.coeff_a6(1, 3, 0), 6);
    assert_eq!(c.coeff_a6(1, 3, 1), r("-7/2"));
    assert_eq!(c.coeff_a6(1, 3, 2), r("1/2"));
    assert_eq!(c.coeff_a6(1, 3, 3), 0);
    assert_eq!(c.coeff_a7(1, 3, 0), 6);
    for t in 0..3 {
        assert_eq!(c.coeff_a7(0, 4, t), 0);
    }
    let direct = c.coeff_a6(1, 2, 0) + Rational::from(2) * c.coeff_a6(2, 2, 0);
    assert_eq!(c.coeff_a7(2, 2, 0), direct);
    assert_eq!(c.coeff_a7(2, 2, 0), 5);
    assert_eq!(c.coeff_a8(1, 0, 0, 9), 1);
    assert_eq!(c.coeff_a8(2, 0, 1, 3), -1);
    assert_eq!(c.coeff_a8(2, 0, 0, 5), 6);
    assert_eq!(c.coeff_a8(2, 1, 1, 5), 0);
}

#[test]
fn lemma8_and_reflected_power_sums() {
    let c = coeffs();
    let s = c.seq();
    for p in 1..=4u32 {
        for order in 1..=5i64 {
            for n in 2..=25u32 {
                let lhs: Rational = (1..=n)
                    .map(|k| binomial(k.into(), p.into()) * s.harmonic(n - k, order))
                    .sum();
                let rhs: Rational = (0..=i64::from(p) + 1)
                    .map(|t| c.coeff_a6(p, n, t) * s.harmonic(n - 1, order - t))
                    .sum();
                assert_eq!(lhs, rhs, "lemma 8 p={p} r={order} n={n}");

                let lhs: Rational = (0..=n)
                    .map(|l| int_pow(l.into(), p) * s.harmonic(n - l, order))
                    .sum();
                let rhs: Rational = (0..=i64::from(p) + 1)
                    .map(|t| s.harmonic(n - 1, order - t) * c.coeff_a7(p, n, t))
                    .sum();
                assert_eq!(lhs, rhs, "reflected p={p} r={order} n={n}");
            }
        }
    }
    // worked point p = 1, r = 1, n = 3
    let lhs = s.harmonic(2, 1) + Rational::from(2) * s.harmonic(1, 1);
    assert_eq!(lhs, r("7/2"));
    let rhs = Rational::from(6) * s.harmonic(2, 1) - r("7/2") * s.harmonic(2, 0)
        + r("1/2") * s.harmonic(2, -1);
    assert_eq!(rhs, r("7/2"));
}

#[test]
fn evaluate_by_name() {
    let c = coeffs();
    assert_eq!(c.evaluate(Family::A6, &[1, 3, 1]).unwrap(), r("-7/2"));
    assert_eq!(
        c.evaluate("G".parse().unwrap(), &[1, 2]).unwrap(),
        r("-1/2")
    );
    assert!(c.evaluate(Family::A6, &[1, 3]).is_err());
    assert!(c.evaluate(Family::SpiessA, &[-1, 3]).is_err());
    assert!(c.evaluate(Family::SpiessH, &[1, 5]).is_err());
    assert!("zz".parse::<Family>().is_err());
    for f in Family::ALL {
        assert_eq!(f.name().parse::<Family>().unwrap(), f);
    }
}

#[test]
fn memo_is_transparent() {
    let warm = coeffs();
    for n in 0..10 {
        let _ = warm.coeff_a3(3, 4, n, 2);
        let _ = warm.spiess_d(3, n);
    }
    let fresh = coeffs();
    for n in (0..10).rev() {
        assert_eq!(warm.coeff_a3(3, 4, n, 2), fresh.coeff_a3(3, 4, n, 2));
        assert_eq!(warm.spiess_d(3, n), fresh.spiess_d(3, n));
    }
}
