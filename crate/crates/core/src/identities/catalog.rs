use super::{
    closed, oracle, Bound, ClosedFn, Constraint, Identity, OracleFn, Param, ParamRange, Point,
    Role, Variant,
};
use crate::coefficients::Coefficients;
use crate::rational::Rational;

fn param(name: &'static str, role: Role, min: i64, lo: Bound, hi: Bound) -> Param {
    Param {
        name,
        role,
        min,
        default_range: ParamRange { lo, hi },
    }
}

fn c(v: i64) -> Bound {
    Bound::Const(v)
}

fn rel(name: &str, off: i64) -> Bound {
    Bound::Rel(name.to_string(), off)
}

fn n() -> Param {
    param("n", Role::N, 1, c(1), c(25))
}

fn n0() -> Param {
    param("n", Role::N, 0, c(0), c(25))
}

fn k() -> Param {
    param("k", Role::P, 0, c(0), c(5))
}

fn p() -> Param {
    param("p", Role::P, 1, c(1), c(4))
}

fn r() -> Param {
    param("r", Role::R, 1, c(1), c(4))
}

fn s() -> Param {
    param("s", Role::S, 1, c(1), c(4))
}

fn q() -> Param {
    param("q", Role::Q, 1, rel("r", 0), rel("r", 3))
}

/// `l` inside `0..=n`.
fn l_in_n() -> Param {
    param("l", Role::N, 0, c(0), rel("n", 0))
}

fn l_free() -> Param {
    param("l", Role::N, 0, c(0), c(20))
}

fn q_ge_r() -> Constraint {
    Constraint {
        label: "q >= r",
        check: |pt: &Point| pt.get("q") >= pt.get("r"),
    }
}

fn l_le_n() -> Constraint {
    Constraint {
        label: "l <= n",
        check: |pt: &Point| pt.get("l") <= pt.get("n"),
    }
}

struct Row {
    id: &'static str,
    summary: &'static str,
    params: Vec<Param>,
    constraints: Vec<Constraint>,
    lhs: OracleFn,
    paper: Option<ClosedFn>,
    corrected: Option<ClosedFn>,
    notes: &'static str,
}

impl Row {
    fn new(
        id: &'static str,
        summary: &'static str,
        params: Vec<Param>,
        lhs: OracleFn,
        paper: ClosedFn,
    ) -> Self {
        Row {
            id,
            summary,
            params,
            constraints: Vec::new(),
            lhs,
            paper: Some(paper),
            corrected: None,
            notes: "",
        }
    }

    fn oracle_only(
        id: &'static str,
        summary: &'static str,
        params: Vec<Param>,
        lhs: OracleFn,
    ) -> Self {
        Row {
            id,
            summary,
            params,
            constraints: Vec::new(),
            lhs,
            paper: None,
            corrected: None,
            notes: "",
        }
    }

    fn corrected(mut self, f: ClosedFn) -> Self {
        self.corrected = Some(f);
        self
    }

    fn constraint(mut self, c: Constraint) -> Self {
        self.constraints.push(c);
        self
    }

    fn notes(mut self, notes: &'static str) -> Self {
        self.notes = notes;
        self
    }

    fn build(self) -> Identity {
        let variants = [
            (Variant::Paper, self.paper),
            (Variant::Corrected, self.corrected),
        ]
        .into_iter()
        .filter_map(|(v, f)| f.map(|f| (v, f)))
        .collect();
        Identity {
            id: self.id,
            summary: self.summary,
            params: self.params,
            constraints: self.constraints,
            lhs: self.lhs,
            variants,
            notes: self.notes,
        }
    }
}

pub(super) fn rows() -> Vec<Identity> {
    vec![
        Row::new("base_a", "sum_{l=0}^n l^k", vec![k(), n0()], oracle::base_a, closed::base_a)
            .notes("power sum A(k,n)"),
        Row::new("base_b", "sum_{l=0}^n l^k H_l", vec![k(), n0()], oracle::base_b, closed::base_b)
            .notes("A(k,n) H_{n+1} - B(k,n)"),
        Row::new("base_c", "sum_{l=0}^n l^k H_{n-l}", vec![k(), n0()], oracle::base_c, closed::base_c)
            .notes("A(k,n) H_{n+1} - C(k,n)"),
        Row::new("base_d", "sum_{l=0}^n l^k H_l H_{n-l}", vec![k(), n0()], oracle::base_d, closed::base_d_paper)
            .corrected(closed::base_d_corrected)
            .notes("A S_{n+1} - (B+C) H_{n+1} + D; the printed D squares H_{l+1} where the identity needs H_{l+1}^(2)"),
        Row::oracle_only("base_e", "sum_{l=0}^n l^k H_l^(2)", vec![k(), n0()], oracle::base_e)
            .corrected(closed::base_e_corrected)
            .notes("corrected only: A H_n^(2) - (-1)^k B_k^+ H_n + E; the printed line squares H_n, indexes B by an unbound p and leaves E unspecified"),
        Row::new("base_fg", "sum_{l=0}^n l^k (H_l)^2", vec![k(), n0()], oracle::base_fg, closed::base_fg_paper)
            .corrected(closed::base_fg_corrected)
            .notes("A (H_n)^2 - F H_n + G; the printed G uses inner order 2-l where the identity needs 2-i"),
        Row::new("base_h", "sum_{l=0}^n l^k H_l^(r)", vec![k(), r(), n0()], oracle::base_h, closed::base_h)
            .notes("A H_n^(r) - sum_t H_n^(r-t) H(k,t), orders extended to all integers"),
        Row::new("s_three_way", "sum_{k=1}^n H_{n-k}/k", vec![n()], oracle::s_convolution, closed::s_three_way)
            .notes("S_n = (2/n!) s_u(n+1,3)"),
        Row::new("s_squares", "sum_{k=1}^n H_{n-k}/k", vec![n()], oracle::s_convolution, closed::s_squares)
            .notes("S_n = (H_n)^2 - H_n^(2)"),
        Row::new("sum_hk_over_k", "sum_{k=1}^n H_k/k", vec![n()], oracle::sum_hk_over_k, closed::sum_hk_over_k)
            .notes("((H_n)^2 + H_n^(2))/2"),
        Row::new("bhh6", "sum_{l=1}^n l H_l H_{n-l}", vec![n()], oracle::bhh6, closed::bhh6),
        Row::new("bhh4", "sum_{l=1}^n l^2 H_l H_{n-l}", vec![n()], oracle::bhh4, closed::bhh4),
        Row::new("bhh5", "sum_{l=1}^n l^3 H_l H_{n-l}", vec![n()], oracle::bhh5, closed::bhh5),
        Row::new("cor_h2conv", "sum_{l=1}^n l h_l^(2) h_{n-l}^(2)", vec![n()], oracle::cor_h2conv, closed::cor_h2conv)
            .notes("second-order hyperharmonic reading; the generalized-harmonic reading fails from n = 3"),
        Row::new("lemma1", "sum_{l=0}^n l^p H_l", vec![param("p", Role::P, 0, c(0), c(5)), n0()], oracle::lemma1, closed::lemma1)
            .notes("Stirling conversion from binomial weights, with F(n,j) = C(n+1,j+1)(H_{n+1} - 1/(j+1))"),
        Row::new("kamano5", "C(n+r-1, r-1)", vec![r(), n0()], oracle::kamano5, closed::kamano5),
        Row::new(
            "kamano6",
            "C(n+r-1, r-1) (1/(n+1) + ... + 1/(n+r-1))",
            vec![r(), n0()],
            oracle::kamano6,
            closed::kamano6,
        ),
        Row::new("lemma3", "C(l+r-1, r-1) C(n-l+s-1, s-1)", vec![r(), s(), n0(), l_in_n()], oracle::lemma3, closed::lemma3)
            .constraint(l_le_n()),
        Row::new(
            "lemma4",
            "C(l+r-1, r-1) C(n-l+s-1, s-1) (1/(n-l+1) + ... + 1/(n-l+s-1))",
            vec![r(), s(), n0(), l_in_n()],
            oracle::lemma4,
            closed::lemma4,
        )
        .constraint(l_le_n()),
        Row::new(
            "lemma5",
            "C(l+r-1, r-1) C(n-l+s-1, s-1) (1/(l+1) + ... + 1/(l+r-1))",
            vec![r(), s(), n0(), l_in_n()],
            oracle::lemma5,
            closed::lemma5,
        )
        .constraint(l_le_n()),
        Row::new(
            "lemma6",
            "C(l+r-1, r-1) C(n-l+s-1, s-1) (1/(l+1) + ... + 1/(l+r-1)) (1/(n-l+1) + ... + 1/(n-l+s-1))",
            vec![r(), s(), n0(), l_in_n()],
            oracle::lemma6,
            closed::lemma6,
        )
        .constraint(l_le_n()),
        Row::new("a4_expansion", "C(l+r-1, r-1)^2", vec![r(), l_free()], oracle::a4_expansion, closed::a4_expansion),
        Row::new(
            "a5_expansion",
            "C(l+r-1, r-1)^2 (1/(l+1) + ... + 1/(l+r-1))",
            vec![r(), l_free()],
            oracle::a5_expansion,
            closed::a5_expansion,
        ),
        Row::new(
            "lemma7",
            "H_n^(p,r)",
            vec![r(), param("p", Role::Q, 1, rel("r", 0), c(8)), n0()],
            oracle::lemma7,
            closed::lemma7,
        )
        .notes("sum_m sum_j ahat(r,m,j) n^j H_n^(p-m)"),
        Row::new(
            "lemma8",
            "sum_{k=1}^n C(k,p) H_{n-k}^(r)",
            vec![p(), param("r", Role::Q, 1, c(1), c(5)), n()],
            oracle::lemma8,
            closed::lemma8,
        ),
        Row::new("thm1", "sum_{l=0}^n l^p h_l^(r) h_{n-l}^(s)", vec![p(), r(), s(), n()], oracle::thm1, closed::thm1_paper)
            .corrected(closed::thm1_corrected)
            .notes("corrected: sum of the nine parts of the decomposition, with -(B+C)/(n+1) in the first and coefficient a in the third"),
        Row::new(
            "thm2",
            "sum_{l=0}^n (l)^(p) h_l^(r) h_{n-l}^(s)",
            vec![p(), r(), s(), n()],
            oracle::thm2,
            closed::thm2_paper,
        )
        .corrected(closed::thm2_corrected)
        .notes("s_u(p,m)-combination of the matching thm1 variant"),
        Row::new("thm3", "sum_{l=0}^n l^p (h_l^(r))^2", vec![p(), r(), n()], oracle::thm3, closed::thm3),
        Row::new("thm4", "sum_{l=0}^n (l)^(p) (h_l^(r))^2", vec![p(), r(), n()], oracle::thm4, closed::thm4),
        Row::new("thm5", "sum_{l=0}^n l^p H_l^(q,r)", vec![p(), q(), r(), n()], oracle::thm5, closed::thm5)
            .constraint(q_ge_r()),
        Row::new(
            "thm6",
            "sum_{l=0}^n l^p H_{n-l}^(r)",
            vec![p(), param("r", Role::Q, 1, c(1), c(5)), n()],
            oracle::thm6,
            closed::thm6,
        ),
        Row::new("thm7", "sum_{l=0}^n l^p H_{n-l}^(q,r)", vec![p(), q(), r(), n()], oracle::thm7, closed::thm7),
        Row::new("rem_gen_hh", "sum_{l=0}^n (l)^(p) H_l^(q,r)", vec![p(), q(), r(), n()], oracle::rem_gen_hh, closed::rem_gen_hh)
            .constraint(q_ge_r()),
        Row::new(
            "rem_conv",
            "sum_{l=0}^n (l)^(p) H_{n-l}^(r)",
            vec![p(), param("r", Role::Q, 1, c(1), c(5)), n()],
            oracle::rem_conv,
            closed::rem_conv,
        ),
        Row::new(
            "rem_gen_conv",
            "sum_{l=0}^n (l)^(p) H_{n-l}^(q,r)",
            vec![p(), q(), r(), n()],
            oracle::rem_gen_conv,
            closed::rem_gen_conv,
        ),
    ]
    .into_iter()
    .map(Row::build)
    .collect()
}

/// The printed right-hand side of `cor_h2conv` next to both readings of its
/// left-hand side at `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorollaryReadings {
    pub printed: Rational,
    pub hyperharmonic: Rational,
    pub generalized: Rational,
}

pub fn corollary_readings(coeffs: &Coefficients, n: u32) -> CorollaryReadings {
    let row = super::Registry::standard()
        .get("cor_h2conv")
        .expect("registered");
    let pt = row.point(&[("n", n.into())]).expect("single parameter");
    CorollaryReadings {
        printed: closed::cor_h2conv(coeffs, &pt),
        hyperharmonic: oracle::cor_h2conv(coeffs.seq(), &pt),
        generalized: oracle::cor_h2conv_generalized(coeffs.seq(), n.into()),
    }
}
