use std::collections::BTreeMap;

use clap::Args;
use hhlab::{
    binomial, falling_factorial, rising_factorial, Coefficients, Family, HyperRoute, Rational,
};

use crate::error::{CliError, CliResult};

pub const NAMES: [&str; 12] = [
    "harmonic",
    "hyperharmonic",
    "gen-hyperharmonic",
    "stirling1",
    "stirling2",
    "stirling-unsigned",
    "bernoulli",
    "s-quantity",
    "binomial",
    "falling-factorial",
    "rising-factorial",
    "coeff",
];

#[derive(Debug, Clone, Args)]
pub struct ComputeArgs {
    /// Sequence name, or `coeff` together with `--family`.
    pub name: String,
    #[arg(long)]
    pub family: Option<String>,
    #[arg(long, value_parser = hhlab_route)]
    pub route: Option<HyperRoute>,
    /// Rational argument of the factorial powers.
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub n: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub k: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub p: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub q: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub r: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub s: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub t: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub m: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub j: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub y: Option<i64>,
}

fn hhlab_route(s: &str) -> Result<HyperRoute, String> {
    s.parse().map_err(|e: hhlab::Error| e.to_string())
}

impl ComputeArgs {
    fn indices(&self) -> BTreeMap<&'static str, i64> {
        [
            ("n", self.n),
            ("k", self.k),
            ("p", self.p),
            ("q", self.q),
            ("r", self.r),
            ("s", self.s),
            ("t", self.t),
            ("m", self.m),
            ("j", self.j),
            ("y", self.y),
        ]
        .into_iter()
        .filter_map(|(k, v)| v.map(|v| (k, v)))
        .collect()
    }
}

struct Lookup<'a> {
    name: &'a str,
    given: BTreeMap<&'static str, i64>,
}

impl Lookup<'_> {
    fn int(&self, key: &str) -> CliResult<i64> {
        self.given
            .get(key)
            .copied()
            .ok_or_else(|| CliError::usage(format!("{} needs --{key}", self.name)))
    }

    fn nat(&self, key: &str) -> CliResult<u32> {
        u32::try_from(self.int(key)?)
            .map_err(|_| CliError::usage(format!("--{key} must be non-negative")))
    }

    fn pos(&self, key: &str) -> CliResult<u32> {
        match self.nat(key)? {
            0 => Err(CliError::usage(format!("--{key} must be positive"))),
            v => Ok(v),
        }
    }
}

/// Evaluates one named value.
pub fn compute(args: &ComputeArgs, coeffs: &Coefficients) -> CliResult<Rational> {
    let seq = coeffs.seq();
    let a = Lookup {
        name: &args.name,
        given: args.indices(),
    };
    let x = || -> CliResult<Rational> {
        let text = args
            .x
            .as_deref()
            .ok_or_else(|| CliError::usage(format!("{} needs --x", args.name)))?;
        text.parse()
            .map_err(|e: hhlab::Error| CliError::usage(e.to_string()))
    };
    Ok(match args.name.as_str() {
        "harmonic" => seq.harmonic(a.nat("n")?, args.q.unwrap_or(1)),
        "hyperharmonic" => seq.hyperharmonic(
            a.nat("n")?,
            a.pos("r")?,
            args.route.unwrap_or(HyperRoute::Recurrence),
        ),
        "gen-hyperharmonic" => seq.gen_hyperharmonic(a.nat("n")?, a.int("p")?, a.pos("r")?),
        "stirling1" => Rational::from_integer(seq.stirling_first(a.nat("n")?, a.int("k")?)),
        "stirling2" => Rational::from_integer(seq.stirling_second(a.nat("n")?, a.int("k")?)),
        "stirling-unsigned" => {
            Rational::from_integer(seq.stirling_unsigned(a.nat("n")?, a.int("k")?))
        }
        "bernoulli" => seq.bernoulli_plus(a.nat("n")?),
        "s-quantity" => seq.s_quantity(a.nat("n")?),
        "binomial" => binomial(a.int("n")?, a.int("k")?),
        "falling-factorial" => falling_factorial(&x()?, a.nat("n")?),
        "rising-factorial" => rising_factorial(&x()?, a.nat("n")?),
        "coeff" => {
            let name = args
                .family
                .as_deref()
                .ok_or_else(|| CliError::usage("coeff needs --family"))?;
            let family: Family = name
                .parse()
                .map_err(|e: hhlab::Error| CliError::usage(e.to_string()))?;
            let values = family
                .params()
                .iter()
                .map(|p| a.int(p))
                .collect::<CliResult<Vec<_>>>()?;
            coeffs
                .evaluate(family, &values)
                .map_err(|e| CliError::usage(e.to_string()))?
        }
        other => {
            return Err(CliError::usage(format!(
                "unknown name {other:?}; expected one of {}",
                NAMES.join(", ")
            )))
        }
    })
}
