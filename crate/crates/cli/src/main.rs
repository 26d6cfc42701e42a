//! `dold-zeta`: Lefschetz numbers, Dold indices, zeta functions and the
//! generating-function identities of induced maps, from the command line.

mod input;
mod render;
mod selftest;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dold_zeta_core::dynamics::{cycle_profile, lefschetz_from_dold, zeta_product_form, DoldProfile, FiniteSelfMap};
use dold_zeta_core::engine::{
    bounded_tuple_counts, configuration_trace_series, configuration_traces, disjoint_union_combine,
    disjoint_union_counts, gsymm_polynomial, realize_polynomial, rhs_borsuk_ulam, rhs_bounded_tuples,
    rhs_symmetric_power, block_counts_polynomial, CoefficientTraces, DynamicsSource, LefschetzPolynomial,
    PartitionRecursion, VerificationPlan,
};
use dold_zeta_core::graded::GradedEndomorphism;
use dold_zeta_core::oracle::{Bound, Oracle, DEFAULT_MAX_ENUM};
use dold_zeta_core::partition::{GSet, GSetJson, PartitionFamily, PermutationGroup};
use dold_zeta_core::series::power::coeff_strings;
use dold_zeta_core::series::rational::{format_rational, parse_rational, to_integer};
use dold_zeta_core::series::{MultiPoly, Poly, PowerSeries, Rational};
use dold_zeta_core::Error;
use serde_json::{json, Value};

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Parser)]
#[command(name = "dold-zeta", version, about = "Exact Lefschetz, Dold and zeta computations for induced self-maps")]
struct Cli {
    /// Truncation order of every series.
    #[arg(short = 'N', long = "order", global = true, default_value_t = 12,
          value_parser = clap::value_parser!(u16).range(1..=64))]
    order: u16,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

/// Exactly one description of the self-map. JSON values may be inline or `@file`.
#[derive(Args, Clone)]
#[group(required = true, multiple = false)]
struct Source {
    /// A finite self-map, e.g. {"size":3,"map":[1,2,0]}.
    #[arg(long)]
    map: Option<String>,
    /// Dold indices D_1, D_2, .. as a JSON integer array.
    #[arg(long)]
    profile: Option<String>,
    /// Lefschetz numbers L(f), L(f^2), .. as a JSON integer array.
    #[arg(long)]
    lefschetz: Option<String>,
    /// A graded endomorphism, e.g. {"degrees":{"0":[[1]],"1":[[3]]}}.
    #[arg(long)]
    graded: Option<String>,
    /// A zeta series {"order":..,"coeffs":[..]} with constant term 1.
    #[arg(long)]
    zeta: Option<String>,
}

struct Resolved {
    dold: Option<DoldProfile>,
    zeta: PowerSeries,
}

impl Source {
    fn resolve(&self, order: usize) -> Result<Resolved, CliError> {
        if let Some(g) = &self.graded {
            let a: GradedEndomorphism = input::read_json("graded", g)?;
            let zeta = a.zeta(order)?;
            let dold = graded_source(a).dold_profile(order).ok();
            return Ok(Resolved { dold, zeta });
        }
        if let Some(z) = &self.zeta {
            let s: PowerSeries = input::read_json("zeta", z)?;
            if s.order() < order {
                return Err(Error::HorizonTooShort { needed: order, have: s.order() }.into());
            }
            if s.coeff(0) != &Rational::from_integer(1.into()) {
                return Err(CliError::Usage("--zeta: constant term must be 1".into()));
            }
            return Ok(Resolved { dold: None, zeta: s.truncate(order) });
        }
        let mut src = DynamicsSource::default();
        if let Some(m) = &self.map {
            src.map = Some(input::read_json::<FiniteSelfMap>("map", m)?);
        } else if let Some(p) = &self.profile {
            src.dold = Some(input::read_ints("profile", p)?);
        } else if let Some(l) = &self.lefschetz {
            src.lefschetz = Some(input::read_ints("lefschetz", l)?);
        }
        let d = src.dold_profile(order)?;
        let zeta = zeta_product_form(&d, order)?;
        Ok(Resolved { dold: Some(d), zeta })
    }
}

fn graded_source(a: GradedEndomorphism) -> DynamicsSource {
    DynamicsSource { graded: Some(a), ..Default::default() }
}

/// How the group acts on the coefficient space.
#[derive(Args, Clone)]
#[group(multiple = false)]
struct Coefficients {
    /// A pointed G-set {"size":..,"action":{..}} used as coefficient space.
    #[arg(long)]
    coefficients: Option<String>,
    /// One rational trace per group element, as a JSON array.
    #[arg(long)]
    traces: Option<String>,
    /// Traces n^c(g), c(g) the number of cycles of g.
    #[arg(long, allow_hyphen_values = true)]
    cycle_power: Option<String>,
}

impl Coefficients {
    fn resolve(&self, group: &PermutationGroup) -> Result<CoefficientTraces, CliError> {
        if let Some(y) = &self.coefficients {
            let y: GSetJson = input::read_json("coefficients", y)?;
            return Ok(CoefficientTraces::Space(y.into_gset(group)?));
        }
        if let Some(t) = &self.traces {
            let raw: Vec<Value> = input::read_json("traces", t)?;
            let vals = raw
                .iter()
                .map(|v| match v {
                    Value::String(s) => parse_rational(s).map_err(CliError::from),
                    Value::Number(n) => parse_rational(&n.to_string()).map_err(CliError::from),
                    _ => Err(CliError::Usage(format!("--traces: {v} is not a rational"))),
                })
                .collect::<Result<Vec<_>, _>>()?;
            return Ok(CoefficientTraces::Values(vals));
        }
        if let Some(n) = &self.cycle_power {
            return Ok(CoefficientTraces::CyclePower(parse_rational(n)?));
        }
        Ok(CoefficientTraces::Trivial)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Dold indices, Lefschetz numbers and zeta function of a finite self-map.
    Dold {
        #[arg(long)]
        map: String,
    },
    /// The zeta function from any description of the self-map.
    Zeta {
        #[command(flatten)]
        source: Source,
    },
    /// Σ L(S^k_l f) q^k for the bounded symmetric powers.
    Symmetric {
        #[command(flatten)]
        source: Source,
        /// Multiplicity bound, an integer or inf.
        #[arg(long, default_value = "inf")]
        l: Bound,
    },
    /// Σ L(P^k f) q^k for the quotients of the configuration spaces by ±1.
    BorsukUlam {
        #[command(flatten)]
        source: Source,
    },
    /// Exponential series of L(T^k_l f) for the bounded tuple spaces.
    Tuples {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value = "inf")]
        l: Bound,
    },
    /// The orbit-sum Lefschetz polynomial of X ↦ (X^K ∧ Y)/G.
    Gsymm {
        #[arg(long)]
        group: String,
        /// A G-set {"size":..,"action":{..}}; the natural action when omitted.
        #[arg(long)]
        kset: Option<String>,
        #[command(flatten)]
        coefficients: Coefficients,
        /// Also evaluate at the cycle profile of this map.
        #[arg(long)]
        map: Option<String>,
    },
    /// The Lefschetz polynomial of a partition-constrained functor.
    Partition {
        #[arg(long)]
        group: String,
        #[arg(long)]
        family: String,
        #[command(flatten)]
        coefficients: Coefficients,
        /// Seed a random choice among minimal excluded partitions.
        #[arg(long)]
        seed: Option<u64>,
        /// Include every recursion step in the output.
        #[arg(long)]
        ledger: bool,
        #[arg(long)]
        map: Option<String>,
    },
    /// The order polynomial Σ n_r t(t-1)..(t-r+1) of a partition family.
    OrderPoly {
        #[arg(long)]
        family: String,
        /// A second family; the result is for the disjoint union.
        #[arg(long)]
        with: Option<String>,
    },
    /// Characteristic function, Lefschetz numbers, zeta and P(A; q, T).
    Graded {
        #[arg(long)]
        graded: String,
    },
    /// Traces of ±1 on the cohomology of configuration spaces.
    ConfigTrace {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        parity: Parity,
        /// The sign ε by which the map acts on the top class.
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        epsilon: i64,
    },
    /// Run a verification plan against the brute-force oracles.
    Verify {
        #[arg(long)]
        plan: String,
        /// Largest k when the plan sets none.
        #[arg(short, long, default_value_t = 4)]
        k: usize,
    },
    /// Write a polynomial as wedges, smashes and compositions of basic functors.
    Realize {
        /// A polynomial {"vars":..,"terms":[{"exponents":[..],"coeff":".."}]}.
        #[arg(long)]
        polynomial: String,
        #[arg(short, long)]
        k: usize,
    },
    /// The property suite at reduced sizes.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args, Clone, Copy)]
#[group(required = true, multiple = false)]
struct Parity {
    /// Odd-dimensional manifold.
    #[arg(long)]
    odd: bool,
    /// Even-dimensional manifold.
    #[arg(long)]
    even: bool,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Core(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(Error::Invariant(_)) => 1,
            _ => 2,
        }
    }

    fn to_value(&self) -> Value {
        match self {
            CliError::Usage(m) => json!({"error": "usage", "message": m}),
            CliError::Core(e @ Error::TooLarge { what, size, limit }) => json!({
                "error": "too-large",
                "message": e.to_string(),
                "what": what,
                "size": size.to_string(),
                "limit": limit.to_string(),
            }),
            CliError::Core(e) => json!({"error": error_kind(e), "message": e.to_string()}),
        }
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Invariant(_) => "invariant",
        Error::Parse(_) => "parse",
        Error::Precondition(_) => "precondition",
        Error::HorizonTooShort { .. } => "horizon-too-short",
        Error::NotRealizable { .. } => "not-realizable",
        _ => "input",
    }
}

fn series_value(s: &PowerSeries) -> Value {
    json!({"order": s.order(), "coeffs": coeff_strings(s), "display": s.to_string()})
}

fn rationals(v: &[Rational]) -> Value {
    json!(v.iter().map(format_rational).collect::<Vec<_>>())
}

fn poly_value(p: &Poly) -> Value {
    json!({"coeffs": rationals(p.coeffs()), "display": p.to_string()})
}

fn lp_value(p: &LefschetzPolynomial, map: Option<&String>) -> Result<Value, CliError> {
    let mut v = json!({"polynomial": p});
    if let Some(m) = map {
        let f: FiniteSelfMap = input::read_json("map", m)?;
        let value = p.eval(&cycle_profile(&f, p.degree_bound().max(1)))?;
        v["value"] = json!(value.to_string());
    }
    Ok(v)
}

fn oracle() -> Result<Oracle, CliError> {
    let limit = match std::env::var("DOLD_ZETA_MAX_ENUM") {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("DOLD_ZETA_MAX_ENUM='{s}' is not a nonnegative integer")))?,
        Err(_) => DEFAULT_MAX_ENUM,
    };
    Ok(Oracle::new(limit))
}

/// The output document and whether it reports success.
fn execute(cli: &Cli) -> Result<(Value, bool), CliError> {
    let order = cli.order as usize;
    let out = match &cli.command {
        Command::Dold { map } => {
            let f: FiniteSelfMap = input::read_json("map", map)?;
            let d = cycle_profile(&f, order);
            let zeta = zeta_product_form(&d, order)?;
            json!({"map": f, "dold": d, "lefschetz": lefschetz_from_dold(&d), "zeta": series_value(&zeta)})
        }
        Command::Zeta { source } => {
            let r = source.resolve(order)?;
            let mut v = json!({"zeta": series_value(&r.zeta)});
            if let Some(d) = &r.dold {
                v["dold"] = json!(d);
                v["lefschetz"] = json!(lefschetz_from_dold(d));
            }
            v
        }
        Command::Symmetric { source, l } => {
            let r = source.resolve(order)?;
            json!({"l": l, "zeta": series_value(&r.zeta), "series": series_value(&rhs_symmetric_power(&r.zeta, *l)?)})
        }
        Command::BorsukUlam { source } => {
            let r = source.resolve(order)?;
            json!({"zeta": series_value(&r.zeta), "series": series_value(&rhs_borsuk_ulam(&r.zeta)?)})
        }
        Command::Tuples { source, l } => {
            let r = source.resolve(order)?;
            // Z = exp(-Σ L_k q^k / k), so L(f) is minus the linear coefficient.
            let lf = to_integer(&-r.zeta.coeff(1))
                .ok_or_else(|| CliError::Usage("L(f) is not an integer".into()))?;
            let l = l.normalized(order);
            json!({
                "lefschetz_number": lf.to_string(),
                "l": l,
                "egf": series_value(&rhs_bounded_tuples(&lf, l, order)?),
                "counts": rationals(&bounded_tuple_counts(&lf, l, order)?),
            })
        }
        Command::Gsymm { group, kset, coefficients, map } => {
            let g: PermutationGroup = input::read_json("group", group)?;
            let k = match kset {
                Some(s) => input::read_json::<GSetJson>("kset", s)?.into_gset(&g)?,
                None => GSet::natural(&g),
            };
            let p = gsymm_polynomial(&g, &k, &coefficients.resolve(&g)?)?;
            lp_value(&p, map.as_ref())?
        }
        Command::Partition { group, family, coefficients, seed, ledger, map } => {
            let g: PermutationGroup = input::read_json("group", group)?;
            let fam: PartitionFamily = input::read_json("family", family)?;
            let mut rec = match seed {
                Some(s) => PartitionRecursion::seeded(*s),
                None => PartitionRecursion::default(),
            };
            let p = rec.run(&g, &fam, &coefficients.resolve(&g)?)?;
            let mut v = lp_value(&p, map.as_ref())?;
            v["recursion_steps"] = json!(rec.ledger().len());
            if *ledger {
                v["ledger"] = rec
                    .ledger()
                    .iter()
                    .map(|e| {
                        json!({
                            "group_order": e.perms.len(),
                            "family_size": e.family.len(),
                            "lambda": e.lambda,
                            "extended": e.extended.to_string(),
                            "correction": e.correction.to_string(),
                            "result": e.result.to_string(),
                        })
                    })
                    .collect();
            }
            v
        }
        Command::OrderPoly { family, with } => {
            let a: PartitionFamily = input::read_json("family", family)?;
            let (counts, p) = match with {
                Some(w) => {
                    let b: PartitionFamily = input::read_json("with", w)?;
                    let (na, nb) = (a.block_counts(), b.block_counts());
                    (disjoint_union_counts(&na, &nb), disjoint_union_combine(&na, &nb))
                }
                None => {
                    let n = a.block_counts();
                    let p = block_counts_polynomial(&n);
                    (n, p)
                }
            };
            json!({"block_counts": counts, "polynomial": poly_value(&p)})
        }
        Command::Graded { graded } => {
            let a: GradedEndomorphism = input::read_json("graded", graded)?;
            let ch = a.characteristic_rational_function();
            let p = a.poincare_generating(order);
            json!({
                "graded": a,
                "characteristic": {"function": ch, "display": ch.to_string()},
                "lefschetz": rationals(&a.lefschetz_sequence(order)),
                "zeta": series_value(&a.zeta(order)?),
                "poincare": p.coeffs().iter().map(|c| c.display_with("T").to_string()).collect::<Vec<_>>(),
            })
        }
        Command::ConfigTrace { source, parity, epsilon } => {
            let r = source.resolve(order)?;
            let s = configuration_trace_series(&r.zeta, parity.odd)?;
            json!({
                "odd": parity.odd,
                "epsilon": epsilon,
                "series": series_value(&s),
                "traces": rationals(&configuration_traces(&s, *epsilon)?),
            })
        }
        Command::Verify { plan, k } => {
            let plan: VerificationPlan = input::read_json("plan", plan)?;
            let report = plan.run(*k, &oracle()?)?;
            let pass = report.pass;
            return Ok((json!(report), pass));
        }
        Command::Realize { polynomial, k } => {
            let p: MultiPoly = input::read_json("polynomial", polynomial)?;
            let (r, e) = realize_polynomial(&p, *k)?;
            json!({"r": r.to_string(), "expression": e, "display": e.to_string()})
        }
        Command::Selftest { seed } => {
            let (pass, v) = selftest::run(*seed, order, &oracle()?)?;
            return Ok((v, pass));
        }
    };
    Ok((out, true))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match execute(&cli) {
        Ok((v, pass)) => {
            println!("{}", render::render(&v, cli.format));
            ExitCode::from(if pass { 0 } else { 1 })
        }
        Err(e) => {
            let v = e.to_value();
            match cli.format {
                Format::Json => eprintln!("{}", serde_json::to_string(&v).expect("values serialize")),
                Format::Text => eprintln!("error: {}", v["message"].as_str().unwrap_or_default()),
            }
            ExitCode::from(e.exit_code())
        }
    }
}
