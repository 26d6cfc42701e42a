use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::closed_forms::{
    bounded_tuple_counts, configuration_trace_series, configuration_traces, rhs_borsuk_ulam, rhs_symmetric_power,
};
use super::coeffic::{coefficient_identities_check, coefficient_polynomial};
use super::partition::{general_lefschetz_polynomial, gsymm_polynomial, CoefficientTraces};
use crate::dynamics::{cycle_profile, dold_from_lefschetz, zeta_product_form, DoldProfile, FiniteSelfMap, LefschetzSequence};
use crate::error::{Error, Result};
use crate::graded::GradedEndomorphism;
use crate::oracle::{smash_power, Bound, Oracle};
use crate::partition::{GSet, GSetJson, PartitionFamily, PermutationGroup};
use crate::series::rational::{big, format_rational, serde_bigint_vec, serde_rational, serde_rational_vec, to_integer};
use crate::series::{PowerSeries, Rational};

/// First index where two coefficient lists differ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub k: usize,
    #[serde(with = "serde_rational")]
    pub lhs: Rational,
    #[serde(with = "serde_rational")]
    pub rhs: Rational,
}

/// Two coefficient lists indexed `start, start + 1, ..`, compared exactly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeriesCheck {
    pub label: String,
    pub start: usize,
    #[serde(with = "serde_rational_vec")]
    pub lhs: Vec<Rational>,
    #[serde(with = "serde_rational_vec")]
    pub rhs: Vec<Rational>,
    pub pass: bool,
    pub first_mismatch: Option<Mismatch>,
}

impl SeriesCheck {
    pub fn new(label: impl Into<String>, start: usize, lhs: Vec<Rational>, rhs: Vec<Rational>) -> Self {
        let first_mismatch = if lhs.len() != rhs.len() {
            let k = lhs.len().min(rhs.len());
            Some(Mismatch {
                k: start + k,
                lhs: lhs.get(k).cloned().unwrap_or_else(Rational::zero),
                rhs: rhs.get(k).cloned().unwrap_or_else(Rational::zero),
            })
        } else {
            lhs.iter().zip(&rhs).position(|(a, b)| a != b).map(|i| Mismatch {
                k: start + i,
                lhs: lhs[i].clone(),
                rhs: rhs[i].clone(),
            })
        };
        SeriesCheck { label: label.into(), start, lhs, rhs, pass: first_mismatch.is_none(), first_mismatch }
    }

    pub fn summary(&self) -> String {
        match &self.first_mismatch {
            None => format!("{}: PASS ({} values from k={})", self.label, self.lhs.len(), self.start),
            Some(m) => format!(
                "{}: FAIL at k={} (lhs {} vs rhs {})",
                self.label,
                m.k,
                format_rational(&m.lhs),
                format_rational(&m.rhs)
            ),
        }
    }
}

/// Outcome of a verification plan.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdentityReport {
    pub identity: String,
    pub pass: bool,
    pub checks: Vec<SeriesCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<String, f64>>,
}

impl IdentityReport {
    pub fn new(identity: impl Into<String>, checks: Vec<SeriesCheck>) -> Self {
        let pass = checks.iter().all(|c| c.pass);
        IdentityReport { identity: identity.into(), pass, checks, timings_ms: None }
    }

    pub fn first_mismatch(&self) -> Option<(&str, &Mismatch)> {
        self.checks.iter().find_map(|c| c.first_mismatch.as_ref().map(|m| (c.label.as_str(), m)))
    }
}

/// A brute-force count, one value per `k`.
#[derive(Clone, Debug)]
pub enum CountingPlan {
    /// Fixed multisets with multiplicities at most `l`.
    Multisets { map: FiniteSelfMap, l: Bound },
    /// Fixed nonempty subsets of size at most `k`.
    Subsets { map: FiniteSelfMap },
    /// Fixed tuples with no value repeated more than `l` times.
    Tuples { map: FiniteSelfMap, l: Bound },
}

impl CountingPlan {
    pub fn count(&self, k: usize, oracle: &Oracle) -> Result<BigInt> {
        match self {
            CountingPlan::Multisets { map, l } => oracle.fixed_bounded_multisets(map, k, *l),
            CountingPlan::Subsets { map } => oracle.fixed_invariant_subsets(map, k),
            CountingPlan::Tuples { map, l } => oracle.fixed_bounded_tuples(map, k, *l),
        }
    }

    fn label(&self) -> String {
        match self {
            CountingPlan::Multisets { l, .. } => format!("fixed multisets, l={l}"),
            CountingPlan::Subsets { .. } => "fixed nonempty subsets".into(),
            CountingPlan::Tuples { l, .. } => format!("fixed tuples, l={l}"),
        }
    }
}

/// Compares oracle counts with `rhs[k]` for `k = 0..=k_max`. The largest
/// enumeration runs first so an infeasible size is rejected before any
/// other work.
pub fn verify_identity(plan: &CountingPlan, rhs: &PowerSeries, k_max: usize, oracle: &Oracle) -> Result<SeriesCheck> {
    if rhs.order() < k_max {
        return Err(Error::HorizonTooShort { needed: k_max, have: rhs.order() });
    }
    let top = plan.count(k_max, oracle)?;
    let mut lhs: Vec<Rational> = Vec::with_capacity(k_max + 1);
    for k in 0..k_max {
        lhs.push(big(plan.count(k, oracle)?));
    }
    lhs.push(big(top));
    Ok(SeriesCheck::new(plan.label(), 0, lhs, rhs.coeffs()[..=k_max].to_vec()))
}

/// Integer data describing a self-map: the map itself, its Lefschetz
/// numbers, its Dold indices, or a graded endomorphism.
#[derive(Clone, Debug, Default, Deserialize)]
pub struct DynamicsSource {
    #[serde(default)]
    pub map: Option<FiniteSelfMap>,
    #[serde(default, with = "opt_bigints")]
    pub lefschetz: Option<Vec<BigInt>>,
    #[serde(default, with = "opt_bigints")]
    pub dold: Option<Vec<BigInt>>,
    #[serde(default)]
    pub graded: Option<GradedEndomorphism>,
}

mod opt_bigints {
    use super::*;
    use serde::Deserializer;

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<Vec<BigInt>>, D::Error> {
        #[derive(Deserialize)]
        struct W(#[serde(with = "serde_bigint_vec")] Vec<BigInt>);
        Ok(Option::<W>::deserialize(d)?.map(|w| w.0))
    }
}

impl DynamicsSource {
    /// Dold indices `D_1..D_horizon`.
    pub fn dold_profile(&self, horizon: usize) -> Result<DoldProfile> {
        let given = [self.map.is_some(), self.lefschetz.is_some(), self.dold.is_some(), self.graded.is_some()];
        if given.iter().filter(|&&b| b).count() != 1 {
            return Err(Error::Parse(
                "give exactly one of \"map\", \"lefschetz\", \"dold\" or \"graded\"".into(),
            ));
        }
        if let Some(f) = &self.map {
            return Ok(cycle_profile(f, horizon));
        }
        if let Some(d) = &self.dold {
            return DoldProfile::new(d.clone()).truncate(horizon);
        }
        let l = if let Some(l) = &self.lefschetz {
            LefschetzSequence::new(l.clone())
        } else {
            let a = self.graded.as_ref().unwrap();
            let vals = a
                .lefschetz_sequence(horizon)
                .iter()
                .enumerate()
                .map(|(k, x)| {
                    to_integer(x).ok_or_else(|| {
                        Error::Precondition(format!("L(f^{}) = {} is not an integer", k + 1, format_rational(x)))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            LefschetzSequence::new(vals)
        };
        dold_from_lefschetz(&l.truncate(horizon)?)
    }
}

/// A JSON verification plan, tagged by `"identity"`.
#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "identity", rename_all = "kebab-case", deny_unknown_fields)]
pub enum VerificationPlan {
    Md {
        map: FiniteSelfMap,
        #[serde(default)]
        k_max: Option<usize>,
    },
    Main {
        map: FiniteSelfMap,
        l: Bound,
        #[serde(default)]
        k_max: Option<usize>,
    },
    Prod {
        map: FiniteSelfMap,
        #[serde(default)]
        k_max: Option<usize>,
    },
    Sub {
        map: FiniteSelfMap,
        l: Bound,
        #[serde(default)]
        k_max: Option<usize>,
    },
    Gsymm {
        map: FiniteSelfMap,
        group: PermutationGroup,
        kset: GSetJson,
        #[serde(default)]
        coefficients: Option<GSetJson>,
    },
    Partition {
        map: FiniteSelfMap,
        group: PermutationGroup,
        family: PartitionFamily,
        #[serde(default)]
        coefficients: Option<GSetJson>,
    },
    Coeffic {
        #[serde(flatten)]
        source: DynamicsSource,
        n: i64,
        #[serde(default)]
        l: Option<Bound>,
        #[serde(default)]
        k_max: Option<usize>,
    },
    ConfigTrace {
        #[serde(flatten)]
        source: DynamicsSource,
        odd: bool,
        #[serde(default = "plus_one")]
        epsilon: i64,
        #[serde(default)]
        k_max: Option<usize>,
        #[serde(default, with = "opt_rationals")]
        expected: Option<Vec<Rational>>,
    },
}

fn plus_one() -> i64 {
    1
}

mod opt_rationals {
    use super::*;
    use serde::Deserializer;

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<Vec<Rational>>, D::Error> {
        #[derive(Deserialize)]
        struct W(#[serde(with = "serde_rational_vec")] Vec<Rational>);
        Ok(Option::<W>::deserialize(d)?.map(|w| w.0))
    }
}

/// Largest `k` accepted by the coefficient plans.
pub const MAX_COEFFICIENT_ORDER: usize = 6;


impl VerificationPlan {
    pub fn name(&self) -> &'static str {
        match self {
            VerificationPlan::Md { .. } => "md",
            VerificationPlan::Main { .. } => "main",
            VerificationPlan::Prod { .. } => "prod",
            VerificationPlan::Sub { .. } => "sub",
            VerificationPlan::Gsymm { .. } => "gsymm",
            VerificationPlan::Partition { .. } => "partition",
            VerificationPlan::Coeffic { .. } => "coeffic",
            VerificationPlan::ConfigTrace { .. } => "config-trace",
        }
    }

    /// Runs the plan; `default_k` is used where the plan has no `k_max`.
    pub fn run(&self, default_k: usize, oracle: &Oracle) -> Result<IdentityReport> {
        let zeta_of = |f: &FiniteSelfMap, k: usize| zeta_product_form(&cycle_profile(f, k), k);
        let checks = match self {
            VerificationPlan::Md { map, k_max } => {
                let k = k_max.unwrap_or(default_k);
                let rhs = rhs_symmetric_power(&zeta_of(map, k)?, Bound::Infinite)?;
                vec![verify_identity(&CountingPlan::Multisets { map: map.clone(), l: Bound::Infinite }, &rhs, k, oracle)?]
            }
            VerificationPlan::Main { map, l, k_max } => {
                let k = k_max.unwrap_or(default_k);
                let rhs = rhs_symmetric_power(&zeta_of(map, k)?, *l)?;
                vec![verify_identity(&CountingPlan::Multisets { map: map.clone(), l: *l }, &rhs, k, oracle)?]
            }
            VerificationPlan::Prod { map, k_max } => {
                let k = k_max.unwrap_or(default_k);
                let rhs = rhs_borsuk_ulam(&zeta_of(map, k)?)?;
                vec![verify_identity(&CountingPlan::Subsets { map: map.clone() }, &rhs, k, oracle)?]
            }
            VerificationPlan::Sub { map, l, k_max } => {
                let k = k_max.unwrap_or(default_k);
                let lf = BigInt::from(map.fixed_point_count());
                let counts = bounded_tuple_counts(&lf, l.normalized(k), k)?;
                let rhs = PowerSeries::from_coeffs(counts);
                vec![verify_identity(&CountingPlan::Tuples { map: map.clone(), l: *l }, &rhs, k, oracle)?]
            }
            VerificationPlan::Gsymm { map, group, kset, coefficients } => {
                let kset = kset.clone().into_gset(group)?;
                let y = coefficients
                    .as_ref()
                    .map(|y| y.clone().into_gset(group))
                    .transpose()?;
                vec![gsymm_check(map, group, &kset, y.as_ref(), oracle)?]
            }
            VerificationPlan::Partition { map, group, family, coefficients } => {
                let y = coefficients
                    .as_ref()
                    .map(|y| y.clone().into_gset(group))
                    .transpose()?;
                vec![partition_check(map, group, family, y.as_ref(), oracle)?]
            }
            VerificationPlan::Coeffic { source, n, l, k_max } => {
                let k = k_max.unwrap_or(default_k.min(4));
                let d = source.dold_profile(k)?;
                let mut checks = coefficient_identities_check(&d, *n, *l, k)?.checks;
                if let (Some(f), true) = (&source.map, (0..=3).contains(n)) {
                    checks.extend(coefficient_oracle_checks(f, *n as usize, *l, k, oracle)?);
                }
                checks
            }
            VerificationPlan::ConfigTrace { source, odd, epsilon, k_max, expected } => {
                let k = k_max.unwrap_or(default_k.min(MAX_COEFFICIENT_ORDER));
                let d = source.dold_profile(k)?;
                let series = configuration_trace_series(&zeta_product_form(&d, k)?, *odd)?;
                let sign = if *odd { -1 } else { 1 };
                let mut lhs = Vec::with_capacity(k + 1);
                for j in 0..=k {
                    let p = coefficient_polynomial(j, &Rational::from_integer(sign.into()), Bound::Finite(1))?;
                    lhs.push(big(p.eval(&d)?));
                }
                let mut checks = vec![SeriesCheck::new(
                    "configuration traces: polynomial vs closed form",
                    0,
                    lhs,
                    series.coeffs().to_vec(),
                )];
                if let Some(exp) = expected {
                    let got = configuration_traces(&series, *epsilon)?;
                    let n = exp.len().min(got.len());
                    checks.push(SeriesCheck::new("configuration traces: expected values", 0, got[..n].to_vec(), exp[..n].to_vec()));
                }
                checks
            }
        };
        Ok(IdentityReport::new(self.name(), checks))
    }
}

/// The symmetric-group polynomial with `n^{c(σ)}` traces against orbit
/// counts with coefficients in the smash power of an `n`-point pointed set.
pub fn coefficient_oracle_checks(
    f: &FiniteSelfMap,
    n: usize,
    l: Option<Bound>,
    k_max: usize,
    oracle: &Oracle,
) -> Result<Vec<SeriesCheck>> {
    let mut bounds = vec![Bound::Infinite, Bound::Finite(1)];
    bounds.extend(l);
    let d = cycle_profile(f, k_max);
    let mut out = Vec::new();
    for b in bounds {
        let (mut lhs, mut rhs) = (Vec::new(), Vec::new());
        for k in 1..=k_max {
            let g = PermutationGroup::symmetric(k);
            let family = family_for(k, b)?;
            let y = smash_power(&g, n)?;
            lhs.push(big(oracle.fixed_partition_orbits(f, &g, &family, Some(&y))?));
            rhs.push(big(coefficient_polynomial(k, &Rational::from_integer((n as i64).into()), b)?.eval(&d)?));
        }
        out.push(SeriesCheck::new(format!("oracle with coefficients, n={n}, l={b}"), 1, lhs, rhs));
    }
    Ok(out)
}

pub(crate) fn family_for(k: usize, l: Bound) -> Result<PartitionFamily> {
    let l = l.normalized(k);
    if l >= k {
        PartitionFamily::all(k)
    } else {
        PartitionFamily::max_block(k, l)
    }
}

/// The orbit-sum polynomial at the cycle profile of `f` against the
/// brute-force count.
pub fn gsymm_check(
    f: &FiniteSelfMap,
    group: &PermutationGroup,
    kset: &GSet,
    coefficients: Option<&GSet>,
    oracle: &Oracle,
) -> Result<SeriesCheck> {
    let traces = coefficients.map_or(CoefficientTraces::Trivial, |y| CoefficientTraces::Space(y.clone()));
    let p = gsymm_polynomial(group, kset, &traces)?;
    let value = p.eval(&cycle_profile(f, kset.size().max(1)))?;
    let count = oracle.induced_space(&f.pointed(), kset.action(), None, coefficients)?.map.reduced_fixed_count();
    Ok(SeriesCheck::new(
        format!("orbit-sum polynomial, |G|={}, |K|={}", group.order(), kset.size()),
        kset.size(),
        vec![big(BigInt::from(count))],
        vec![big(value)],
    ))
}

/// The recursive partition polynomial at the cycle profile of `f` against
/// the brute-force count.
pub fn partition_check(
    f: &FiniteSelfMap,
    group: &PermutationGroup,
    family: &PartitionFamily,
    coefficients: Option<&GSet>,
    oracle: &Oracle,
) -> Result<SeriesCheck> {
    let traces = coefficients.map_or(CoefficientTraces::Trivial, |y| CoefficientTraces::Space(y.clone()));
    let p = general_lefschetz_polynomial(group, family, &traces)?;
    let value = p.eval(&cycle_profile(f, family.ground_size().max(1)))?;
    let count = oracle.fixed_partition_orbits(f, group, family, coefficients)?;
    Ok(SeriesCheck::new(
        format!("partition polynomial, |G|={}, {} members", group.order(), family.len()),
        family.ground_size(),
        vec![big(count)],
        vec![big(value)],
    ))
}
