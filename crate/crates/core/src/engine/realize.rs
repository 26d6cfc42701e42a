use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::lefschetz::{compose_lefschetz, trim, LefschetzPolynomial};
use super::symbolic::symmetric_power_polynomial;
use crate::error::{Error, Result};
use crate::oracle::Bound;
use crate::series::rational::big;
use crate::series::{MultiPoly, Rational};

/// Largest wedge multiplicity accepted when building an expression.
pub const MAX_WEDGE_COPIES: u64 = 10_000;

/// A functor built from the identity, constant spheres and bounded
/// symmetric powers by wedge, smash and composition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FunctorExpression {
    Identity,
    /// The constant functor with value a sphere of the given dimension parity.
    Sphere { odd: bool },
    BoundedSymmetricPower { k: usize, l: usize },
    Wedge(Vec<FunctorExpression>),
    Smash(Vec<FunctorExpression>),
    /// `outer ∘ inner`.
    Compose(Box<FunctorExpression>, Box<FunctorExpression>),
}

impl FunctorExpression {
    /// The Lefschetz polynomial by the wedge, smash and composition rules.
    pub fn evaluate(&self) -> Result<LefschetzPolynomial> {
        Ok(match self {
            FunctorExpression::Identity => LefschetzPolynomial::identity(),
            FunctorExpression::Sphere { odd } => LefschetzPolynomial::constant(if *odd { -1 } else { 1 }),
            FunctorExpression::BoundedSymmetricPower { k, l } => {
                LefschetzPolynomial::new(trim(symmetric_power_polynomial(*k, Bound::Finite(*l))), *k)?
            }
            FunctorExpression::Wedge(parts) => {
                let mut acc = LefschetzPolynomial::constant(0);
                for p in parts {
                    acc = acc.wedge(&p.evaluate()?);
                }
                acc
            }
            FunctorExpression::Smash(parts) => {
                let mut acc = LefschetzPolynomial::constant(1);
                for p in parts {
                    acc = acc.smash(&p.evaluate()?);
                }
                acc
            }
            FunctorExpression::Compose(outer, inner) => compose_lefschetz(&outer.evaluate()?, &inner.evaluate()?)?,
        })
    }

    fn negated(self) -> Self {
        FunctorExpression::Smash(vec![FunctorExpression::Sphere { odd: true }, self])
    }
}

impl fmt::Display for FunctorExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn join(f: &mut fmt::Formatter<'_>, parts: &[FunctorExpression], sep: &str, empty: &str) -> fmt::Result {
            if parts.is_empty() {
                return f.write_str(empty);
            }
            f.write_str("(")?;
            for (i, p) in parts.iter().enumerate() {
                if i > 0 {
                    f.write_str(sep)?;
                }
                write!(f, "{p}")?;
            }
            f.write_str(")")
        }
        match self {
            FunctorExpression::Identity => f.write_str("X"),
            FunctorExpression::Sphere { odd: true } => f.write_str("S^odd"),
            FunctorExpression::Sphere { odd: false } => f.write_str("S^even"),
            FunctorExpression::BoundedSymmetricPower { k, l } => write!(f, "S^{k}_{l}(X)"),
            FunctorExpression::Wedge(p) => join(f, p, " v ", "*"),
            FunctorExpression::Smash(p) => join(f, p, " ^ ", "S^0"),
            FunctorExpression::Compose(a, b) => write!(f, "{a}[X := {b}]"),
        }
    }
}

/// `B_j = S^j_1`, whose polynomial `[q^j] Π (1 + q^m)^{t_m}` has `t_j`
/// as its lexicographically leading monomial.
fn basis_polynomial(j: usize, nvars: usize) -> MultiPoly {
    symmetric_power_polynomial(j, Bound::Finite(1)).with_nvars(nvars)
}

fn basis_expression(j: usize) -> FunctorExpression {
    if j == 1 {
        FunctorExpression::Identity
    } else {
        FunctorExpression::BoundedSymmetricPower { k: j, l: 1 }
    }
}

/// Lexicographic key with the highest variable most significant.
fn lex_key(e: &[u32]) -> Vec<u32> {
    e.iter().rev().copied().collect()
}

/// Writes `p = Σ c_e L(Π_j B_j^{e_j})` and returns the `(e, c)` pairs in
/// elimination order.
pub fn basis_expansion(p: &MultiPoly, k: usize) -> Result<Vec<(Vec<u32>, Rational)>> {
    let w = p.weighted_degree();
    if !p.is_zero() && w > k {
        return Err(Error::Precondition(format!("{p} has weighted degree {w} above {k}")));
    }
    let nvars = k.max(p.used_vars());
    let mut rest = p.with_nvars(nvars);
    let mut out = Vec::new();
    while let Some((e, c)) = rest.terms().max_by_key(|(e, _)| lex_key(e)).map(|(e, c)| (e.to_vec(), c.clone())) {
        let prod = e
            .iter()
            .enumerate()
            .fold(MultiPoly::one(nvars), |acc, (i, &x)| &acc * &basis_polynomial(i + 1, nvars).pow(x));
        rest = &rest - &prod.scale(&c);
        out.push((e, c));
    }
    Ok(out)
}

/// A positive integer `r` and a functor `Φ` with `L_Φ = r·p`. `r` is the
/// least common denominator of the expansion of `p` in the `B_j` basis.
pub fn realize_polynomial(p: &MultiPoly, k: usize) -> Result<(BigInt, FunctorExpression)> {
    let terms = basis_expansion(p, k)?;
    let r = terms.iter().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
    let mut parts = Vec::new();
    for (e, c) in &terms {
        let a = (c * big(r.clone())).to_integer();
        let copies = a.abs().to_u64().filter(|&n| n <= MAX_WEDGE_COPIES).ok_or_else(|| Error::TooLarge {
            what: "wedge multiplicity".into(),
            size: a.abs().to_u128().unwrap_or(u128::MAX),
            limit: MAX_WEDGE_COPIES as u128,
        })?;
        let factors: Vec<FunctorExpression> = e
            .iter()
            .enumerate()
            .flat_map(|(i, &x)| std::iter::repeat_with(move || basis_expression(i + 1)).take(x as usize))
            .collect();
        let mut term = if factors.len() == 1 {
            factors.into_iter().next().unwrap()
        } else {
            FunctorExpression::Smash(factors)
        };
        if a.is_negative() {
            term = term.negated();
        }
        parts.extend(std::iter::repeat(term).take(copies as usize));
    }
    let expr = match parts.len() {
        0 => FunctorExpression::Wedge(vec![FunctorExpression::Sphere { odd: false }, FunctorExpression::Sphere { odd: true }]),
        1 => parts.pop().unwrap(),
        _ => FunctorExpression::Wedge(parts),
    };
    let got = trim(expr.evaluate()?.into_poly());
    let want = trim(p.scale(&big(r.clone())));
    if got != want || (!p.is_zero() && r.is_zero()) {
        return Err(Error::Invariant(format!("realization evaluates to {got}, expected {want}")));
    }
    Ok((r, expr))
}
