use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Serialize, Serializer};

use crate::dynamics::{divisors, mobius, DoldProfile};
use crate::error::{Error, Result};
use crate::series::rational::{format_rational, int, to_integer};
use crate::series::{MultiPoly, Rational};

/// A numerical polynomial `L(t_1, .., t_k)`, `t_i` of weight `i`, giving the
/// reduced Lefschetz number of an induced map in terms of the reduced Dold
/// indices of the input map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LefschetzPolynomial {
    degree_bound: usize,
    poly: MultiPoly,
}

impl LefschetzPolynomial {
    /// Checks the weighted degree bound and integrality on the integer lattice.
    pub fn new(poly: MultiPoly, degree_bound: usize) -> Result<Self> {
        let w = poly.weighted_degree();
        if w > degree_bound {
            return Err(Error::Invariant(format!(
                "weighted degree {w} exceeds the bound {degree_bound} for {poly}"
            )));
        }
        if !poly.is_numerical() {
            let ranges: Vec<(i64, i64)> = poly.degrees().iter().map(|&d| (0, d as i64)).collect();
            let at = poly.first_non_integer_on(&ranges).unwrap_or_default();
            return Err(Error::Invariant(format!("{poly} is not integer valued at {at:?}")));
        }
        Ok(LefschetzPolynomial { degree_bound, poly })
    }

    /// `t_1`: the identity functor.
    pub fn identity() -> Self {
        LefschetzPolynomial { degree_bound: 1, poly: MultiPoly::var(1, 0) }
    }

    /// A constant functor with reduced Euler characteristic `c`.
    pub fn constant(c: i64) -> Self {
        LefschetzPolynomial { degree_bound: 0, poly: MultiPoly::constant(0, int(c)) }
    }

    pub fn poly(&self) -> &MultiPoly {
        &self.poly
    }

    pub fn into_poly(self) -> MultiPoly {
        self.poly
    }

    pub fn degree_bound(&self) -> usize {
        self.degree_bound
    }

    pub fn weighted_degree(&self) -> usize {
        self.poly.weighted_degree()
    }

    /// Value at reduced Dold indices `t_m = profile[m]`.
    pub fn eval(&self, profile: &DoldProfile) -> Result<BigInt> {
        let need = self.poly.used_vars();
        if profile.horizon() < need {
            return Err(Error::HorizonTooShort { needed: need, have: profile.horizon() });
        }
        self.eval_slice(&profile.values()[..need])
    }

    pub fn eval_slice(&self, t: &[BigInt]) -> Result<BigInt> {
        let v = self.poly.eval_int(t)?;
        to_integer(&v).ok_or_else(|| {
            Error::Invariant(format!("{} evaluates to the non-integer {}", self.poly, format_rational(&v)))
        })
    }

    /// Wedge of functors: the polynomials add.
    pub fn wedge(&self, other: &Self) -> Self {
        LefschetzPolynomial {
            degree_bound: self.degree_bound.max(other.degree_bound),
            poly: &self.poly + &other.poly,
        }
    }

    /// Smash product of functors: the polynomials multiply.
    pub fn smash(&self, other: &Self) -> Self {
        LefschetzPolynomial {
            degree_bound: self.degree_bound + other.degree_bound,
            poly: &self.poly * &other.poly,
        }
    }

    /// `m`-th Dold index of the induced map as a polynomial in `t_1..t_{mk}`.
    pub fn dold_polynomial(&self, m: usize) -> MultiPoly {
        dold_polynomial_of_functor(self, m)
    }
}

/// The reduced Dold indices of `f^d` as polynomials in those of `f`:
/// entry `i-1` is `Σ g t_{ig}` over `g | d` with `gcd(i, d/g) = 1`, for
/// `i = 1..=k`, in `k·d` variables.
pub fn iterate_transport(d: usize, k: usize) -> Vec<MultiPoly> {
    let nvars = k * d;
    (1..=k)
        .map(|i| {
            divisors(d)
                .into_iter()
                .filter(|g| (d / g).gcd(&i) == 1)
                .fold(MultiPoly::zero(nvars), |acc, g| &acc + &MultiPoly::var(nvars, i * g - 1).scale(&int(g as i64)))
        })
        .collect()
}

/// `D_m^Φ(t) = (1/m) Σ_{d | m} μ(m/d) L_Φ(τ_d(t))`.
pub fn dold_polynomial_of_functor(l: &LefschetzPolynomial, m: usize) -> MultiPoly {
    assert!(m >= 1);
    let k = l.poly.nvars().max(l.poly.used_vars());
    let nvars = m * k;
    let mut acc = MultiPoly::zero(nvars);
    for d in divisors(m) {
        let mu = mobius(m / d);
        if mu == 0 {
            continue;
        }
        let subs: Vec<MultiPoly> = iterate_transport(d, k).into_iter().map(|p| p.with_nvars(nvars)).collect();
        let v = if k == 0 { l.poly.with_nvars(nvars) } else { l.poly.substitute(&subs) };
        acc = &acc + &v.scale(&int(mu));
    }
    acc.scale(&Rational::new(1.into(), (m as i64).into()))
}

/// `L_{Ψ∘Φ}(t) = L_Ψ(D_1^Φ(t), .., D_l^Φ(t))`.
///
/// With `Φ` of degree `k` and `Ψ` of degree `l` the substitution has
/// weighted degree at most `k·l`; that bound is checked and recorded.
pub fn compose_lefschetz(outer: &LefschetzPolynomial, inner: &LefschetzPolynomial) -> Result<LefschetzPolynomial> {
    let (k, l) = (inner.degree_bound, outer.degree_bound);
    let used = outer.poly.used_vars();
    let nvars = (used * k).max(1);
    let poly = if used == 0 {
        outer.poly.with_nvars(0)
    } else {
        let subs: Vec<MultiPoly> = (1..=used).map(|i| inner.dold_polynomial(i).with_nvars(nvars)).collect();
        outer.poly.substitute(&subs)
    };
    let bound = k * l;
    let w = poly.weighted_degree();
    if w > bound {
        return Err(Error::Invariant(format!("composite has weighted degree {w} above {k}·{l}")));
    }
    LefschetzPolynomial::new(trim(poly), bound)
}

/// Drops trailing variables that do not occur.
pub(crate) fn trim(p: MultiPoly) -> MultiPoly {
    let u = p.used_vars();
    if u < p.nvars() {
        p.with_nvars(u)
    } else {
        p
    }
}

impl fmt::Display for LefschetzPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.poly.fmt(f)
    }
}

#[derive(Serialize)]
struct LpJson<'a> {
    degree_bound: usize,
    weighted_degree: usize,
    display: String,
    polynomial: &'a MultiPoly,
}

impl Serialize for LefschetzPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        LpJson {
            degree_bound: self.degree_bound,
            weighted_degree: self.weighted_degree(),
            display: self.poly.to_string(),
            polynomial: &self.poly,
        }
        .serialize(s)
    }
}

/// Value of a polynomial at `t`, missing trailing entries read as 0.
pub fn eval_at(p: &MultiPoly, t: &[i64]) -> Rational {
    let mut point = t.to_vec();
    point.resize(p.used_vars().max(t.len()), 0);
    p.eval_i64(&point).expect("point covers every variable")
}
