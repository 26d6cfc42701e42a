//! Sparse multivariate polynomials in `t_1, ..., t_k` with rational
//! coefficients, where `t_i` carries weight `i`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::rational::{big, format_rational, int, serde_rational, write_term, Rational};
use crate::error::{Error, Result};

/// Exponent vectors have fixed width `nvars`; index `i` holds the exponent
/// of `t_{i+1}`. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    /// The variable `t_{index+1}`.
    pub fn var(nvars: usize, index: usize) -> Self {
        assert!(index < nvars, "variable t_{} outside {nvars} variables", index + 1);
        let mut e = vec![0; nvars];
        e[index] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(e, Rational::one());
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, Rational)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector has the wrong width");
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Rational)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &[u32]) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    /// Constant value if the polynomial has no variables in use.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Re-embeds into `n` variables. Shrinking is allowed only over
    /// variables that do not occur.
    pub fn with_nvars(&self, n: usize) -> Self {
        assert!(n >= self.used_vars(), "cannot drop variables that occur");
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut e = e.clone();
                e.resize(n, 0);
                (e, c.clone())
            })
            .collect();
        MultiPoly { nvars: n, terms }
    }

    /// One more than the largest index of a variable that occurs.
    pub fn used_vars(&self) -> usize {
        self.terms
            .keys()
            .filter_map(|e| e.iter().rposition(|&x| x > 0))
            .max()
            .map_or(0, |i| i + 1)
    }

    /// Largest weighted degree of a term (`t_i` has weight `i`); 0 for the
    /// zero polynomial.
    pub fn weighted_degree(&self) -> usize {
        self.terms.keys().map(|e| weight(e)).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> usize {
        self.terms.keys().map(|e| e.iter().map(|&x| x as usize).sum()).max().unwrap_or(0)
    }

    /// Largest exponent of each variable.
    pub fn degrees(&self) -> Vec<u32> {
        let mut d = vec![0; self.nvars];
        for e in self.terms.keys() {
            for (a, &b) in d.iter_mut().zip(e) {
                *a = (*a).max(b);
            }
        }
        d
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        let mut sq = self.clone();
        let mut k = e;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &sq;
            }
            k >>= 1;
            if k > 0 {
                sq = &sq * &sq;
            }
        }
        acc
    }

    fn check_point(&self, len: usize) -> Result<()> {
        let used = self.used_vars();
        if len < used {
            return Err(Error::Precondition(format!(
                "evaluation point has {len} entries but t_{used} occurs"
            )));
        }
        Ok(())
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        self.check_point(point.len())?;
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut m = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    m *= num_traits::pow(x.clone(), k as usize);
                }
            }
            acc += m;
        }
        Ok(acc)
    }

    pub fn eval_int(&self, point: &[BigInt]) -> Result<Rational> {
        self.check_point(point.len())?;
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut m = BigInt::one();
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    m *= num_traits::pow(x.clone(), k as usize);
                }
            }
            acc += c * big(m);
        }
        Ok(acc)
    }

    pub fn eval_i64(&self, point: &[i64]) -> Result<Rational> {
        let p: Vec<BigInt> = point.iter().map(|&x| BigInt::from(x)).collect();
        self.eval_int(&p)
    }

    /// Replaces `t_{i+1}` by `subs[i]`. All substitutes must share one
    /// variable count, which becomes the result's.
    pub fn substitute(&self, subs: &[MultiPoly]) -> Self {
        assert!(subs.len() >= self.used_vars(), "missing substitutes");
        let target = subs.first().map_or(0, |s| s.nvars);
        assert!(subs.iter().all(|s| s.nvars == target), "substitutes disagree on width");
        let mut powers: Vec<Vec<MultiPoly>> = subs.iter().map(|s| vec![Self::one(target), s.clone()]).collect();
        let mut acc = Self::zero(target);
        for (e, c) in &self.terms {
            let mut m = Self::constant(target, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                while powers[i].len() <= k as usize {
                    let next = &powers[i][powers[i].len() - 1] * &subs[i];
                    powers[i].push(next);
                }
                m = &m * &powers[i][k as usize];
            }
            acc = &acc + &m;
        }
        acc
    }

    /// Whether the polynomial takes integer values at every integer point.
    ///
    /// A polynomial of degree at most `d_i` in each variable is integer
    /// valued on all of `Z^k` iff it is integer valued on the box
    /// `Π {0..=d_i}` (expand in products of binomial coefficients), so this
    /// test is exact.
    pub fn is_numerical(&self) -> bool {
        let d = self.degrees();
        let ranges: Vec<(i64, i64)> = d.iter().map(|&x| (0, x as i64)).collect();
        self.first_non_integer_on(&ranges).is_none()
    }

    /// First point of the box `Π [lo_i, hi_i]` at which the value is not an
    /// integer.
    pub fn first_non_integer_on(&self, ranges: &[(i64, i64)]) -> Option<Vec<i64>> {
        assert_eq!(ranges.len(), self.nvars);
        if self.terms.values().all(|c| c.is_integer()) {
            return None;
        }
        // Clear denominators once and test divisibility at each point.
        let den = self
            .terms
            .values()
            .fold(BigInt::one(), |acc, c| num_integer::Integer::lcm(&acc, c.denom()));
        let scaled: Vec<(Vec<u32>, BigInt)> = self
            .terms
            .iter()
            .map(|(e, c)| (e.clone(), (c * big(den.clone())).to_integer()))
            .collect();
        let mut point: Vec<i64> = ranges.iter().map(|r| r.0).collect();
        if ranges.iter().any(|r| r.0 > r.1) {
            return None;
        }
        loop {
            let mut v = BigInt::zero();
            for (e, c) in &scaled {
                let mut m = c.clone();
                for (&x, &k) in point.iter().zip(e) {
                    if k > 0 {
                        m *= num_traits::pow(BigInt::from(x), k as usize);
                    }
                }
                v += m;
            }
            if !(v % &den).is_zero() {
                return Some(point);
            }
            let mut i = 0;
            loop {
                if i == point.len() {
                    return None;
                }
                if point[i] < ranges[i].1 {
                    point[i] += 1;
                    break;
                }
                point[i] = ranges[i].0;
                i += 1;
            }
        }
    }

    /// Restricts to `t_1 = x`, all other variables zero, as a univariate
    /// polynomial.
    pub fn restrict_to_first(&self) -> super::poly::Poly {
        let mut c: Vec<Rational> = Vec::new();
        for (e, x) in &self.terms {
            if e.iter().skip(1).any(|&k| k > 0) {
                continue;
            }
            let k = e.first().copied().unwrap_or(0) as usize;
            if c.len() <= k {
                c.resize(k + 1, Rational::zero());
            }
            c[k] += x;
        }
        super::poly::Poly::new(c)
    }

    /// Lifts a univariate polynomial in `t_1`.
    pub fn from_univariate(nvars: usize, p: &super::poly::Poly) -> Self {
        assert!(nvars >= 1 || p.degree().unwrap_or(0) == 0);
        Self::from_terms(
            nvars,
            p.coeffs().iter().enumerate().map(|(k, c)| {
                let mut e = vec![0; nvars];
                if k > 0 {
                    e[0] = k as u32;
                }
                (e, c.clone())
            }),
        )
    }

    fn binop(&self, other: &Self, sign: i64) -> Self {
        let n = self.nvars.max(other.nvars);
        let mut out = self.with_nvars(n);
        let s = int(sign);
        for (e, c) in &other.terms {
            let mut e = e.clone();
            e.resize(n, 0);
            out.add_term(e, c * &s);
        }
        out
    }
}

fn weight(e: &[u32]) -> usize {
    e.iter().enumerate().map(|(i, &k)| (i + 1) * k as usize).sum()
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.binop(rhs, 1)
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.binop(rhs, -1)
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let n = self.nvars.max(rhs.nvars);
        let mut out = MultiPoly::zero(n);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Vec<u32> = (0..n)
                    .map(|i| ea.get(i).copied().unwrap_or(0) + eb.get(i).copied().unwrap_or(0))
                    .collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&int(-1))
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<(&Vec<u32>, &Rational)> = self.terms.iter().collect();
        terms.sort_by(|a, b| weight(b.0).cmp(&weight(a.0)).then_with(|| b.0.cmp(a.0)));
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (e, c)) in terms.into_iter().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(v, &k)| if k == 1 { format!("t{}", v + 1) } else { format!("t{}^{k}", v + 1) })
                .collect();
            write_term(f, i == 0, c, &mono.join("*"))?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    exponents: Vec<u32>,
    #[serde(with = "serde_rational")]
    coeff: Rational,
}

#[derive(Serialize, Deserialize)]
struct MultiPolyJson {
    vars: usize,
    terms: Vec<TermJson>,
}

impl Serialize for MultiPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MultiPolyJson {
            vars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| TermJson { exponents: e.clone(), coeff: c.clone() })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MultiPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = MultiPolyJson::deserialize(d)?;
        if let Some(t) = j.terms.iter().find(|t| t.exponents.len() != j.vars) {
            return Err(serde::de::Error::custom(format!(
                "exponent vector {:?} does not have {} entries",
                t.exponents, j.vars
            )));
        }
        Ok(MultiPoly::from_terms(j.vars, j.terms.into_iter().map(|t| (t.exponents, t.coeff))))
    }
}

/// Coefficient rendering used in reports.
pub fn term_strings(p: &MultiPoly) -> Vec<(Vec<u32>, String)> {
    p.terms.iter().map(|(e, c)| (e.clone(), format_rational(c))).collect()
}
