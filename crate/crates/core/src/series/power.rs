//! Truncated univariate power series over the rationals.
//!
//! A series of order `N` stores the coefficients of `q^0..=q^N`. Binary
//! operations truncate to the smaller order; nothing is ever read past a
//! series' own order.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rational::{format_rational, int, serde_rational_vec, write_term, Rational};
use crate::error::{Error, Result};

/// Default truncation order for identity checks.
pub const DEFAULT_ORDER: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PowerSeries {
    coeffs: Vec<Rational>,
}

/// Outcome of comparing two series that may have different orders.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeriesComparison {
    /// Same order, every coefficient equal.
    Equal,
    /// Orders differ; the shared prefix `0..=shared_order` agrees.
    PrefixEqual { shared_order: usize },
    /// First index at which the coefficients differ.
    Differ { index: usize },
}

impl SeriesComparison {
    /// True for full or prefix agreement.
    pub fn agrees(&self) -> bool {
        !matches!(self, SeriesComparison::Differ { .. })
    }
}

impl PowerSeries {
    pub fn zero(order: usize) -> Self {
        PowerSeries { coeffs: vec![Rational::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Rational::one(), order)
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// `c q^k`, or zero when `k > order`.
    pub fn monomial(c: Rational, k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    /// Builds a series from its coefficients; the order is `coeffs.len() - 1`.
    ///
    /// Panics on an empty vector.
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a power series needs at least the constant term");
        PowerSeries { coeffs }
    }

    /// Coefficients `c` padded with zeros (or truncated) to `order`.
    pub fn from_slice_padded(c: &[Rational], order: usize) -> Self {
        let mut s = Self::zero(order);
        for (dst, src) in s.coeffs.iter_mut().zip(c) {
            *dst = src.clone();
        }
        s
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::from_coeffs(c.iter().map(|&x| int(x)).collect())
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `q^k`; panics beyond the order.
    pub fn coeff(&self, k: usize) -> &Rational {
        &self.coeffs[k]
    }

    pub fn get(&self, k: usize) -> Option<&Rational> {
        self.coeffs.get(k)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order(), "cannot extend a truncated series");
        PowerSeries { coeffs: self.coeffs[..=order].to_vec() }
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Integer coefficients, or `None` if any coefficient is fractional.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.numer().clone()))
            .collect()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        PowerSeries { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// Multiplicative inverse; needs a nonzero constant term.
    pub fn try_invert(&self) -> Result<Self> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(Error::NotAUnit);
        }
        let inv0 = a0.recip();
        let n = self.order();
        let mut out: Vec<Rational> = Vec::with_capacity(n + 1);
        out.push(inv0.clone());
        for k in 1..=n {
            let mut acc = Rational::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    acc += &self.coeffs[j] * &out[k - j];
                }
            }
            out.push(-acc * &inv0);
        }
        Ok(PowerSeries { coeffs: out })
    }

    /// Integer power; negative exponents need a unit.
    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.try_invert()? } else { self.clone() };
        let mut exp = e.unsigned_abs();
        let mut acc = Self::one(self.order());
        let mut sq = base;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &sq;
            }
            exp >>= 1;
            if exp > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// `a(q) ↦ a(q^m)` at the same order.
    pub fn substitute_q_power(&self, m: usize) -> Self {
        assert!(m >= 1, "substitution exponent must be positive");
        let n = self.order();
        let mut out = Self::zero(n);
        for (k, c) in self.coeffs.iter().enumerate() {
            let idx = k * m;
            if idx > n {
                break;
            }
            out.coeffs[idx] = c.clone();
        }
        out
    }

    /// `exp(-Σ_{k≥1} L_k q^k / k)` where `weights[k-1] = L_k`; the order is
    /// `weights.len()`.
    pub fn exp_neg_weighted(weights: &[Rational]) -> Self {
        let n = weights.len();
        let mut z: Vec<Rational> = Vec::with_capacity(n + 1);
        z.push(Rational::one());
        for k in 1..=n {
            let mut acc = Rational::zero();
            for j in 1..=k {
                let w = &weights[j - 1];
                if !w.is_zero() {
                    acc -= w * &z[k - j];
                }
            }
            z.push(acc / int(k as i64));
        }
        PowerSeries { coeffs: z }
    }

    /// `Π_m (1 - q^m)^{e_m}` to the given order. Negative exponents are
    /// handled by inverting the product of the corresponding positive powers.
    pub fn exponent_product(exponents: &BTreeMap<usize, BigInt>, order: usize) -> Self {
        let mut pos = Self::one(order);
        let mut neg = Self::one(order);
        for (&m, e) in exponents {
            assert!(m >= 1, "periods start at 1");
            if m > order || e.is_zero() {
                continue;
            }
            let target = if e > &BigInt::zero() { &mut pos } else { &mut neg };
            let times = e.magnitude().clone();
            // (1 - q^m)^e by repeated sparse multiplication, capped by the
            // order: beyond order/m factors the binomial form is cheaper.
            let cap = num_bigint::BigUint::from(order / m + 1);
            if times <= cap {
                let t: usize = times.try_into().expect("bounded by order");
                for _ in 0..t {
                    target.mul_one_minus_q_power(m);
                }
            } else {
                target.mul_binomial_one_minus_q_power(m, &BigInt::from(times));
            }
        }
        &pos * &neg.try_invert().expect("constant term is 1")
    }

    fn mul_one_minus_q_power(&mut self, m: usize) {
        for i in (m..self.coeffs.len()).rev() {
            let prev = self.coeffs[i - m].clone();
            self.coeffs[i] -= prev;
        }
    }

    fn mul_binomial_one_minus_q_power(&mut self, m: usize, e: &BigInt) {
        let order = self.order();
        let mut factor = Self::zero(order);
        let mut c = Rational::one();
        let er = Rational::from_integer(e.clone());
        let mut j = 0usize;
        while j * m <= order {
            factor.coeffs[j * m] = c.clone();
            // binom(e, j+1) (-1)^{j+1} from binom(e, j) (-1)^j
            c = -c * (&er - int(j as i64)) / int(j as i64 + 1);
            j += 1;
        }
        *self = &*self * &factor;
    }

    /// Compares coefficientwise over the shared prefix.
    pub fn compare(&self, other: &Self) -> SeriesComparison {
        let shared = self.order().min(other.order());
        for k in 0..=shared {
            if self.coeffs[k] != other.coeffs[k] {
                return SeriesComparison::Differ { index: k };
            }
        }
        if self.order() == other.order() {
            SeriesComparison::Equal
        } else {
            SeriesComparison::PrefixEqual { shared_order: shared }
        }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&Rational, &Rational) -> Rational) -> Self {
        let n = self.order().min(other.order());
        PowerSeries {
            coeffs: (0..=n).map(|k| f(&self.coeffs[k], &other.coeffs[k])).collect(),
        }
    }
}

impl Add for &PowerSeries {
    type Output = PowerSeries;
    fn add(self, rhs: &PowerSeries) -> PowerSeries {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &PowerSeries {
    type Output = PowerSeries;
    fn sub(self, rhs: &PowerSeries) -> PowerSeries {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Mul for &PowerSeries {
    type Output = PowerSeries;
    fn mul(self, rhs: &PowerSeries) -> PowerSeries {
        let n = self.order().min(rhs.order());
        let mut out = vec![Rational::zero(); n + 1];
        for (i, a) in self.coeffs[..=n].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs[..=n - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        PowerSeries { coeffs: out }
    }
}

impl Neg for &PowerSeries {
    type Output = PowerSeries;
    fn neg(self) -> PowerSeries {
        PowerSeries { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for PowerSeries {
            type Output = PowerSeries;
            fn $m(self, rhs: PowerSeries) -> PowerSeries {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => "q".to_string(),
                _ => format!("q^{k}"),
            };
            write_term(f, first, c, &mono)?;
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(q^{})", self.order() + 1)
    }
}

#[derive(Serialize, Deserialize)]
struct SeriesJson {
    order: usize,
    #[serde(with = "serde_rational_vec")]
    coeffs: Vec<Rational>,
}

impl Serialize for PowerSeries {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SeriesJson { order: self.order(), coeffs: self.coeffs.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for PowerSeries {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = SeriesJson::deserialize(d)?;
        if j.coeffs.len() != j.order + 1 {
            return Err(serde::de::Error::custom(format!(
                "series of order {} needs {} coefficients, got {}",
                j.order,
                j.order + 1,
                j.coeffs.len()
            )));
        }
        Ok(PowerSeries { coeffs: j.coeffs })
    }
}

/// Coefficients as `"p/q"` strings, for compact reports.
pub fn coeff_strings(s: &PowerSeries) -> Vec<String> {
    s.coeffs.iter().map(format_rational).collect()
}
