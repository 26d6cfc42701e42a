use std::fmt;

use super::poly::Poly;
use super::power::PowerSeries;
use super::rational::Rational;
use crate::error::{Error, Result};

/// Truncated series in `q` whose coefficients are polynomials in `T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BivariateSeries {
    coeffs: Vec<Poly>,
}

impl BivariateSeries {
    pub fn zero(order: usize) -> Self {
        BivariateSeries { coeffs: vec![Poly::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = Poly::one();
        s
    }

    /// A polynomial in `q` given by its `T`-polynomial coefficients, padded
    /// or truncated to `order`.
    pub fn from_q_polynomial(c: &[Poly], order: usize) -> Self {
        let mut s = Self::zero(order);
        for (dst, src) in s.coeffs.iter_mut().zip(c) {
            *dst = src.clone();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &Poly {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let mut out = vec![Poly::zero(); n + 1];
        for i in 0..=n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=n - i {
                if !other.coeffs[j].is_zero() {
                    out[i + j] = &out[i + j] + &(&self.coeffs[i] * &other.coeffs[j]);
                }
            }
        }
        BivariateSeries { coeffs: out }
    }

    /// Inverse; the `q^0` coefficient must be a nonzero constant.
    pub fn try_invert(&self) -> Result<Self> {
        let a0 = &self.coeffs[0];
        if a0.degree() != Some(0) {
            return Err(Error::NotAUnit);
        }
        let inv0 = a0.constant_term().recip();
        let n = self.order();
        let mut out: Vec<Poly> = vec![Poly::constant(inv0.clone())];
        for k in 1..=n {
            let mut acc = Poly::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    acc = &acc + &(&self.coeffs[j] * &out[k - j]);
                }
            }
            out.push(acc.scale(&-inv0.clone()));
        }
        Ok(BivariateSeries { coeffs: out })
    }

    /// Specializes `T` to a value.
    pub fn eval_t(&self, t: &Rational) -> PowerSeries {
        PowerSeries::from_coeffs(self.coeffs.iter().map(|p| p.eval(t)).collect())
    }
}

impl fmt::Display for BivariateSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, p) in self.coeffs.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            match k {
                0 => write!(f, "({})", p.display_with("T"))?,
                1 => write!(f, "({})*q", p.display_with("T"))?,
                _ => write!(f, "({})*q^{k}", p.display_with("T"))?,
            }
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(q^{})", self.order() + 1)
    }
}
