use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::poly::Poly;
use super::power::PowerSeries;
use super::rational::{serde_rational_vec, Rational};
use crate::error::{Error, Result};

/// Quotient of two polynomials that can be expanded around 0.
///
/// Stored with the common factor removed and the denominator scaled so its
/// constant term is 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl RationalFunction {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        let g = Poly::gcd(&num, &den);
        let (num, den) = if num.is_zero() {
            (Poly::zero(), Poly::one())
        } else {
            (
                num.exact_div(&g).expect("gcd divides"),
                den.exact_div(&g).expect("gcd divides"),
            )
        };
        let c0 = den.constant_term();
        if c0.is_zero() {
            return Err(Error::NotExpandable);
        }
        let inv = c0.recip();
        Ok(RationalFunction { num: num.scale(&inv), den: den.scale(&inv) })
    }

    pub fn polynomial(p: Poly) -> Self {
        RationalFunction { num: p, den: Poly::one() }
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    /// Taylor expansion to `order`.
    pub fn expand(&self, order: usize) -> PowerSeries {
        let inv = self.den.to_series(order).try_invert().expect("constant term is 1");
        &self.num.to_series(order) * &inv
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(&self.num * &other.num, &self.den * &other.den).expect("unit constant terms")
    }

    /// `1 / self`; fails when the numerator vanishes at 0.
    pub fn reciprocal(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.reciprocal()? } else { self.clone() };
        let n = e.unsigned_abs() as u32;
        Ok(RationalFunction { num: base.num.pow(n), den: base.den.pow(n) })
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one_poly() && self.den.is_one_poly()
    }
}

impl Poly {
    fn is_one_poly(&self) -> bool {
        self.degree() == Some(0) && self.constant_term().is_one()
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

#[derive(Serialize, Deserialize)]
struct RationalFunctionJson {
    #[serde(with = "serde_rational_vec")]
    numerator: Vec<Rational>,
    #[serde(with = "serde_rational_vec")]
    denominator: Vec<Rational>,
}

impl Serialize for RationalFunction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RationalFunctionJson {
            numerator: self.num.coeffs().to_vec(),
            denominator: self.den.coeffs().to_vec(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalFunction {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = RationalFunctionJson::deserialize(d)?;
        RationalFunction::new(Poly::new(j.numerator), Poly::new(j.denominator))
            .map_err(serde::de::Error::custom)
    }
}
