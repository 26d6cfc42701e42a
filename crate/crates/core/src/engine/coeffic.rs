use serde::Serialize;

use super::closed_forms::{coefficient_configuration_series, coefficient_symmetric_series};
use super::lefschetz::LefschetzPolynomial;
use super::partition::{general_lefschetz_polynomial, CoefficientTraces};
use super::verify::{family_for, SeriesCheck, MAX_COEFFICIENT_ORDER};
use crate::dynamics::{zeta_product_form, DoldProfile};
use crate::error::{Error, Result};
use crate::oracle::Bound;
use crate::partition::PermutationGroup;
use crate::series::rational::big;
use crate::series::Rational;

/// `L` of `S^k_l(-; N)` for a coefficient space `N` of reduced Euler
/// characteristic `n`: the symmetric group on `k` points with trace
/// `n^{c(σ)}` on `N^{∧k}`.
pub fn coefficient_polynomial(k: usize, n: &Rational, l: Bound) -> Result<LefschetzPolynomial> {
    if k == 0 {
        return LefschetzPolynomial::new(crate::series::MultiPoly::one(0), 0);
    }
    if k > MAX_COEFFICIENT_ORDER {
        return Err(Error::TooLarge { what: "coefficient order".into(), size: k as u128, limit: MAX_COEFFICIENT_ORDER as u128 });
    }
    if l == Bound::Finite(0) {
        return LefschetzPolynomial::new(crate::series::MultiPoly::zero(0), k);
    }
    general_lefschetz_polynomial(&PermutationGroup::symmetric(k), &family_for(k, l)?, &CoefficientTraces::CyclePower(n.clone()))
}

/// Polynomials for `k = 0..=order` at fixed `(n, l)`, reusable across profiles.
#[derive(Clone, Debug)]
pub struct CoefficientSeries {
    pub n: i64,
    pub l: Bound,
    pub polynomials: Vec<LefschetzPolynomial>,
}

impl CoefficientSeries {
    pub fn new(n: i64, l: Bound, order: usize) -> Result<Self> {
        let nr = Rational::from_integer(n.into());
        let polynomials = (0..=order).map(|k| coefficient_polynomial(k, &nr, l)).collect::<Result<_>>()?;
        Ok(CoefficientSeries { n, l, polynomials })
    }

    pub fn order(&self) -> usize {
        self.polynomials.len() - 1
    }

    pub fn values(&self, d: &DoldProfile) -> Result<Vec<Rational>> {
        self.polynomials.iter().map(|p| Ok(big(p.eval(d)?))).collect()
    }
}

/// Report for the three coefficient identities.
#[derive(Clone, Debug, Serialize)]
pub struct CoefficientReport {
    pub n: i64,
    pub order: usize,
    pub pass: bool,
    pub checks: Vec<SeriesCheck>,
}

/// All three identities, with the polynomials built once.
#[derive(Clone, Debug)]
pub struct CoefficientIdentities {
    pub n: i64,
    pub unbounded: CoefficientSeries,
    pub configuration: CoefficientSeries,
    pub bounded: Option<CoefficientSeries>,
}

impl CoefficientIdentities {
    /// `l` selects the bounded identity, which needs `n ≤ 0` and `l ≥ -n`.
    pub fn new(n: i64, l: Option<Bound>, order: usize) -> Result<Self> {
        if let Some(b) = l {
            let ok = n <= 0 && b.allows((-n) as usize);
            if !ok {
                return Err(Error::Precondition(format!(
                    "the bounded identity needs n ≤ 0 and l ≥ -n, got n={n}, l={b}"
                )));
            }
        }
        Ok(CoefficientIdentities {
            n,
            unbounded: CoefficientSeries::new(n, Bound::Infinite, order)?,
            configuration: CoefficientSeries::new(n, Bound::Finite(1), order)?,
            bounded: l.map(|b| CoefficientSeries::new(n, b, order)).transpose()?,
        })
    }

    pub fn check(&self, d: &DoldProfile) -> Result<CoefficientReport> {
        let order = self.unbounded.order();
        let zeta = zeta_product_form(d, order)?;
        let power = coefficient_symmetric_series(&zeta, self.n)?;
        let config = coefficient_configuration_series(d, self.n, order)?;
        let mut checks = vec![
            SeriesCheck::new("unbounded: Z^-n", 0, self.unbounded.values(d)?, power.coeffs().to_vec()),
            SeriesCheck::new("configuration: prod (1 + n q^m)^D_m", 0, self.configuration.values(d)?, config.coeffs().to_vec()),
        ];
        if let Some(b) = &self.bounded {
            checks.push(SeriesCheck::new(format!("bounded l={}: Z^-n", b.l), 0, b.values(d)?, power.coeffs().to_vec()));
        }
        let pass = checks.iter().all(|c| c.pass);
        Ok(CoefficientReport { n: self.n, order, pass, checks })
    }
}

/// Left sides via the partition recursion with `n^{c(σ)}` traces, right
/// sides `Z^{-n}` and `Π (1 + n q^m)^{D_m}`, evaluated at `D`.
pub fn coefficient_identities_check(d: &DoldProfile, n: i64, l: Option<Bound>, order: usize) -> Result<CoefficientReport> {
    CoefficientIdentities::new(n, l, order)?.check(d)
}
