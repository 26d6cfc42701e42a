use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::series::rational::big;
use crate::series::PowerSeries;

use super::profile::{DoldProfile, LefschetzSequence};

/// Where zeta data comes from.
#[derive(Clone, Debug)]
pub enum ZetaInput {
    Profile(DoldProfile),
    Lefschetz(LefschetzSequence),
}

/// `Π_m (1 - q^m)^{D_m}` to `order`.
pub fn zeta_product_form(d: &DoldProfile, order: usize) -> Result<PowerSeries> {
    if d.horizon() < order {
        return Err(Error::HorizonTooShort { needed: order, have: d.horizon() });
    }
    let exps: BTreeMap<usize, _> = (1..=order).map(|m| (m, d.get(m).clone())).collect();
    Ok(PowerSeries::exponent_product(&exps, order))
}

/// `exp(-Σ_k L(f^k) q^k / k)` to `order`.
pub fn zeta_exp_form(l: &LefschetzSequence, order: usize) -> Result<PowerSeries> {
    if l.horizon() < order {
        return Err(Error::HorizonTooShort { needed: order, have: l.horizon() });
    }
    let w: Vec<_> = l.values()[..order].iter().cloned().map(big).collect();
    Ok(PowerSeries::exp_neg_weighted(&w))
}

/// Zeta function computed in both product and exponential form; the two
/// must agree. With `reduced`, uses `D_1 - 1` and `L(f^k) - 1`.
pub fn zeta_series(input: &ZetaInput, order: usize, reduced: bool) -> Result<PowerSeries> {
    let (d, l) = match input {
        ZetaInput::Profile(d) => (d.clone(), d.to_lefschetz()),
        ZetaInput::Lefschetz(l) => (l.to_dold()?, l.clone()),
    };
    zeta_from_pair(&d, &l, order, reduced)
}

/// Zeta function from Dold indices and Lefschetz numbers supplied together;
/// fails with [`Error::InconsistentInput`] unless they are related by Möbius
/// inversion up to `order`.
pub fn zeta_from_pair(
    d: &DoldProfile,
    l: &LefschetzSequence,
    order: usize,
    reduced: bool,
) -> Result<PowerSeries> {
    let (d, l) = if reduced { (d.reduced(), l.reduced()) } else { (d.clone(), l.clone()) };
    let product = zeta_product_form(&d, order)?;
    let exp = zeta_exp_form(&l, order)?;
    match product.compare(&exp) {
        crate::series::SeriesComparison::Differ { index } => Err(Error::InconsistentInput(format!(
            "product and exponential forms of the zeta function differ at q^{index}"
        ))),
        _ => Ok(product),
    }
}
