use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::dynamics::DoldProfile;
use crate::error::{Error, Result};
use crate::oracle::Bound;
use crate::series::rational::{factorial, int};
use crate::series::{egf_unpack, PowerSeries, Rational};

fn require_unit(zeta: &PowerSeries) -> Result<()> {
    if !zeta.coeff(0).is_one() {
        return Err(Error::Precondition("zeta series must have constant term 1".into()));
    }
    Ok(())
}

fn to_exponent(x: &BigInt) -> Result<i64> {
    x.to_i64().ok_or_else(|| Error::TooLarge {
        what: "series exponent".into(),
        size: x.abs().to_u128().unwrap_or(u128::MAX),
        limit: i64::MAX as u128,
    })
}

/// `Σ_k L̃(S^k_l f) q^k = Z(f; q^{l+1}) Z(f; q)^{-1}`, or `Z(f; q)^{-1}` for `l = ∞`.
pub fn rhs_symmetric_power(zeta: &PowerSeries, l: Bound) -> Result<PowerSeries> {
    require_unit(zeta)?;
    let inv = zeta.try_invert()?;
    Ok(match l {
        Bound::Infinite => inv,
        Bound::Finite(l) => &zeta.substitute_q_power(l + 1) * &inv,
    })
}

/// `Σ_{k ≥ 1} L(P^k f) q^k = (1 - q)^{-1} (Z(f; q^2) Z(f; q)^{-1} - 1)`.
pub fn rhs_borsuk_ulam(zeta: &PowerSeries) -> Result<PowerSeries> {
    let c = &rhs_symmetric_power(zeta, Bound::Finite(1))? - &PowerSeries::one(zeta.order());
    let geom = PowerSeries::from_coeffs(vec![int(1); zeta.order() + 1]);
    Ok(&c * &geom)
}

/// `(1 + q_1 + .. + q_l)^{L(f)}` with `q_i = q^i / i!`, to `order`. Its
/// unpacked coefficients are `L̃(T^k_l f)`.
pub fn rhs_bounded_tuples(lefschetz: &BigInt, l: usize, order: usize) -> Result<PowerSeries> {
    let base: Vec<Rational> =
        (0..=order).map(|i| if i <= l { Rational::new(1.into(), factorial(i)) } else { Rational::zero() }).collect();
    PowerSeries::from_coeffs(base).pow(to_exponent(lefschetz)?)
}

/// `L̃(T^k_l f)` for `k = 0..=order`.
pub fn bounded_tuple_counts(lefschetz: &BigInt, l: usize, order: usize) -> Result<Vec<Rational>> {
    Ok(egf_unpack(&rhs_bounded_tuples(lefschetz, l, order)?))
}

/// `Σ ε^k L^T(C^k g) q^k` for a diffeomorphism `g` of a closed manifold
/// with `f = g^{-1}`: `Z(f; q)` in odd dimension, `Z(f; q^2) Z(f; q)^{-1}`
/// in even dimension.
pub fn configuration_trace_series(zeta: &PowerSeries, odd_dimension: bool) -> Result<PowerSeries> {
    require_unit(zeta)?;
    if odd_dimension {
        Ok(zeta.clone())
    } else {
        rhs_symmetric_power(zeta, Bound::Finite(1))
    }
}

/// `L^T(C^k g) = ε^k [q^k]` of the configuration trace series (`ε = ±1`).
pub fn configuration_traces(series: &PowerSeries, epsilon: i64) -> Result<Vec<Rational>> {
    if epsilon != 1 && epsilon != -1 {
        return Err(Error::Precondition(format!("orientation sign must be ±1, got {epsilon}")));
    }
    Ok(series
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, c)| if epsilon < 0 && k % 2 == 1 { -c } else { c.clone() })
        .collect())
}

/// `Z^{-n}`: the symmetric powers with coefficients in a space of reduced
/// Euler characteristic `n`.
pub fn coefficient_symmetric_series(zeta: &PowerSeries, n: i64) -> Result<PowerSeries> {
    require_unit(zeta)?;
    zeta.pow(-n)
}

/// `Π_m (1 + n q^m)^{D_m}`: configuration spaces with coefficients.
pub fn coefficient_configuration_series(d: &DoldProfile, n: i64, order: usize) -> Result<PowerSeries> {
    if d.horizon() < order {
        return Err(Error::HorizonTooShort { needed: order, have: d.horizon() });
    }
    let mut acc = PowerSeries::one(order);
    for m in 1..=order {
        let e = to_exponent(d.get(m))?;
        if e == 0 || n == 0 {
            continue;
        }
        let mut base = PowerSeries::one(order);
        base = &base + &PowerSeries::monomial(int(n), m, order);
        acc = &acc * &base.pow(e)?;
    }
    Ok(acc)
}

/// `L̃(S^k_l f)` for a degree-`d` self-map of an odd sphere, case by case:
/// `1` at `k = 0`, `0` when `l + 1` divides `k`, and `(1 - d) d^j` when
/// `j(l+1) < k < (j+1)(l+1)`.
pub fn odd_sphere_symmetric_value(d: i64, l: usize, k: usize) -> BigInt {
    if k == 0 {
        return BigInt::one();
    }
    if k % (l + 1) == 0 {
        return BigInt::zero();
    }
    let j = k / (l + 1);
    BigInt::from(1 - d) * num_traits::pow(BigInt::from(d), j)
}

/// `L(S^k f)` for the empty product convention check: `[q^k]` as exact integers.
pub fn integer_coefficients(s: &PowerSeries) -> Result<Vec<BigInt>> {
    s.integer_coeffs()
        .ok_or_else(|| Error::Invariant(format!("series {s} has non-integer coefficients")))
}

/// `Σ_{j ≤ k} C(χ, j)` for `j ≥ 1`.
pub fn subset_euler_characteristic(chi: usize, k: usize) -> BigInt {
    (1..=k.min(chi)).map(|j| crate::series::rational::binomial(chi, j)).sum()
}
