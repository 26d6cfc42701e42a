use std::collections::BTreeMap;

use dold_zeta_core::series::rational::{binomial, int};
use dold_zeta_core::series::{egf_pack, egf_unpack, MultiPoly, Poly, PowerSeries, Rational, RationalFunction};
use num_bigint::BigInt;
use proptest::prelude::*;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

fn unit_series(order: usize) -> impl Strategy<Value = PowerSeries> {
    prop::collection::vec(small_rational(), order).prop_map(|mut v| {
        v.insert(0, int(1));
        PowerSeries::from_coeffs(v)
    })
}

fn any_series(order: usize) -> impl Strategy<Value = PowerSeries> {
    prop::collection::vec(small_rational(), order + 1).prop_map(PowerSeries::from_coeffs)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn inverse_times_series_is_one(a in unit_series(8)) {
        let inv = a.try_invert().unwrap();
        prop_assert_eq!(&inv * &a, PowerSeries::one(8));
    }

    #[test]
    fn exp_form_matches_product_form(e in prop::collection::vec(-3i64..=3, 1..=7)) {
        let order = e.len();
        let l: Vec<Rational> = (1..=order)
            .map(|k| (1..=k).filter(|m| k % m == 0).map(|m| int(m as i64 * e[m - 1])).sum())
            .collect();
        let exps: BTreeMap<usize, BigInt> = e.iter().enumerate().map(|(i, &x)| (i + 1, BigInt::from(x))).collect();
        prop_assert_eq!(PowerSeries::exp_neg_weighted(&l), PowerSeries::exponent_product(&exps, order));
    }

    #[test]
    fn q_power_substitution_is_multiplicative(a in any_series(8), b in any_series(8), m in 1usize..=3) {
        prop_assert_eq!((&a * &b).substitute_q_power(m), &a.substitute_q_power(m) * &b.substitute_q_power(m));
    }

    #[test]
    fn expansion_times_denominator_is_numerator(
        num in prop::collection::vec(-3i64..=3, 1..=4),
        den in prop::collection::vec(-3i64..=3, 0..=3),
    ) {
        let mut d = vec![1];
        d.extend(den);
        let (n, d) = (Poly::from_ints(&num), Poly::from_ints(&d));
        let r = RationalFunction::new(n.clone(), d.clone()).unwrap();
        prop_assert_eq!(&r.expand(10) * &d.to_series(10), n.to_series(10));
    }

    #[test]
    fn egf_product_is_binomial_convolution(
        a in prop::collection::vec(-5i64..=5, 7),
        b in prop::collection::vec(-5i64..=5, 7),
    ) {
        let (ar, br): (Vec<Rational>, Vec<Rational>) = (a.iter().map(|&x| int(x)).collect(), b.iter().map(|&x| int(x)).collect());
        let got = egf_unpack(&(&egf_pack(&ar) * &egf_pack(&br)));
        for k in 0..7 {
            let want: Rational = (0..=k).map(|i| Rational::from_integer(binomial(k, i)) * &ar[i] * &br[k - i]).sum();
            prop_assert_eq!(&got[k], &want);
        }
    }

    #[test]
    fn integer_valued_binomial_polynomials_are_numerical(k in 0u32..=4, shift in -3i64..=3) {
        // C(t_1 + shift, k) is integer valued
        let x = &MultiPoly::var(1, 0) + &MultiPoly::constant(1, int(shift));
        let p = (0..k).fold(MultiPoly::one(1), |acc, i| {
            &acc * &(&x - &MultiPoly::constant(1, int(i as i64))).scale(&Rational::new(1.into(), (i as i64 + 1).into()))
        });
        prop_assert!(p.is_numerical());
        if k >= 2 {
            prop_assert!(!p.scale(&Rational::new(1.into(), 7.into())).is_numerical() || p.is_zero());
        }
    }
}

#[test]
fn numerical_box_test_agrees_with_wide_lattice() {
    let t = |i| MultiPoly::var(3, i);
    let samples = [
        (&t(0).pow(2) + &t(0)).scale(&Rational::new(1.into(), 2.into())),
        (&t(0).pow(2) + &t(1)).scale(&Rational::new(1.into(), 2.into())),
        (&(&t(0).pow(3) - &t(0)) + &t(2).scale(&int(3))).scale(&Rational::new(1.into(), 3.into())),
        (&t(0) * &t(1)).scale(&Rational::new(1.into(), 2.into())),
    ];
    for p in &samples {
        let wide = p.first_non_integer_on(&[(-4, 4); 3]).is_none();
        assert_eq!(p.is_numerical(), wide, "{p}");
    }
}
