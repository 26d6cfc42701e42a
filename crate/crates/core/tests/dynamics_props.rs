use dold_zeta_core::dynamics::*;
use dold_zeta_core::series::rational::int;
use dold_zeta_core::series::PowerSeries;
use num_bigint::BigInt;
use proptest::prelude::*;

fn finite_map(max_n: usize) -> impl Strategy<Value = FiniteSelfMap> {
    (0..=max_n).prop_flat_map(|n| prop::collection::vec(0..n.max(1), n)).prop_map(|v| FiniteSelfMap::new(v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn lefschetz_round_trip(f in finite_map(10)) {
        prop_assert_eq!(dold_from_lefschetz(&lefschetz_sequence(&f, 12)).unwrap(), cycle_profile(&f, 12));
    }

    #[test]
    fn mobius_sums_are_divisible(f in finite_map(10)) {
        let l = lefschetz_sequence(&f, 12);
        prop_assert!(l.satisfies_congruences());
        for (m, s) in l.mobius_sums().iter().enumerate() {
            prop_assert_eq!(s % BigInt::from(m + 1), BigInt::from(0));
        }
    }

    #[test]
    fn iterate_profile_matches_iterated_map(f in finite_map(10), j in 1usize..=4) {
        let d = cycle_profile(&f, 6 * j);
        prop_assert_eq!(d.iterate(j, 6).unwrap(), cycle_profile(&f.iterate(j), 6));
    }

    #[test]
    fn zeta_forms_agree(d in prop::collection::vec(-5i64..=5, 12)) {
        let d = DoldProfile::from_i64(&d);
        let l = lefschetz_from_dold(&d);
        prop_assert_eq!(zeta_product_form(&d, 12).unwrap(), zeta_exp_form(&l, 12).unwrap());
    }

    #[test]
    fn reduced_zeta_times_one_minus_q(d in prop::collection::vec(-5i64..=5, 10)) {
        let input = ZetaInput::Profile(DoldProfile::from_i64(&d));
        let red = zeta_series(&input, 10, true).unwrap();
        let full = zeta_series(&input, 10, false).unwrap();
        let one_minus_q = PowerSeries::from_slice_padded(&[int(1), int(-1)], 10);
        prop_assert_eq!(&red * &one_minus_q, full);
    }

    #[test]
    fn pointed_map_has_reduced_profile(f in finite_map(8)) {
        prop_assert_eq!(reduced_cycle_profile(&f.pointed(), 8), cycle_profile(&f, 8));
    }
}

#[test]
fn non_congruent_sequence_is_rejected() {
    let l = LefschetzSequence::from_i64(&[1, 2]);
    assert!(matches!(dold_from_lefschetz(&l), Err(dold_zeta_core::Error::NotRealizable { period: 2, .. })));
}
