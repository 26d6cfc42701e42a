use std::collections::BTreeMap;

use dold_zeta_core::graded::{koszul_permute, GradedEndomorphism};
use dold_zeta_core::partition::Perm;
use dold_zeta_core::series::rational::int;
use dold_zeta_core::series::{PowerSeries, Rational};
use proptest::prelude::*;

/// Graded endomorphisms with `dims[j]` the dimension in degree `j`.
fn graded(max_total: usize, max_dim: usize) -> impl Strategy<Value = GradedEndomorphism> {
    prop::collection::vec(0..=max_dim, 4)
        .prop_filter("total dimension bound", move |d| d.iter().sum::<usize>() <= max_total)
        .prop_flat_map(|dims| {
            let blocks: Vec<_> = dims
                .iter()
                .map(|&n| prop::collection::vec(prop::collection::vec(-2i64..=2, n), n))
                .collect();
            blocks
        })
        .prop_map(|blocks| {
            let m: BTreeMap<usize, Vec<Vec<Rational>>> = blocks
                .into_iter()
                .enumerate()
                .map(|(j, a)| (j, a.into_iter().map(|r| r.into_iter().map(int).collect()).collect()))
                .collect();
            GradedEndomorphism::new(m).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn determinant_and_trace_zeta_agree(a in graded(9, 3)) {
        prop_assert!(a.zeta(10).is_ok());
    }

    #[test]
    fn invariant_trace_is_the_poincare_coefficient(a in graded(4, 2)) {
        let p = a.poincare_generating(4);
        for k in 0..=4 {
            prop_assert_eq!(&a.koszul_invariant_trace(k).unwrap(), p.coeff(k), "k={}", k);
        }
    }

    #[test]
    fn poincare_series_is_multiplicative(a in graded(4, 2), b in graded(4, 2)) {
        prop_assert_eq!(a.direct_sum(&b).poincare_generating(6), a.poincare_generating(6).mul(&b.poincare_generating(6)));
    }

    #[test]
    fn poincare_at_one_inverts_zeta(a in graded(6, 3)) {
        let p1 = a.poincare_generating(8).eval_t(&int(1));
        prop_assert_eq!(&p1 * &a.zeta(8).unwrap(), PowerSeries::one(8));
    }

    #[test]
    fn signed_permutation_action_is_a_representation(
        k in 1usize..=4,
        s in 0usize..24,
        t in 0usize..24,
        parity in prop::collection::vec(any::<bool>(), 4),
        tensor in prop::collection::vec(0usize..4, 4),
    ) {
        let perms = Perm::all(k);
        let (sigma, tau) = (&perms[s % perms.len()], &perms[t % perms.len()]);
        let tensor = &tensor[..k];
        let (s1, m1) = koszul_permute(tau, tensor, &parity);
        let (s2, m2) = koszul_permute(sigma, &m1, &parity);
        let (s3, m3) = koszul_permute(&sigma.compose(tau), tensor, &parity);
        prop_assert_eq!((s1 * s2, m2), (s3, m3));
    }
}

#[test]
fn circle_conjugation() {
    let a = GradedEndomorphism::from_ints(&[(0, vec![vec![1]]), (1, vec![vec![-1]])]).unwrap();
    let want = &PowerSeries::from_ints(&[1, -2, 1, 0, 0, 0, 0]) * &PowerSeries::from_ints(&[1, 0, -1, 0, 0, 0, 0]).try_invert().unwrap();
    assert_eq!(a.zeta(6).unwrap(), want);
    assert_eq!(a.lefschetz_sequence(4), vec![int(2), int(0), int(2), int(0)]);
}
