mod common;

use dold_zeta_core::partition::*;
use proptest::prelude::*;

fn labels(k: usize) -> impl Strategy<Value = Vec<u8>> {
    prop::collection::vec(0u8..4, k)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn canonical_form_is_idempotent(l in labels(6)) {
        let p = SetPartition::from_labels(&l);
        let q = SetPartition::new(6, p.blocks().to_vec()).unwrap();
        prop_assert_eq!(&p, &q);
        prop_assert_eq!(SetPartition::from_labels(&p.labels()), p);
    }

    #[test]
    fn join_is_least_upper_bound(a in labels(5), b in labels(5)) {
        let (a, b) = (SetPartition::from_labels(&a), SetPartition::from_labels(&b));
        let j = a.join(&b).unwrap();
        prop_assert!(a.refines(&j).unwrap() && b.refines(&j).unwrap());
        for c in SetPartition::enumerate_all(5).unwrap() {
            if a.refines(&c).unwrap() && b.refines(&c).unwrap() {
                prop_assert!(j.refines(&c).unwrap());
            }
        }
    }

    #[test]
    fn cycle_data_is_a_class_function(g in 0usize..24, h in 0usize..24) {
        let s4 = PermutationGroup::symmetric(4);
        let conj = s4.mul(s4.mul(h, g), s4.inv(h));
        prop_assert_eq!(s4.cycle_data(g), s4.cycle_data(conj));
    }
}

#[test]
fn excluded_steps_make_progress_on_every_family() {
    for k in 1..=4 {
        let group = PermutationGroup::trivial(k);
        let mut seen = 0;
        for fam in common::closed_families(k) {
            if fam.is_everything() {
                continue;
            }
            let step = minimal_excluded_step(&fam, &group.action(), &mut TieBreak::CanonicalLeast).unwrap();
            assert!(step.extended.len() > fam.len());
            assert!(step.lambda.num_blocks() < k);
            seen += 1;
        }
        assert!(seen > 0 || k == 1);
    }
}

#[test]
fn monotone_predicates_give_valid_families() {
    for k in 1..=5 {
        for l in 1..=k {
            assert!(PartitionFamily::max_block(k, l).unwrap().validate(Some(&PermutationGroup::symmetric(k))).is_ok());
        }
    }
    let pi = SetPartition::new(4, vec![vec![0, 1], vec![2, 3]]).unwrap();
    let fam = PartitionFamily::refinements_of(&pi).unwrap();
    assert!(fam.validate(None).is_ok());
    assert!(fam.validate(Some(&PermutationGroup::symmetric(4))).is_err());
    let stab = PermutationGroup::generated(4, &[Perm::new(vec![1, 0, 2, 3]).unwrap(), Perm::new(vec![2, 3, 0, 1]).unwrap()], 120).unwrap();
    assert!(fam.validate(Some(&stab)).is_ok());
    // exactly two blocks is not closed under refinement
    assert!(matches!(
        PartitionFamily::from_predicate(3, |p| p.num_blocks() == 2),
        Err(dold_zeta_core::Error::NotRefinementClosed { .. })
    ));
}

#[test]
fn down_set_counts() {
    // nonempty order ideals of the partition lattice
    let counts: Vec<usize> = (1..=3).map(|k| common::closed_families(k).len()).collect();
    assert_eq!(counts, vec![1, 2, 9]);
}
