mod common;

use std::collections::BTreeSet;

use dold_zeta_core::dynamics::*;
use dold_zeta_core::engine::*;
use dold_zeta_core::oracle::{Bound, Oracle};
use dold_zeta_core::partition::*;
use dold_zeta_core::series::rational::{big, frac, int};
use dold_zeta_core::series::{MultiPoly, PowerSeries, Rational};
use num_bigint::BigInt;
use proptest::prelude::*;

fn finite_map(max_n: usize) -> impl Strategy<Value = FiniteSelfMap> {
    (1..=max_n).prop_flat_map(|n| prop::collection::vec(0..n, n)).prop_map(|v| FiniteSelfMap::new(v).unwrap())
}

fn zeta(f: &FiniteSelfMap, order: usize) -> PowerSeries {
    zeta_product_form(&cycle_profile(f, order), order).unwrap()
}

fn t(n: usize, i: usize) -> MultiPoly {
    MultiPoly::var(n, i - 1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn symmetric_powers_match_multisets(f in finite_map(6)) {
        let o = Oracle::default();
        for l in [Bound::Finite(1), Bound::Finite(2), Bound::Finite(3), Bound::Infinite] {
            let rhs = rhs_symmetric_power(&zeta(&f, 6), l).unwrap();
            let check = verify_identity(&CountingPlan::Multisets { map: f.clone(), l }, &rhs, 6, &o).unwrap();
            prop_assert!(check.pass, "{}", check.summary());
        }
    }

    #[test]
    fn subset_spaces_match(f in finite_map(6)) {
        let rhs = rhs_borsuk_ulam(&zeta(&f, 6)).unwrap();
        let check = verify_identity(&CountingPlan::Subsets { map: f }, &rhs, 6, &Oracle::default()).unwrap();
        prop_assert!(check.pass, "{}", check.summary());
    }

    #[test]
    fn tuple_spaces_match(f in finite_map(6), l in 1usize..=3) {
        let lf = BigInt::from(f.fixed_point_count());
        let rhs = PowerSeries::from_coeffs(bounded_tuple_counts(&lf, l, 6).unwrap());
        let check = verify_identity(&CountingPlan::Tuples { map: f, l: Bound::Finite(l) }, &rhs, 6, &Oracle::default()).unwrap();
        prop_assert!(check.pass, "{}", check.summary());
    }

    #[test]
    fn dold_polynomials_of_bounded_symmetric_powers(f in finite_map(5), k in 1usize..=3, l in 1usize..=3) {
        let l = l.min(k);
        let sym = PermutationGroup::symmetric(k);
        let fam = PartitionFamily::max_block(k, l).unwrap();
        let p = general_lefschetz_polynomial(&sym, &fam, &CoefficientTraces::Trivial).unwrap();
        let induced = Oracle::default().induced_space(&f.pointed(), sym.elements(), Some(&fam), None).unwrap().map;
        let brute = reduced_cycle_profile(&induced, 3);
        let d = cycle_profile(&f, 3 * k);
        for m in 1..=3 {
            let v = p.dold_polynomial(m).eval_int(&d.values()[..3 * k]).unwrap();
            prop_assert_eq!(v, big(brute.get(m).clone()), "m={}", m);
        }
    }

    #[test]
    fn composition_matches_nested_induced_maps(f in finite_map(3), l1 in 1usize..=2, l2 in 1usize..=2) {
        let s2 = PermutationGroup::symmetric(2);
        let (fa, fb) = (PartitionFamily::max_block(2, l1).unwrap(), PartitionFamily::max_block(2, l2).unwrap());
        let inner = general_lefschetz_polynomial(&s2, &fa, &CoefficientTraces::Trivial).unwrap();
        let outer = general_lefschetz_polynomial(&s2, &fb, &CoefficientTraces::Trivial).unwrap();
        let comp = compose_lefschetz(&outer, &inner).unwrap();
        let o = Oracle::default();
        let first = o.induced_space(&f.pointed(), s2.elements(), Some(&fa), None).unwrap().map;
        let second = o.induced_space(&first, s2.elements(), Some(&fb), None).unwrap().map;
        prop_assert_eq!(comp.eval(&cycle_profile(&f, 4)).unwrap(), BigInt::from(second.reduced_fixed_count()));
    }

    #[test]
    fn realized_functors_evaluate_to_multiples(
        c in prop::collection::vec((-3i64..=3, 1i64..=3), 7),
    ) {
        // monomials of weighted degree at most 3
        let monos = [[0u32, 0, 0], [1, 0, 0], [2, 0, 0], [0, 1, 0], [3, 0, 0], [1, 1, 0], [0, 0, 1]];
        let p = MultiPoly::from_terms(3, monos.iter().zip(&c).map(|(e, &(n, d))| (e.to_vec(), frac(n, d))));
        let (r, expr) = realize_polynomial(&p, 3).unwrap();
        let got = expr.evaluate().unwrap();
        let d = DoldProfile::from_i64(&[2, -1, 3]);
        prop_assert_eq!(big(got.eval(&d).unwrap_or_default()), p.eval_int(d.values()).unwrap() * big(r));
    }

    #[test]
    fn coefficient_identities_hold_at_random_profiles(d in prop::collection::vec(-3i64..=3, 4), n in -3i64..=3) {
        let l = if n <= 0 { Some(Bound::Finite((-n).max(1) as usize)) } else { None };
        let r = coefficient_identities_check(&DoldProfile::from_i64(&d), n, l, 4).unwrap();
        prop_assert!(r.pass, "{:?}", r.checks.iter().map(SeriesCheck::summary).collect::<Vec<_>>());
    }
}

#[test]
fn orbit_sum_polynomials_match_brute_force() {
    let o = Oracle::default();
    let maps = common::random_maps(3, 6, 4);
    for (name, g) in common::small_groups() {
        for k in common::small_gsets(&g, 4) {
            for f in &maps {
                let c = gsymm_check(f, &g, &k, None, &o).unwrap();
                assert!(c.pass, "{name}: {}", c.summary());
            }
        }
    }
}

#[test]
fn orbit_sum_examples() {
    let s2 = PermutationGroup::symmetric(2);
    let p = gsymm_polynomial(&s2, &GSet::regular(&s2), &CoefficientTraces::Trivial).unwrap();
    let want = (&(&t(2, 1).pow(2) + &t(2, 1)) + &t(2, 2).scale(&int(2))).scale(&frac(1, 2));
    assert_eq!(p.poly(), &want);
    let p = gsymm_polynomial(&s2, &GSet::natural(&s2), &CoefficientTraces::CyclePower(int(-1))).unwrap();
    let want = (&(&t(2, 1).pow(2) - &t(2, 1)) - &t(2, 2).scale(&int(2))).scale(&frac(1, 2));
    assert_eq!(p.poly(), &want);
}

#[test]
fn partition_polynomials_match_brute_force_with_coefficients() {
    let o = Oracle::default();
    let maps = common::random_maps(5, 4, 3);
    for k in 1..=3 {
        for g in [PermutationGroup::symmetric(k), PermutationGroup::cyclic(k), PermutationGroup::trivial(k)] {
            let ys = [GSet::trivial(&g, 1).pointed(), GSet::trivial(&g, 2).pointed(), GSet::natural(&g).pointed()];
            for fam in common::stable_families(&g) {
                for y in ys.iter().filter(|y| y.size() <= 4) {
                    for f in &maps {
                        let c = partition_check(f, &g, &fam, Some(y), &o).unwrap();
                        assert!(c.pass, "k={k} |G|={}: {}", g.order(), c.summary());
                    }
                }
            }
        }
    }
}

#[test]
fn tie_breaking_does_not_change_the_polynomial() {
    for k in 2..=4 {
        for g in [PermutationGroup::trivial(k), PermutationGroup::cyclic(k)] {
            let fams = common::stable_families(&g);
            for fam in fams.iter().step_by(if k == 4 { 97 } else { 1 }) {
                let base = general_lefschetz_polynomial(&g, fam, &CoefficientTraces::Trivial).unwrap();
                for seed in 0..4 {
                    assert_eq!(PartitionRecursion::seeded(seed).run(&g, fam, &CoefficientTraces::Trivial).unwrap(), base);
                }
            }
        }
    }
}

#[test]
fn every_recursion_node_is_additive_and_matches_brute_force() {
    let o = Oracle::default();
    let maps = common::random_maps(8, 5, 3);
    for k in 2..=3 {
        let g = PermutationGroup::symmetric(k);
        for fam in common::stable_families(&g) {
            let mut rec = PartitionRecursion::default();
            rec.run(&g, &fam, &CoefficientTraces::Trivial).unwrap();
            for e in rec.ledger() {
                let k = e.family.ground_size();
                assert_eq!(&e.result + &e.correction, e.extended);
                let mut ext: BTreeSet<SetPartition> = e.family.members().clone();
                ext.extend(e.perms.iter().map(|p| e.lambda.permute(p)));
                let ext = PartitionFamily::from_members(k, ext).unwrap();
                let action = GroupAction::new(k, e.perms.clone()).unwrap();
                let (_, blocks) = action.stabilizer_on_blocks(&e.lambda);
                let disc = PartitionFamily::discrete(e.lambda.num_blocks());
                for f in &maps {
                    let d = cycle_profile(f, k);
                    let count = |perms: &[Perm], fam: &PartitionFamily| {
                        big(o.induced_space(&f.pointed(), perms, Some(fam), None).unwrap().map.reduced_fixed_count().into())
                    };
                    assert_eq!(e.result.eval_int(d.values()).unwrap(), count(&e.perms, &e.family));
                    assert_eq!(e.extended.eval_int(d.values()).unwrap(), count(&e.perms, &ext));
                    assert_eq!(e.correction.eval_int(d.values()).unwrap(), count(&blocks, &disc));
                }
            }
        }
    }
}

#[test]
fn orbit_sums_are_multiplicative() {
    let pairs = [
        (PermutationGroup::symmetric(2), PermutationGroup::cyclic(3)),
        (PermutationGroup::cyclic(2), PermutationGroup::symmetric(2)),
        (PermutationGroup::trivial(1), PermutationGroup::symmetric(3)),
    ];
    for (g1, g2) in pairs {
        let prod = g1.direct_product(&g2);
        let d1 = g1.degree();
        // traces of the pointed natural G-sets, multiplied for the smash product
        let with_fixed = |g: &PermutationGroup| GSet::natural(g).disjoint_union(&GSet::trivial(g, 1)).pointed();
        let (y1, y2) = (with_fixed(&g1), with_fixed(&g2));
        let tr1 = |p: &Perm| int(y1.reduced_fixed_count(g1.index_of(p).unwrap()) as i64);
        let tr2 = |p: &Perm| int(y2.reduced_fixed_count(g2.index_of(p).unwrap()) as i64);
        let split = |p: &Perm| {
            let a = Perm::new(p.images()[..d1].to_vec()).unwrap();
            let b = Perm::new(p.images()[d1..].iter().map(|x| x - d1).collect()).unwrap();
            (a, b)
        };
        let traces: Vec<Rational> = prod.elements().iter().map(|p| { let (a, b) = split(p); tr1(&a) * tr2(&b) }).collect();
        let whole = gsymm_polynomial(&prod, &GSet::natural(&prod), &CoefficientTraces::Values(traces)).unwrap();
        let v1 = CoefficientTraces::Values(g1.elements().iter().map(tr1).collect());
        let v2 = CoefficientTraces::Values(g2.elements().iter().map(tr2).collect());
        let p1 = gsymm_polynomial(&g1, &GSet::natural(&g1), &v1).unwrap();
        let p2 = gsymm_polynomial(&g2, &GSet::natural(&g2), &v2).unwrap();
        let (a, b) = (whole.poly(), p1.smash(&p2).into_poly());
        let n = a.nvars().max(b.nvars());
        assert_eq!(a.with_nvars(n), b.with_nvars(n));
    }
}

#[test]
fn order_polynomial_is_the_first_variable_restriction() {
    for k in 1..=4 {
        for fam in common::closed_families(k).iter().step_by(if k == 4 { 13 } else { 1 }) {
            let p = general_lefschetz_polynomial(&PermutationGroup::trivial(k), fam, &CoefficientTraces::Trivial).unwrap();
            assert!(p.poly().used_vars() <= 1, "trivial group gives a polynomial in t_1 only: {p}");
            assert_eq!(p.poly().restrict_to_first(), order_polynomial(fam));
        }
    }
}

#[test]
fn coefficient_polynomials_match_brute_force() {
    let o = Oracle::default();
    for f in common::random_maps(21, 4, 3) {
        for n in 0..=2 {
            for c in coefficient_oracle_checks(&f, n, None, 3, &o).unwrap() {
                assert!(c.pass, "{}", c.summary());
            }
        }
    }
}
