#![allow(dead_code)]

use std::collections::BTreeSet;

use dold_zeta_core::dynamics::FiniteSelfMap;
use dold_zeta_core::partition::{GSet, PartitionFamily, Perm, PermutationGroup, SetPartition};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn random_maps(seed: u64, count: usize, max_n: usize) -> Vec<FiniteSelfMap> {
    use rand::Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(1..=max_n);
            FiniteSelfMap::random(n, &mut rng)
        })
        .collect()
}

/// Every nonempty refinement-closed family on a `k`-set.
pub fn closed_families(k: usize) -> Vec<PartitionFamily> {
    let mut all = SetPartition::enumerate_all(k).unwrap();
    // finest first, so every lower cover is decided before its cover
    all.sort_by_key(|p| std::cmp::Reverse(p.num_blocks()));
    let mut out = Vec::new();
    fn rec(i: usize, all: &[SetPartition], chosen: &mut BTreeSet<SetPartition>, k: usize, out: &mut Vec<PartitionFamily>) {
        if i == all.len() {
            if !chosen.is_empty() {
                out.push(PartitionFamily::from_members(k, chosen.clone()).unwrap());
            }
            return;
        }
        rec(i + 1, all, chosen, k, out);
        let p = &all[i];
        if p.lower_covers().iter().all(|c| chosen.contains(c)) {
            chosen.insert(p.clone());
            rec(i + 1, all, chosen, k, out);
            chosen.remove(p);
        }
    }
    rec(0, &all, &mut BTreeSet::new(), k, &mut out);
    out
}

pub fn stable_families(group: &PermutationGroup) -> Vec<PartitionFamily> {
    closed_families(group.degree()).into_iter().filter(|f| f.validate(Some(group)).is_ok()).collect()
}

fn perm(v: &[usize]) -> Perm {
    Perm::new(v.to_vec()).unwrap()
}

/// One permutation group for each isomorphism type of order at most 6.
pub fn small_groups() -> Vec<(&'static str, PermutationGroup)> {
    vec![
        ("1", PermutationGroup::trivial(1)),
        ("C2", PermutationGroup::cyclic(2)),
        ("C3", PermutationGroup::cyclic(3)),
        ("C4", PermutationGroup::cyclic(4)),
        ("V4", PermutationGroup::generated(4, &[perm(&[1, 0, 3, 2]), perm(&[2, 3, 0, 1])], 120).unwrap()),
        ("C5", PermutationGroup::cyclic(5)),
        ("C6", PermutationGroup::cyclic(6)),
        ("S3", PermutationGroup::symmetric(3)),
    ]
}

/// Index lists of all subgroups.
pub fn subgroups(group: &PermutationGroup) -> Vec<Vec<usize>> {
    let n = group.order();
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        if mask & 1 == 0 {
            continue;
        }
        let h: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        if h.iter().all(|&a| h.iter().all(|&b| mask >> group.mul(a, b) & 1 == 1)) {
            out.push(h);
        }
    }
    out
}

/// Disjoint unions of coset spaces with total size in `1..=max_size`.
pub fn small_gsets(group: &PermutationGroup, max_size: usize) -> Vec<GSet> {
    let transitive: Vec<GSet> = subgroups(group)
        .iter()
        .filter(|h| group.order() / h.len() <= max_size)
        .map(|h| GSet::cosets(group, h).unwrap())
        .collect();
    let mut out = Vec::new();
    fn rec(start: usize, cur: Option<GSet>, tr: &[GSet], max: usize, out: &mut Vec<GSet>) {
        for (i, t) in tr.iter().enumerate().skip(start) {
            let size = cur.as_ref().map_or(0, GSet::size) + t.size();
            if size > max {
                continue;
            }
            let next = match &cur {
                None => t.clone(),
                Some(c) => c.disjoint_union(t),
            };
            out.push(next.clone());
            rec(i, Some(next), tr, max, out);
        }
    }
    rec(0, None, &transitive, max_size, &mut out);
    out
}
