use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::lefschetz::{trim, LefschetzPolynomial};
use crate::dynamics::divisors;
use crate::error::{Error, Result};
use crate::partition::{
    minimal_excluded_step, GSet, GroupAction, PartitionFamily, Perm, PermutationGroup, SetPartition, TieBreak,
};
use crate::series::rational::int;
use crate::series::{MultiPoly, Poly, Rational};

/// Lefschetz numbers of the group elements on the coefficient space.
#[derive(Clone, Debug)]
pub enum CoefficientTraces {
    /// No coefficient space: every trace is 1.
    Trivial,
    /// One value per group element, in the group's element order.
    Values(Vec<Rational>),
    /// `n^{c(g)}` with `c(g)` the number of cycles of `g` on its points:
    /// the smash power of a coefficient space of reduced Euler characteristic `n`.
    CyclePower(Rational),
    /// Reduced fixed-point counts on a pointed finite `G`-set.
    Space(GSet),
}

impl CoefficientTraces {
    pub fn resolve(&self, group: &PermutationGroup) -> Result<Vec<Rational>> {
        let n = group.order();
        Ok(match self {
            CoefficientTraces::Trivial => vec![Rational::one(); n],
            CoefficientTraces::Values(v) => {
                if v.len() != n {
                    return Err(Error::InvalidGroup(format!(
                        "{} coefficient traces for a group of order {n}",
                        v.len()
                    )));
                }
                v.clone()
            }
            CoefficientTraces::CyclePower(x) => group
                .elements()
                .iter()
                .map(|g| num_traits::pow(x.clone(), g.cycle_count()))
                .collect(),
            CoefficientTraces::Space(y) => {
                if y.action().len() != n || !y.fixes_basepoint() {
                    return Err(Error::InvalidGroup(
                        "coefficient space must be a pointed G-set aligned with the group".into(),
                    ));
                }
                (0..n).map(|g| int(y.reduced_fixed_count(g) as i64)).collect()
            }
        })
    }
}

/// `Σ_{m | n} m t_m`: the number of fixed points of `f^n`, in `nvars` variables.
fn fix_count_poly(n: usize, nvars: usize) -> MultiPoly {
    divisors(n)
        .into_iter()
        .fold(MultiPoly::zero(nvars), |acc, m| &acc + &MultiPoly::var(nvars, m - 1).scale(&int(m as i64)))
}

/// `(1/|G|) Σ_g λ(g) Π_{g-orbits C on K} (Σ_{m | |C|} m t_m)` over an action
/// list with aligned traces.
fn gsymm_raw(perms: &[Perm], traces: &[Rational], k: usize) -> MultiPoly {
    let mut by_type: BTreeMap<Vec<usize>, Rational> = BTreeMap::new();
    for (p, tr) in perms.iter().zip(traces) {
        let mut ty = p.cycle_lengths();
        ty.sort_unstable();
        *by_type.entry(ty).or_insert_with(Rational::zero) += tr;
    }
    let nvars = k;
    let mut acc = MultiPoly::zero(nvars);
    for (ty, w) in by_type {
        if w.is_zero() {
            continue;
        }
        let term = ty.iter().fold(MultiPoly::one(nvars), |m, &n| &m * &fix_count_poly(n, nvars));
        acc = &acc + &term.scale(&w);
    }
    acc.scale(&Rational::new(1.into(), (perms.len() as i64).into()))
}

/// The polynomial of `map(K, X)/G` with coefficients: `K` a `G`-set.
pub fn gsymm_polynomial(
    group: &PermutationGroup,
    k: &GSet,
    traces: &CoefficientTraces,
) -> Result<LefschetzPolynomial> {
    if k.action().len() != group.order() {
        return Err(Error::InvalidGroup("G-set is not aligned with the group".into()));
    }
    let tr = traces.resolve(group)?;
    LefschetzPolynomial::new(gsymm_raw(k.action(), &tr, k.size()), k.size())
}

/// One node of the recursion: `L(family ∪ Gλ) = L(family) + L(correction)`.
#[derive(Clone, Debug)]
pub struct LedgerEntry {
    pub perms: Vec<Perm>,
    pub traces: Vec<Rational>,
    pub family: PartitionFamily,
    pub lambda: SetPartition,
    pub extended: MultiPoly,
    pub correction: MultiPoly,
    pub result: MultiPoly,
}

type MemoKey = (Vec<(Perm, Rational)>, usize, PartitionFamily);

/// Evaluates partition functors by repeatedly adjoining the orbit of a
/// minimal excluded partition until the family is everything.
pub struct PartitionRecursion {
    tie: TieBreak,
    memo: BTreeMap<MemoKey, MultiPoly>,
    ledger: Vec<LedgerEntry>,
}

impl Default for PartitionRecursion {
    fn default() -> Self {
        Self::new(TieBreak::CanonicalLeast)
    }
}

impl PartitionRecursion {
    pub fn new(tie: TieBreak) -> Self {
        PartitionRecursion { tie, memo: BTreeMap::new(), ledger: Vec::new() }
    }

    /// Random choice among minimal excluded partitions from a seed.
    pub fn seeded(seed: u64) -> Self {
        Self::new(TieBreak::Random(ChaCha8Rng::seed_from_u64(seed)))
    }

    pub fn ledger(&self) -> &[LedgerEntry] {
        &self.ledger
    }

    /// `L` of the functor `X ↦ (X^K restricted to fibre partitions in family) × Y / G`.
    pub fn run(
        &mut self,
        group: &PermutationGroup,
        family: &PartitionFamily,
        traces: &CoefficientTraces,
    ) -> Result<LefschetzPolynomial> {
        if family.ground_size() != group.degree() {
            return Err(Error::GroundSizeMismatch { left: group.degree(), right: family.ground_size() });
        }
        family.validate(Some(group))?;
        let tr = traces.resolve(group)?;
        let poly = self.solve(&group.action(), &tr, family)?;
        LefschetzPolynomial::new(trim(poly.with_nvars(family.ground_size()).clone()), family.ground_size())
    }

    /// The same over an action list, which may be non-faithful.
    pub fn run_action(
        &mut self,
        action: &GroupAction,
        traces: &[Rational],
        family: &PartitionFamily,
    ) -> Result<MultiPoly> {
        if traces.len() != action.len() {
            return Err(Error::InvalidGroup("traces not aligned with the action".into()));
        }
        family.check_stable(action)?;
        self.solve(action, traces, family)
    }

    fn solve(&mut self, action: &GroupAction, traces: &[Rational], family: &PartitionFamily) -> Result<MultiPoly> {
        let k = family.ground_size();
        if family.is_everything() {
            return Ok(gsymm_raw(action.perms(), traces, k));
        }
        let mut key_items: Vec<(Perm, Rational)> =
            action.perms().iter().cloned().zip(traces.iter().cloned()).collect();
        key_items.sort();
        let key = (key_items, k, family.clone());
        if let Some(p) = self.memo.get(&key) {
            return Ok(p.clone());
        }
        let step = minimal_excluded_step(family, action, &mut self.tie)?;
        let extended = self.solve(action, traces, &step.extended)?;
        let sub_traces: Vec<Rational> = step.stabilizer.iter().map(|&i| traces[i].clone()).collect();
        let discrete = PartitionFamily::discrete(step.lambda.num_blocks());
        let correction = self.solve(&step.block_action, &sub_traces, &discrete)?.with_nvars(k);
        let extended = extended.with_nvars(k);
        let result = &extended - &correction;
        self.ledger.push(LedgerEntry {
            perms: action.perms().to_vec(),
            traces: traces.to_vec(),
            family: family.clone(),
            lambda: step.lambda,
            extended,
            correction,
            result: result.clone(),
        });
        self.memo.insert(key, result.clone());
        Ok(result)
    }
}

/// `L` of the partition functor for `(G, K, family)` with coefficient traces,
/// using the canonical tie-break.
pub fn general_lefschetz_polynomial(
    group: &PermutationGroup,
    family: &PartitionFamily,
    traces: &CoefficientTraces,
) -> Result<LefschetzPolynomial> {
    PartitionRecursion::default().run(group, family, traces)
}

/// `ℓ(t) = Σ_r n_r t(t-1)..(t-r+1)`, `n_r` the number of members with `r` blocks.
pub fn order_polynomial(family: &PartitionFamily) -> Poly {
    block_counts_polynomial(&family.block_counts())
}

pub fn block_counts_polynomial(n: &[usize]) -> Poly {
    n.iter().enumerate().fold(Poly::zero(), |acc, (r, &c)| {
        &acc + &Poly::falling_factorial(r).scale(&int(c as i64))
    })
}

/// Block counts of a product family `ℒ_1 × ℒ_2` on `K_1 ⊔ K_2`: the
/// convolution of the two count vectors.
pub fn disjoint_union_counts(n1: &[usize], n2: &[usize]) -> Vec<usize> {
    if n1.is_empty() || n2.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; n1.len() + n2.len() - 1];
    for (i, a) in n1.iter().enumerate() {
        for (j, b) in n2.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    out
}

/// Order polynomial of a product family from the factors' block counts.
pub fn disjoint_union_combine(n1: &[usize], n2: &[usize]) -> Poly {
    block_counts_polynomial(&disjoint_union_counts(n1, n2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::rational::frac;

    fn t(n: usize, i: usize) -> MultiPoly {
        MultiPoly::var(n, i - 1)
    }

    #[test]
    fn gsymm_examples() {
        let triv = PermutationGroup::trivial(3);
        let p = gsymm_polynomial(&triv, &GSet::natural(&triv), &CoefficientTraces::Trivial).unwrap();
        assert_eq!(p.poly(), &t(3, 1).pow(3).with_nvars(3));
        let s2 = PermutationGroup::symmetric(2);
        let p = gsymm_polynomial(&s2, &GSet::regular(&s2), &CoefficientTraces::Trivial).unwrap();
        let expect = (&(&t(2, 1).pow(2) + &t(2, 1)) + &t(2, 2).scale(&int(2))).scale(&frac(1, 2));
        assert_eq!(p.poly(), &expect);
        let tr = CoefficientTraces::Values(vec![int(1), int(-1)]);
        let p = gsymm_polynomial(&s2, &GSet::regular(&s2), &tr).unwrap();
        let expect = (&(&t(2, 1).pow(2) - &t(2, 1)) - &t(2, 2).scale(&int(2))).scale(&frac(1, 2));
        assert_eq!(p.poly(), &expect);
        // n = -1 through the cycle-power traces gives the same
        let p2 = gsymm_polynomial(&s2, &GSet::natural(&s2), &CoefficientTraces::CyclePower(int(-1))).unwrap();
        assert_eq!(p2.poly(), &expect);
    }

    #[test]
    fn recursion_examples() {
        let s2 = PermutationGroup::symmetric(2);
        let fam = PartitionFamily::max_block(2, 1).unwrap();
        let p = general_lefschetz_polynomial(&s2, &fam, &CoefficientTraces::Trivial).unwrap();
        let expect = (&(&t(2, 1).pow(2) - &t(2, 1)) + &t(2, 2).scale(&int(2))).scale(&frac(1, 2));
        assert_eq!(p.poly(), &expect);
        assert_eq!(p.eval_slice(&[2.into(), 0.into()]).unwrap(), 1.into());
        let triv = PermutationGroup::trivial(2);
        let p = general_lefschetz_polynomial(&triv, &PartitionFamily::discrete(2), &CoefficientTraces::Trivial)
            .unwrap();
        assert_eq!(p.poly(), &(&t(1, 1).pow(2) - &t(1, 1)));
        let all = PartitionFamily::all(3).unwrap();
        let s3 = PermutationGroup::symmetric(3);
        let a = general_lefschetz_polynomial(&s3, &all, &CoefficientTraces::Trivial).unwrap();
        let b = gsymm_polynomial(&s3, &GSet::natural(&s3), &CoefficientTraces::Trivial).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn order_polynomials() {
        assert_eq!(order_polynomial(&PartitionFamily::all(2).unwrap()), Poly::from_ints(&[0, 0, 1]));
        let inj = order_polynomial(&PartitionFamily::max_block(3, 1).unwrap());
        assert_eq!(inj.eval(&int(3)), int(6));
        // refinements of {K_1, K_2}, |K_i| = j
        for j in 1..=3usize {
            let k1: Vec<usize> = (0..j).collect();
            let k2: Vec<usize> = (j..2 * j).collect();
            let pi = SetPartition::new(2 * j, vec![k1, k2]).unwrap();
            let l = order_polynomial(&PartitionFamily::refinements_of(&pi).unwrap());
            assert_eq!(l.eval(&int(1)), int(0));
            assert_eq!(l.eval(&int(2)), int(2));
            if j >= 2 {
                assert_eq!(l.eval(&int(3)), int(6 * ((1 << j) - 1)));
            }
            let nj = PartitionFamily::all(j).unwrap().block_counts();
            assert_eq!(disjoint_union_combine(&nj, &nj), l);
        }
    }
}
