//! Brute-force fixed-point counts of the maps induced by a finite self-map
//! on symmetric powers, subset spaces, tuple spaces and partition-constrained
//! orbit spaces. Every count comes from explicit enumeration.

mod bound;

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;

use crate::dynamics::{FiniteSelfMap, PointedMap};
use crate::error::{Error, Result};
use crate::partition::{GSet, PartitionFamily, Perm, PermutationGroup, SetPartition};

pub use bound::Bound;

/// Default cap on the size of an enumeration.
pub const DEFAULT_MAX_ENUM: u128 = 10_000_000;

/// Brute-force counter with a limit on enumeration size.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Oracle {
    pub max_enum: u128,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle { max_enum: DEFAULT_MAX_ENUM }
    }
}

/// The orbit space of an induced map, as a pointed finite set.
#[derive(Clone, Debug)]
pub struct InducedSpace {
    /// One representative `(a, y)` per orbit; index `i` is point `i + 1`.
    pub representatives: Vec<(Vec<usize>, usize)>,
    /// The induced self-map; point 0 is the basepoint.
    pub map: PointedMap,
    /// Fixed orbits counted by averaging over the group.
    pub burnside_fixed: BigInt,
}

fn ipow(b: u128, e: usize) -> u128 {
    (0..e).fold(1u128, |acc, _| acc.saturating_mul(b))
}

fn binom(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

impl Oracle {
    pub fn new(max_enum: u128) -> Self {
        Oracle { max_enum }
    }

    fn guard(&self, what: &str, size: u128) -> Result<()> {
        if size > self.max_enum {
            return Err(Error::TooLarge { what: what.into(), size, limit: self.max_enum });
        }
        Ok(())
    }

    /// Multisets of size `k` on the points, multiplicities at most `l`,
    /// invariant under pushforward: `m_y = Σ_{f(x) = y} m_x`.
    pub fn fixed_bounded_multisets(&self, f: &FiniteSelfMap, k: usize, l: Bound) -> Result<BigInt> {
        let n = f.size();
        let l = l.normalized(k);
        self.guard("multiset enumeration", binom((n + k).saturating_sub(1) as u128, k as u128))?;
        let mut m = vec![0usize; n];
        let mut count = 0u64;
        fn rec(i: usize, left: usize, l: usize, m: &mut Vec<usize>, f: &FiniteSelfMap, count: &mut u64) {
            if i == m.len() {
                if left == 0 {
                    let mut push = vec![0usize; m.len()];
                    for (x, &c) in m.iter().enumerate() {
                        push[f.apply(x)] += c;
                    }
                    if push == *m {
                        *count += 1;
                    }
                }
                return;
            }
            for c in 0..=l.min(left) {
                m[i] = c;
                rec(i + 1, left - c, l, m, f, count);
            }
            m[i] = 0;
        }
        if k == 0 {
            return Ok(BigInt::from(1));
        }
        rec(0, k, l, &mut m, f, &mut count);
        Ok(BigInt::from(count))
    }

    /// Nonempty subsets `A` with `|A| ≤ k` and `f(A) = A`.
    pub fn fixed_invariant_subsets(&self, f: &FiniteSelfMap, k: usize) -> Result<BigInt> {
        let n = f.size();
        let size: u128 = (1..=k.min(n)).map(|j| binom(n as u128, j as u128)).sum();
        self.guard("subset enumeration", size)?;
        let mut count = 0u64;
        let mut chosen = Vec::new();
        fn rec(start: usize, k: usize, ch: &mut Vec<usize>, f: &FiniteSelfMap, count: &mut u64) {
            if !ch.is_empty() {
                let a: BTreeSet<usize> = ch.iter().copied().collect();
                let image: BTreeSet<usize> = ch.iter().map(|&x| f.apply(x)).collect();
                if a == image {
                    *count += 1;
                }
            }
            if ch.len() == k {
                return;
            }
            for x in start..f.size() {
                ch.push(x);
                rec(x + 1, k, ch, f, count);
                ch.pop();
            }
        }
        rec(0, k, &mut chosen, f, &mut count);
        Ok(BigInt::from(count))
    }

    /// Tuples `x ∈ M^k` with `f(x_i) = x_i` for all `i` and no value repeated
    /// more than `l` times, by enumeration of all of `M^k`.
    pub fn fixed_bounded_tuples(&self, f: &FiniteSelfMap, k: usize, l: Bound) -> Result<BigInt> {
        let n = f.size();
        self.guard("tuple enumeration", ipow(n as u128, k))?;
        if k == 0 {
            return Ok(BigInt::from(1));
        }
        if n == 0 {
            return Ok(BigInt::from(0));
        }
        let mut count = 0u64;
        let mut digits = vec![0usize; k];
        loop {
            if digits.iter().all(|&x| f.apply(x) == x) {
                let mut mult = vec![0usize; n];
                for &x in &digits {
                    mult[x] += 1;
                }
                if mult.iter().all(|&c| l.allows(c)) {
                    count += 1;
                }
            }
            if !next_digits(&mut digits, n) {
                break;
            }
        }
        Ok(BigInt::from(count))
    }

    /// Fixed points, away from the basepoint, of the map induced by `f_+` on
    /// the orbit space of pairs `(a: K → M, y)` with `a`'s fibre partition in
    /// `family` and `y` a non-basepoint of `coefficients`. `K` carries the
    /// natural action of `group`.
    pub fn fixed_partition_orbits(
        &self,
        f: &FiniteSelfMap,
        group: &PermutationGroup,
        family: &PartitionFamily,
        coefficients: Option<&GSet>,
    ) -> Result<BigInt> {
        if family.ground_size() != group.degree() {
            return Err(Error::GroundSizeMismatch { left: group.degree(), right: family.ground_size() });
        }
        let space = self.induced_space(&f.pointed(), group.elements(), Some(family), coefficients)?;
        Ok(BigInt::from(space.map.reduced_fixed_count()))
    }

    /// Fixed points of the map induced by `f` on `map(K, M) / G`, `K` a
    /// `G`-set. Counted both over orbits and by averaging over `G`.
    pub fn fixed_gmap_space(&self, f: &FiniteSelfMap, group: &PermutationGroup, k: &GSet) -> Result<BigInt> {
        if k.action().len() != group.order() {
            return Err(Error::InvalidGroup("G-set is not aligned with the group".into()));
        }
        let space = self.induced_space(&f.pointed(), k.action(), None, None)?;
        Ok(BigInt::from(space.map.reduced_fixed_count()))
    }

    /// The induced pointed map on orbits of `(a, y)`, `a: K → X - {*}`
    /// with fibre partition in `family` (any, if `None`), under the group
    /// whose elements act on `K` by `k_action` and on the coefficients by the
    /// aligned action of `coefficients`. A pair goes to the basepoint when
    /// `f ∘ a` hits the basepoint or leaves the family.
    pub fn induced_space(
        &self,
        f: &PointedMap,
        k_action: &[Perm],
        family: Option<&PartitionFamily>,
        coefficients: Option<&GSet>,
    ) -> Result<InducedSpace> {
        let k = k_action.first().map(Perm::degree).ok_or_else(|| Error::InvalidGroup("empty group".into()))?;
        let order = k_action.len();
        if let Some(fam) = family {
            if fam.ground_size() != k {
                return Err(Error::GroundSizeMismatch { left: k, right: fam.ground_size() });
            }
        }
        let y_size = match coefficients {
            Some(y) => {
                if y.action().len() != order {
                    return Err(Error::InvalidGroup("coefficient action is not aligned with the group".into()));
                }
                if !y.fixes_basepoint() {
                    return Err(Error::InvalidGroup("coefficient action must fix the basepoint".into()));
                }
                y.size() - 1
            }
            None => 1,
        };
        let m = f.size() - 1;
        let total = ipow(m as u128, k).saturating_mul(y_size as u128);
        self.guard("orbit enumeration", total)?;
        let total = total as usize;

        let decode = |code: usize| -> (Vec<usize>, usize) {
            let (mut rest, yi) = code.div_rem(&y_size);
            let mut a = vec![0; k];
            for slot in a.iter_mut() {
                let (q, r) = rest.div_rem(&m);
                *slot = r;
                rest = q;
            }
            (a, yi)
        };
        let encode = |a: &[usize], yi: usize| -> usize { a.iter().rev().fold(0, |acc, &x| acc * m + x) * y_size + yi };
        let valid = |a: &[usize]| family.is_none_or(|fam| fam.contains(&SetPartition::from_labels(a)));
        // g · (a, y) = (a ∘ g⁻¹, g y)
        let inverses: Vec<Perm> = k_action.iter().map(Perm::inverse).collect();
        let act = |g: usize, a: &[usize], yi: usize| -> (Vec<usize>, usize) {
            let b = (0..k).map(|x| a[inverses[g].apply(x)]).collect();
            let z = coefficients.map_or(0, |y| y.act(g, yi + 1) - 1);
            (b, z)
        };
        // f on non-basepoint coordinates, `None` at the basepoint
        let push = |a: &[usize]| -> Option<Vec<usize>> {
            a.iter().map(|&x| f.apply(x + 1).checked_sub(1)).collect::<Option<Vec<_>>>().filter(|b| valid(b))
        };

        let mut parent: Vec<u32> = (0..total as u32).collect();
        fn find(p: &mut [u32], mut x: u32) -> u32 {
            while p[x as usize] != x {
                p[x as usize] = p[p[x as usize] as usize];
                x = p[x as usize];
            }
            x
        }
        let mut is_valid = vec![false; total];
        for code in 0..total {
            let (a, yi) = decode(code);
            if !valid(&a) {
                continue;
            }
            is_valid[code] = true;
            for g in 0..order {
                let (b, z) = act(g, &a, yi);
                let (r, s) = (find(&mut parent, code as u32), find(&mut parent, encode(&b, z) as u32));
                if r != s {
                    parent[r.max(s) as usize] = r.min(s);
                }
            }
        }
        let mut point_of = vec![0usize; total];
        let mut representatives = Vec::new();
        for code in 0..total {
            if is_valid[code] && find(&mut parent, code as u32) as usize == code {
                representatives.push(decode(code));
                point_of[code] = representatives.len();
            }
        }
        let mut image = vec![0usize];
        for (a, yi) in &representatives {
            image.push(match push(a) {
                Some(b) => point_of[find(&mut parent, encode(&b, *yi) as u32) as usize],
                None => 0,
            });
        }
        let map = PointedMap::new(FiniteSelfMap::new(image)?)?;

        // Burnside: (1/|G|) Σ_g #{(a, y) : F(a, y) = g · (a, y)}
        let mut pairs = 0u128;
        for code in (0..total).filter(|&c| is_valid[c]) {
            let (a, yi) = decode(code);
            if let Some(b) = push(&a) {
                pairs += (0..order).filter(|&g| act(g, &a, yi) == (b.clone(), yi)).count() as u128;
            }
        }
        if pairs % order as u128 != 0 {
            return Err(Error::Invariant(format!("group average {pairs}/{order} is not an integer")));
        }
        let burnside_fixed = BigInt::from(pairs / order as u128);
        if burnside_fixed != BigInt::from(map.reduced_fixed_count()) {
            return Err(Error::Invariant(format!(
                "orbit count {} disagrees with group average {}",
                map.reduced_fixed_count(),
                burnside_fixed
            )));
        }
        Ok(InducedSpace { representatives, map, burnside_fixed })
    }
}

/// Mixed-radix increment over `{0..n-1}^len`; false after the last tuple.
fn next_digits(d: &mut [usize], n: usize) -> bool {
    for x in d.iter_mut() {
        *x += 1;
        if *x < n {
            return true;
        }
        *x = 0;
    }
    false
}

/// `N^{∧K}` for a pointed set `N` with `n` non-basepoints: the smash power
/// indexed by the points of `K`, with `G` permuting coordinates. Element `g`
/// fixes `n^{c(g)}` non-basepoints, `c(g)` its number of cycles on `K`.
pub fn smash_power(group: &PermutationGroup, n: usize) -> Result<GSet> {
    let k = group.degree();
    let size = ipow(n as u128, k);
    if size >= u32::MAX as u128 {
        return Err(Error::TooLarge { what: "smash power".into(), size, limit: u32::MAX as u128 });
    }
    let size = size as usize;
    let action = group
        .elements()
        .iter()
        .map(|g| {
            let mut img = vec![0usize];
            let mut digits = vec![0usize; k];
            for _ in 0..size {
                // coordinate x of g·y is y at g⁻¹(x), i.e. y's coordinate x lands at g(x)
                let mut moved = vec![0usize; k];
                for (x, &v) in digits.iter().enumerate() {
                    moved[g.apply(x)] = v;
                }
                img.push(1 + moved.iter().rev().fold(0, |acc, &v| acc * n + v));
                next_digits(&mut digits, n);
            }
            Perm::new(img).expect("coordinate permutation")
        })
        .collect();
    GSet::new(group, size + 1, action)
}
