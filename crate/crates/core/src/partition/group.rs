use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::set_partition::SetPartition;
use crate::error::{Error, Result};

/// Default limit on the order of a group generated by closure.
pub const DEFAULT_GROUP_CAP: usize = 120;

/// A permutation of `{0, .., n-1}`; `p[i]` is the image of `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || std::mem::replace(&mut seen[x], true) {
                return Err(Error::InvalidGroup(format!("{images:?} is not a permutation")));
            }
        }
        Ok(Perm(images))
    }

    pub fn identity(n: usize) -> Self {
        Perm((0..n).collect())
    }

    /// The transposition of `a` and `b`.
    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut p: Vec<usize> = (0..n).collect();
        p.swap(a, b);
        Perm(p)
    }

    /// `i ↦ i + 1 mod n`.
    pub fn rotation(n: usize) -> Self {
        Perm((0..n).map(|i| (i + 1) % n).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.0[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        Perm(other.0.iter().map(|&x| self.0[x]).collect())
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x] = i;
        }
        Perm(inv)
    }

    /// Orbit lengths, one per cycle, in order of least element.
    pub fn cycle_lengths(&self) -> Vec<usize> {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut len = 0;
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                x = self.0[x];
                len += 1;
            }
            out.push(len);
        }
        out
    }

    pub fn cycle_count(&self) -> usize {
        self.cycle_lengths().len()
    }

    /// `+1` or `-1`.
    pub fn sign(&self) -> i64 {
        let odd = self.cycle_lengths().iter().filter(|&&l| l % 2 == 0).count() % 2 == 1;
        if odd {
            -1
        } else {
            1
        }
    }

    /// `n ↦ d(n)`, the number of cycles of length `n`.
    pub fn cycle_data(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for l in self.cycle_lengths() {
            *m.entry(l).or_insert(0) += 1;
        }
        m
    }

    /// All permutations of `n` points in lexicographic order.
    pub fn all(n: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (0..n).collect();
        loop {
            out.push(Perm(cur.clone()));
            // next lexicographic permutation
            let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else { break };
            let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).expect("exists");
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
        out
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl Serialize for Perm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Perm {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Perm::new(Vec::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

/// A finite group of permutations stored as its full element list.
/// The identity is always element 0; the rest are sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermutationGroup {
    degree: usize,
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
}

impl PermutationGroup {
    fn from_set(degree: usize, set: BTreeSet<Perm>) -> Self {
        let id = Perm::identity(degree);
        let mut elements = vec![id.clone()];
        elements.extend(set.into_iter().filter(|p| *p != id));
        let index = elements.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        PermutationGroup { degree, elements, index }
    }

    /// Validates that `elements` is closed under composition and contains the identity.
    pub fn from_elements(degree: usize, elements: Vec<Perm>) -> Result<Self> {
        let set: BTreeSet<Perm> = elements.into_iter().collect();
        if let Some(p) = set.iter().find(|p| p.degree() != degree) {
            return Err(Error::InvalidGroup(format!("{p} does not have degree {degree}")));
        }
        if !set.contains(&Perm::identity(degree)) {
            return Err(Error::InvalidGroup("identity missing".into()));
        }
        for a in &set {
            for b in &set {
                let c = a.compose(b);
                if !set.contains(&c) {
                    return Err(Error::InvalidGroup(format!("{a} ∘ {b} = {c} is missing")));
                }
            }
        }
        Ok(Self::from_set(degree, set))
    }

    /// The group generated by `gens`; fails once its order would exceed `cap`.
    pub fn generated(degree: usize, gens: &[Perm], cap: usize) -> Result<Self> {
        if let Some(p) = gens.iter().find(|p| p.degree() != degree) {
            return Err(Error::InvalidGroup(format!("{p} does not have degree {degree}")));
        }
        let id = Perm::identity(degree);
        let mut set: BTreeSet<Perm> = BTreeSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in gens {
                let y = g.compose(&x);
                if set.insert(y.clone()) {
                    if set.len() > cap {
                        return Err(Error::TooLarge {
                            what: "group order".into(),
                            size: set.len() as u128,
                            limit: cap as u128,
                        });
                    }
                    queue.push_back(y);
                }
            }
        }
        Ok(Self::from_set(degree, set))
    }

    pub fn trivial(degree: usize) -> Self {
        Self::from_set(degree, BTreeSet::new())
    }

    pub fn symmetric(degree: usize) -> Self {
        Self::from_set(degree, Perm::all(degree).into_iter().collect())
    }

    /// Generated by the rotation `i ↦ i + 1`.
    pub fn cyclic(degree: usize) -> Self {
        let r = Perm::rotation(degree);
        let mut set = BTreeSet::new();
        let mut x = Perm::identity(degree);
        for _ in 0..degree.max(1) {
            x = r.compose(&x);
            set.insert(x.clone());
        }
        Self::from_set(degree, set)
    }

    /// `G × H` acting on the disjoint union of the two point sets.
    pub fn direct_product(&self, other: &Self) -> Self {
        let n = self.degree;
        let mut set = BTreeSet::new();
        for a in &self.elements {
            for b in &other.elements {
                let mut v = a.0.clone();
                v.extend(b.0.iter().map(|&x| x + n));
                set.insert(Perm(v));
            }
        }
        Self::from_set(n + other.degree, set)
    }

    /// The subgroup of elements indexed by `indices`, which must be closed.
    pub fn subgroup(&self, indices: &[usize]) -> Result<Self> {
        Self::from_elements(self.degree, indices.iter().map(|&i| self.elements[i].clone()).collect())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Perm {
        &self.elements[i]
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// Index of `g_i ∘ g_j`.
    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.index[&self.elements[i].compose(&self.elements[j])]
    }

    pub fn inv(&self, i: usize) -> usize {
        self.index[&self.elements[i].inverse()]
    }

    /// `d_g(n)`: number of `g`-orbits of length `n` on the points.
    pub fn cycle_data(&self, i: usize) -> BTreeMap<usize, usize> {
        self.elements[i].cycle_data()
    }

    /// Orbit of `lambda` and the indices of its stabilizer.
    pub fn orbit_and_stabilizer(&self, lambda: &SetPartition) -> Result<(Vec<SetPartition>, Vec<usize>)> {
        if lambda.ground_size() != self.degree {
            return Err(Error::GroundSizeMismatch { left: self.degree, right: lambda.ground_size() });
        }
        let orbit: BTreeSet<SetPartition> = self.elements.iter().map(|g| lambda.permute(g)).collect();
        let stab = (0..self.order()).filter(|&i| lambda.permute(&self.elements[i]) == *lambda).collect();
        Ok((orbit.into_iter().collect(), stab))
    }

    /// The action, as a list with one permutation per element.
    pub fn action(&self) -> GroupAction {
        GroupAction { degree: self.degree, perms: self.elements.clone() }
    }
}

/// A group acting on a finite set through a possibly non-faithful action:
/// one permutation per group element, repeats allowed. Averages over the
/// list are averages over the group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupAction {
    degree: usize,
    perms: Vec<Perm>,
}

impl GroupAction {
    pub fn new(degree: usize, perms: Vec<Perm>) -> Result<Self> {
        if perms.is_empty() {
            return Err(Error::InvalidGroup("empty action list".into()));
        }
        if let Some(p) = perms.iter().find(|p| p.degree() != degree) {
            return Err(Error::InvalidGroup(format!("{p} does not have degree {degree}")));
        }
        Ok(GroupAction { degree, perms })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Size of the acting group.
    pub fn len(&self) -> usize {
        self.perms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perms.is_empty()
    }

    pub fn perms(&self) -> &[Perm] {
        &self.perms
    }

    /// Distinct permutations in the image.
    pub fn image(&self) -> BTreeSet<Perm> {
        self.perms.iter().cloned().collect()
    }

    /// Indices of list entries fixing `lambda`, and the induced action of
    /// each on the blocks of `lambda` (in canonical block order).
    pub fn stabilizer_on_blocks(&self, lambda: &SetPartition) -> (Vec<usize>, Vec<Perm>) {
        let lab = lambda.labels();
        let mut idx = Vec::new();
        let mut acts = Vec::new();
        for (i, g) in self.perms.iter().enumerate() {
            if lambda.permute(g) == *lambda {
                idx.push(i);
                acts.push(Perm(lambda.blocks().iter().map(|b| lab[g.apply(b[0])]).collect()));
            }
        }
        (idx, acts)
    }
}

/// A finite set with an action of a [`PermutationGroup`], one permutation per
/// group element in the group's element order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GSet {
    size: usize,
    action: Vec<Perm>,
}

impl GSet {
    /// Checks that `action` is a homomorphism from `group`.
    pub fn new(group: &PermutationGroup, size: usize, action: Vec<Perm>) -> Result<Self> {
        if action.len() != group.order() {
            return Err(Error::InvalidGroup(format!(
                "action lists {} permutations for a group of order {}",
                action.len(),
                group.order()
            )));
        }
        if let Some(p) = action.iter().find(|p| p.degree() != size) {
            return Err(Error::InvalidGroup(format!("{p} does not act on {size} points")));
        }
        for i in 0..group.order() {
            for j in 0..group.order() {
                if action[group.mul(i, j)] != action[i].compose(&action[j]) {
                    return Err(Error::InvalidGroup(format!(
                        "action is not a homomorphism at elements {i}, {j}"
                    )));
                }
            }
        }
        Ok(GSet { size, action })
    }

    /// The defining action on the group's own points.
    pub fn natural(group: &PermutationGroup) -> Self {
        GSet { size: group.degree(), action: group.elements().to_vec() }
    }

    /// One point, acted on trivially.
    pub fn point(group: &PermutationGroup) -> Self {
        Self::trivial(group, 1)
    }

    pub fn trivial(group: &PermutationGroup, size: usize) -> Self {
        GSet { size, action: vec![Perm::identity(size); group.order()] }
    }

    /// Left multiplication on the group itself.
    pub fn regular(group: &PermutationGroup) -> Self {
        let n = group.order();
        let action = (0..n).map(|g| Perm((0..n).map(|h| group.mul(g, h)).collect())).collect();
        GSet { size: n, action }
    }

    /// Left multiplication on the cosets `G/H`, `H` given by element indices.
    pub fn cosets(group: &PermutationGroup, subgroup: &[usize]) -> Result<Self> {
        group.subgroup(subgroup)?;
        let n = group.order();
        let mut label = vec![usize::MAX; n];
        let mut count = 0;
        for g in 0..n {
            if label[g] != usize::MAX {
                continue;
            }
            for &h in subgroup {
                label[group.mul(g, h)] = count;
            }
            count += 1;
        }
        let mut reps = vec![0; count];
        for g in (0..n).rev() {
            reps[label[g]] = g;
        }
        let action =
            (0..n).map(|g| Perm(reps.iter().map(|&r| label[group.mul(g, r)]).collect())).collect();
        Ok(GSet { size: count, action })
    }

    /// `self ⊔ other`, with `other`'s points after `self`'s.
    pub fn disjoint_union(&self, other: &Self) -> Self {
        let n = self.size;
        let action = self
            .action
            .iter()
            .zip(&other.action)
            .map(|(a, b)| {
                let mut v = a.0.clone();
                v.extend(b.0.iter().map(|&x| x + n));
                Perm(v)
            })
            .collect();
        GSet { size: n + other.size, action }
    }

    /// `self` with a fixed basepoint adjoined at index 0.
    pub fn pointed(&self) -> Self {
        let action = self
            .action
            .iter()
            .map(|a| {
                let mut v = vec![0];
                v.extend(a.0.iter().map(|&x| x + 1));
                Perm(v)
            })
            .collect();
        GSet { size: self.size + 1, action }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn action(&self) -> &[Perm] {
        &self.action
    }

    pub fn act(&self, g: usize, x: usize) -> usize {
        self.action[g].apply(x)
    }

    /// Whether index 0 is fixed by every element.
    pub fn fixes_basepoint(&self) -> bool {
        self.size > 0 && self.action.iter().all(|p| p.apply(0) == 0)
    }

    /// Number of non-basepoint points fixed by element `g`.
    pub fn reduced_fixed_count(&self, g: usize) -> usize {
        (1..self.size).filter(|&y| self.act(g, y) == y).count()
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum GroupJson {
    Elements { degree: usize, elements: Vec<Perm> },
    Generators { degree: usize, generators: Vec<Perm> },
}

#[derive(Serialize)]
struct GroupOut<'a> {
    degree: usize,
    elements: &'a [Perm],
}

impl Serialize for PermutationGroup {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GroupOut { degree: self.degree, elements: &self.elements }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for PermutationGroup {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = match GroupJson::deserialize(d)? {
            GroupJson::Elements { degree, elements } => {
                if elements.len() > DEFAULT_GROUP_CAP {
                    Err(Error::TooLarge {
                        what: "group order".into(),
                        size: elements.len() as u128,
                        limit: DEFAULT_GROUP_CAP as u128,
                    })
                } else {
                    PermutationGroup::from_elements(degree, elements)
                }
            }
            GroupJson::Generators { degree, generators } => {
                PermutationGroup::generated(degree, &generators, DEFAULT_GROUP_CAP)
            }
        };
        r.map_err(serde::de::Error::custom)
    }
}

/// JSON form `{"size": k, "action": {"0": [perm], ..}}`; needs the group to validate.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GSetJson {
    pub size: usize,
    pub action: BTreeMap<String, Perm>,
}

impl GSetJson {
    pub fn into_gset(self, group: &PermutationGroup) -> Result<GSet> {
        let mut action = Vec::with_capacity(group.order());
        for i in 0..group.order() {
            let p = self
                .action
                .get(&i.to_string())
                .ok_or_else(|| Error::InvalidGroup(format!("no action given for element {i}")))?;
            action.push(p.clone());
        }
        if self.action.len() != group.order() {
            return Err(Error::InvalidGroup("action keys must be 0..order".into()));
        }
        GSet::new(group, self.size, action)
    }
}

impl From<&GSet> for GSetJson {
    fn from(g: &GSet) -> Self {
        GSetJson {
            size: g.size,
            action: g.action.iter().cloned().enumerate().map(|(i, p)| (i.to_string(), p)).collect(),
        }
    }
}
