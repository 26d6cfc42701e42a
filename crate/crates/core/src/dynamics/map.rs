use std::fmt;

use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A self-map of `{0, .., n-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteSelfMap {
    map: Vec<usize>,
}

impl FiniteSelfMap {
    pub fn new(map: Vec<usize>) -> Result<Self> {
        let n = map.len();
        if let Some((i, &v)) = map.iter().enumerate().find(|(_, &v)| v >= n) {
            return Err(Error::InvalidMap(format!("entry {i} maps to {v}, outside 0..{n}")));
        }
        Ok(FiniteSelfMap { map })
    }

    pub fn identity(n: usize) -> Self {
        FiniteSelfMap { map: (0..n).collect() }
    }

    /// The cyclic permutation `i ↦ i + 1 mod n`.
    pub fn cycle(n: usize) -> Self {
        FiniteSelfMap { map: (0..n).map(|i| (i + 1) % n).collect() }
    }

    /// A permutation with `counts[m-1]` cycles of length `m`.
    pub fn with_cycle_counts(counts: &[usize]) -> Self {
        counts
            .iter()
            .enumerate()
            .flat_map(|(i, &c)| std::iter::repeat_n(i + 1, c))
            .fold(FiniteSelfMap::identity(0), |acc, m| acc.disjoint_union(&FiniteSelfMap::cycle(m)))
    }

    /// Uniformly random map on `n` points.
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        FiniteSelfMap { map: (0..n).map(|_| rng.gen_range(0..n)).collect() }
    }

    pub fn size(&self) -> usize {
        self.map.len()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.size() != other.size() {
            return Err(Error::InvalidMap(format!(
                "cannot compose maps on {} and {} points",
                self.size(),
                other.size()
            )));
        }
        Ok(FiniteSelfMap { map: other.map.iter().map(|&x| self.map[x]).collect() })
    }

    /// The `j`-th iterate; `j = 0` gives the identity.
    pub fn iterate(&self, j: usize) -> Self {
        let mut out = Self::identity(self.size());
        for _ in 0..j {
            out = self.compose(&out).expect("same size");
        }
        out
    }

    pub fn fixed_point_count(&self) -> usize {
        self.map.iter().enumerate().filter(|(i, &v)| *i == v).count()
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        self.map.iter().enumerate().filter(|(i, &v)| *i == v).map(|(i, _)| i).collect()
    }

    /// `self ⊔ other`, with `other`'s points shifted past `self`'s.
    pub fn disjoint_union(&self, other: &Self) -> Self {
        let n = self.size();
        let mut map = self.map.clone();
        map.extend(other.map.iter().map(|&x| x + n));
        FiniteSelfMap { map }
    }

    /// `f_+`: adjoin a fixed basepoint at index 0, shifting the rest by one.
    pub fn pointed(&self) -> PointedMap {
        let mut map = Vec::with_capacity(self.size() + 1);
        map.push(0);
        map.extend(self.map.iter().map(|&x| x + 1));
        PointedMap(FiniteSelfMap { map })
    }

    /// Lengths of the cycles of the functional graph, each listed once.
    pub fn cycle_lengths(&self) -> Vec<usize> {
        let n = self.size();
        // 0 = unvisited, 1 = on the current path, 2 = done
        let mut state = vec![0u8; n];
        let mut lengths = Vec::new();
        let mut path = Vec::new();
        for start in 0..n {
            if state[start] != 0 {
                continue;
            }
            path.clear();
            let mut x = start;
            while state[x] == 0 {
                state[x] = 1;
                path.push(x);
                x = self.map[x];
            }
            if state[x] == 1 {
                let pos = path.iter().position(|&p| p == x).expect("on path");
                lengths.push(path.len() - pos);
            }
            for &p in &path {
                state[p] = 2;
            }
        }
        lengths
    }
}

/// A self-map of a finite pointed set; the basepoint is index 0 and is fixed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PointedMap(FiniteSelfMap);

impl PointedMap {
    pub fn new(map: FiniteSelfMap) -> Result<Self> {
        if map.size() == 0 || map.apply(0) != 0 {
            return Err(Error::InvalidMap("pointed map must fix the basepoint 0".into()));
        }
        Ok(PointedMap(map))
    }

    pub fn inner(&self) -> &FiniteSelfMap {
        &self.0
    }

    /// Number of points including the basepoint.
    pub fn size(&self) -> usize {
        self.0.size()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.0.apply(x)
    }

    pub fn iterate(&self, j: usize) -> Self {
        PointedMap(self.0.iterate(j))
    }

    /// Fixed points other than the basepoint: the reduced Lefschetz number.
    pub fn reduced_fixed_count(&self) -> usize {
        self.0.fixed_point_count() - 1
    }
}

impl fmt::Display for FiniteSelfMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.map)
    }
}

#[derive(Serialize, Deserialize)]
struct MapJson {
    size: usize,
    map: Vec<usize>,
}

impl Serialize for FiniteSelfMap {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MapJson { size: self.size(), map: self.map.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for FiniteSelfMap {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = MapJson::deserialize(d)?;
        if j.size != j.map.len() {
            return Err(serde::de::Error::custom(format!(
                "size is {} but the map lists {} values",
                j.size,
                j.map.len()
            )));
        }
        FiniteSelfMap::new(j.map).map_err(serde::de::Error::custom)
    }
}
