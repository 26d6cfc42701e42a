use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::group::Perm;
use crate::error::{Error, Result};

/// Largest ground set for which the full partition lattice is materialized.
pub const MAX_LATTICE_SIZE: usize = 8;

/// A partition of `{0, .., k-1}` in canonical form: elements sorted within
/// blocks, blocks sorted by their minimum.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    blocks: Vec<Vec<usize>>,
    ground: usize,
}

impl SetPartition {
    pub fn new(ground: usize, mut blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; ground];
        for b in &blocks {
            if b.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            for &x in b {
                if x >= ground {
                    return Err(Error::InvalidPartition(format!("element {x} outside 0..{ground}")));
                }
                if std::mem::replace(&mut seen[x], true) {
                    return Err(Error::InvalidPartition(format!("element {x} appears twice")));
                }
            }
        }
        if let Some(x) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidPartition(format!("element {x} is not covered")));
        }
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        Ok(SetPartition { blocks, ground })
    }

    /// The partition whose blocks are the fibres of `labels`; the kernel of a map.
    pub fn from_labels<T: Eq + Copy>(labels: &[T]) -> Self {
        let mut reps: Vec<T> = Vec::new();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for (i, &l) in labels.iter().enumerate() {
            match reps.iter().position(|&r| r == l) {
                Some(j) => blocks[j].push(i),
                None => {
                    reps.push(l);
                    blocks.push(vec![i]);
                }
            }
        }
        SetPartition { blocks, ground: labels.len() }
    }

    /// Every element in its own block: the least element.
    pub fn discrete(ground: usize) -> Self {
        SetPartition { blocks: (0..ground).map(|i| vec![i]).collect(), ground }
    }

    /// A single block: the greatest element.
    pub fn indiscrete(ground: usize) -> Self {
        let blocks = if ground == 0 { vec![] } else { vec![(0..ground).collect()] };
        SetPartition { blocks, ground }
    }

    pub fn ground_size(&self) -> usize {
        self.ground
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_discrete(&self) -> bool {
        self.blocks.len() == self.ground
    }

    pub fn max_block_size(&self) -> usize {
        self.blocks.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Block sizes in decreasing order.
    pub fn shape(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.blocks.iter().map(Vec::len).collect();
        s.sort_unstable_by(|a, b| b.cmp(a));
        s
    }

    /// `labels()[x]` is the index of the block containing `x`.
    pub fn labels(&self) -> Vec<usize> {
        let mut out = vec![0; self.ground];
        for (i, b) in self.blocks.iter().enumerate() {
            for &x in b {
                out[x] = i;
            }
        }
        out
    }

    fn check_ground(&self, other: &Self) -> Result<()> {
        if self.ground != other.ground {
            return Err(Error::GroundSizeMismatch { left: self.ground, right: other.ground });
        }
        Ok(())
    }

    /// Whether every block of `self` lies inside a block of `other`.
    pub fn refines(&self, other: &Self) -> Result<bool> {
        self.check_ground(other)?;
        let lab = other.labels();
        Ok(self.blocks.iter().all(|b| b.iter().all(|&x| lab[x] == lab[b[0]])))
    }

    /// Least upper bound in the refinement order.
    pub fn join(&self, other: &Self) -> Result<Self> {
        self.check_ground(other)?;
        let mut parent: Vec<usize> = (0..self.ground).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for b in self.blocks.iter().chain(&other.blocks) {
            for &x in &b[1..] {
                let (r, s) = (find(&mut parent, b[0]), find(&mut parent, x));
                parent[r.max(s)] = r.min(s);
            }
        }
        let roots: Vec<usize> = (0..self.ground).map(|x| find(&mut parent, x)).collect();
        Ok(Self::from_labels(&roots))
    }

    /// The image partition `{σ(B)}`.
    pub fn permute(&self, sigma: &Perm) -> Self {
        let blocks = self.blocks.iter().map(|b| b.iter().map(|&x| sigma.apply(x)).collect()).collect();
        SetPartition::new(self.ground, blocks).expect("a permutation maps partitions to partitions")
    }

    /// The partitions obtained by splitting one block into two nonempty parts.
    pub fn lower_covers(&self) -> Vec<SetPartition> {
        let mut out = Vec::new();
        for (i, b) in self.blocks.iter().enumerate() {
            let n = b.len();
            if n < 2 {
                continue;
            }
            // Subsets containing b[0], excluding the whole block.
            for mask in 0..(1usize << (n - 1)) - 1 {
                let (mut keep, mut rest) = (vec![b[0]], Vec::new());
                for (j, &x) in b[1..].iter().enumerate() {
                    if mask >> j & 1 == 1 {
                        keep.push(x);
                    } else {
                        rest.push(x);
                    }
                }
                let mut blocks = self.blocks.clone();
                blocks[i] = keep;
                blocks.push(rest);
                out.push(SetPartition::new(self.ground, blocks).expect("valid split"));
            }
        }
        out
    }

    /// All partitions of a `k`-set, in canonical order.
    pub fn enumerate_all(k: usize) -> Result<Vec<SetPartition>> {
        if k > MAX_LATTICE_SIZE {
            return Err(Error::TooLarge {
                what: "partition lattice ground set".into(),
                size: k as u128,
                limit: MAX_LATTICE_SIZE as u128,
            });
        }
        let mut out = Vec::new();
        let mut rgs = vec![0usize; k];
        fn rec(i: usize, max: usize, rgs: &mut Vec<usize>, out: &mut Vec<SetPartition>) {
            if i == rgs.len() {
                out.push(SetPartition::from_labels(rgs));
                return;
            }
            for v in 0..=max {
                rgs[i] = v;
                rec(i + 1, max.max(v + 1), rgs, out);
            }
        }
        if k == 0 {
            out.push(SetPartition::discrete(0));
        } else {
            rec(1, 1, &mut rgs, &mut out);
        }
        out.sort();
        Ok(out)
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str("{")?;
            for (j, x) in b.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str("}")?;
        }
        f.write_str("}")
    }
}

impl Serialize for SetPartition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.blocks.serialize(s)
    }
}

impl<'de> Deserialize<'de> for SetPartition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let blocks = Vec::<Vec<usize>>::deserialize(d)?;
        let ground = blocks.iter().map(Vec::len).sum();
        SetPartition::new(ground, blocks).map_err(serde::de::Error::custom)
    }
}
