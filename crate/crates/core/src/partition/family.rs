use std::collections::BTreeSet;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::group::{GroupAction, PermutationGroup};
use super::set_partition::{SetPartition, MAX_LATTICE_SIZE};
use crate::error::{Error, Result};

/// A nonempty, refinement-closed set of partitions of `{0, .., k-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartitionFamily {
    ground: usize,
    members: BTreeSet<SetPartition>,
}

fn check_size(k: usize) -> Result<()> {
    if k > MAX_LATTICE_SIZE {
        return Err(Error::TooLarge {
            what: "partition family ground set".into(),
            size: k as u128,
            limit: MAX_LATTICE_SIZE as u128,
        });
    }
    Ok(())
}

impl PartitionFamily {
    /// Every partition of a `k`-set.
    pub fn all(k: usize) -> Result<Self> {
        Ok(PartitionFamily { ground: k, members: SetPartition::enumerate_all(k)?.into_iter().collect() })
    }

    /// Only the discrete partition.
    pub fn discrete(k: usize) -> Self {
        PartitionFamily { ground: k, members: BTreeSet::from([SetPartition::discrete(k)]) }
    }

    /// Partitions all of whose blocks have at most `l` elements (`l ≥ 1`, or `k = 0`).
    pub fn max_block(k: usize, l: usize) -> Result<Self> {
        if l == 0 && k > 0 {
            return Err(Error::InvalidPartition("a block bound of 0 admits no partition".into()));
        }
        Self::from_predicate(k, |p| p.max_block_size() <= l)
    }

    /// All refinements of `pi`.
    pub fn refinements_of(pi: &SetPartition) -> Result<Self> {
        Self::from_predicate(pi.ground_size(), |p| p.refines(pi).expect("same ground"))
    }

    /// The partitions satisfying `pred`, which must carve out a
    /// refinement-closed set.
    pub fn from_predicate(k: usize, pred: impl Fn(&SetPartition) -> bool) -> Result<Self> {
        check_size(k)?;
        let members = SetPartition::enumerate_all(k)?.into_iter().filter(|p| pred(p)).collect();
        Self::from_members(k, members)
    }

    pub fn from_members(k: usize, members: BTreeSet<SetPartition>) -> Result<Self> {
        check_size(k)?;
        if members.is_empty() {
            return Err(Error::InvalidPartition("a partition family must be nonempty".into()));
        }
        if let Some(p) = members.iter().find(|p| p.ground_size() != k) {
            return Err(Error::GroundSizeMismatch { left: k, right: p.ground_size() });
        }
        let fam = PartitionFamily { ground: k, members };
        fam.check_refinement_closed()?;
        Ok(fam)
    }

    /// Members with a cover outside the family, as a witness pair.
    fn check_refinement_closed(&self) -> Result<()> {
        for p in &self.members {
            if let Some(c) = p.lower_covers().into_iter().find(|c| !self.members.contains(c)) {
                return Err(Error::NotRefinementClosed { member: p.to_string(), refinement: c.to_string() });
            }
        }
        Ok(())
    }

    /// Refinement closure, and stability under `group` if given.
    pub fn validate(&self, group: Option<&PermutationGroup>) -> Result<()> {
        self.check_refinement_closed()?;
        if let Some(g) = group {
            if g.degree() != self.ground {
                return Err(Error::GroundSizeMismatch { left: self.ground, right: g.degree() });
            }
            self.check_stable(&g.action())?;
        }
        Ok(())
    }

    pub fn check_stable(&self, action: &GroupAction) -> Result<()> {
        for g in action.image() {
            for p in &self.members {
                let q = p.permute(&g);
                if !self.members.contains(&q) {
                    return Err(Error::NotGroupStable { member: p.to_string(), image: q.to_string() });
                }
            }
        }
        Ok(())
    }

    pub fn ground_size(&self) -> usize {
        self.ground
    }

    pub fn members(&self) -> &BTreeSet<SetPartition> {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, p: &SetPartition) -> bool {
        self.members.contains(p)
    }

    /// Whether the family is the whole lattice.
    pub fn is_everything(&self) -> bool {
        self.members.contains(&SetPartition::indiscrete(self.ground))
    }

    /// `n[r]` = number of members with exactly `r` blocks, for `r = 0..=k`.
    pub fn block_counts(&self) -> Vec<usize> {
        let mut n = vec![0; self.ground + 1];
        for p in &self.members {
            n[p.num_blocks()] += 1;
        }
        n
    }

    /// Adds `extra`; the result must still be refinement-closed.
    pub(crate) fn extended(&self, extra: impl IntoIterator<Item = SetPartition>) -> Self {
        let mut members = self.members.clone();
        members.extend(extra);
        PartitionFamily { ground: self.ground, members }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum FamilyJson {
    Members { ground: usize, members: Vec<SetPartition> },
    MaxBlock { ground: usize, max_block: usize },
    Refines { ground: usize, refines: SetPartition },
}

#[derive(Serialize)]
struct FamilyOut<'a> {
    ground: usize,
    members: &'a BTreeSet<SetPartition>,
}

impl Serialize for PartitionFamily {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FamilyOut { ground: self.ground, members: &self.members }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for PartitionFamily {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = match FamilyJson::deserialize(d)? {
            FamilyJson::Members { ground, members } => {
                PartitionFamily::from_members(ground, members.into_iter().collect())
            }
            FamilyJson::MaxBlock { ground, max_block } => PartitionFamily::max_block(ground, max_block),
            FamilyJson::Refines { ground, refines } => {
                if refines.ground_size() != ground {
                    Err(Error::GroundSizeMismatch { left: ground, right: refines.ground_size() })
                } else {
                    PartitionFamily::refinements_of(&refines)
                }
            }
        };
        r.map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn block_count_examples() {
        assert_eq!(PartitionFamily::all(3).unwrap().block_counts()[1..], [1, 3, 1]);
        assert_eq!(PartitionFamily::max_block(3, 1).unwrap().block_counts()[1..], [0, 0, 1]);
        assert_eq!(PartitionFamily::max_block(4, 2).unwrap().block_counts()[1..], [0, 3, 6, 1]);
        assert_eq!(PartitionFamily::max_block(0, 0).unwrap().block_counts(), [1]);
    }

    #[test]
    fn closure_enforced() {
        let top = SetPartition::indiscrete(3);
        let e = PartitionFamily::from_members(3, BTreeSet::from([top, SetPartition::discrete(3)]))
            .unwrap_err();
        assert!(matches!(e, Error::NotRefinementClosed { .. }));
        assert!(PartitionFamily::from_predicate(3, |p| p.num_blocks() == 2).is_err());
        assert!(PartitionFamily::from_members(3, BTreeSet::new()).is_err());
    }

    #[test]
    fn stability() {
        let pi = SetPartition::new(4, vec![vec![0, 1], vec![2, 3]]).unwrap();
        let fam = PartitionFamily::refinements_of(&pi).unwrap();
        assert_eq!(fam.len(), 4);
        assert!(fam.validate(None).is_ok());
        assert!(matches!(
            fam.validate(Some(&PermutationGroup::symmetric(4))),
            Err(Error::NotGroupStable { .. })
        ));
        let g = PermutationGroup::generated(
            4,
            &[
                super::super::Perm::transposition(4, 0, 1),
                super::super::Perm::new(vec![2, 3, 0, 1]).unwrap(),
            ],
            120,
        )
        .unwrap();
        assert!(fam.validate(Some(&g)).is_ok());
        let m2 = PartitionFamily::max_block(4, 2).unwrap();
        assert!(m2.validate(Some(&PermutationGroup::symmetric(4))).is_ok());
    }

    #[test]
    fn json_forms() {
        let a: PartitionFamily = serde_json::from_str(r#"{"ground":3,"max_block":2}"#).unwrap();
        assert_eq!(a.len(), 4);
        let b: PartitionFamily = serde_json::from_str(r#"{"ground":3,"refines":[[0,1],[2]]}"#).unwrap();
        assert_eq!(b.len(), 2);
        let c: PartitionFamily =
            serde_json::from_str(r#"{"ground":2,"members":[[[0],[1]]]}"#).unwrap();
        assert_eq!(c, PartitionFamily::discrete(2));
        let s = serde_json::to_string(&b).unwrap();
        assert_eq!(serde_json::from_str::<PartitionFamily>(&s).unwrap(), b);
        assert!(serde_json::from_str::<PartitionFamily>(r#"{"ground":2,"members":[[[0,1]]]}"#).is_err());
    }
}
