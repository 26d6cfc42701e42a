use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::family::PartitionFamily;
use super::group::GroupAction;
use super::set_partition::SetPartition;
use crate::error::{Error, Result};

/// How to choose among several minimal excluded partitions.
#[derive(Clone, Debug)]
pub enum TieBreak {
    /// The least in canonical order.
    CanonicalLeast,
    /// Uniformly at random from a seeded generator.
    Random(ChaCha8Rng),
}

impl TieBreak {
    fn pick<'a>(&mut self, candidates: &'a [SetPartition]) -> &'a SetPartition {
        match self {
            TieBreak::CanonicalLeast => &candidates[0],
            TieBreak::Random(rng) => &candidates[rng.gen_range(0..candidates.len())],
        }
    }
}

/// One step of enlarging a family by a group orbit of a minimal non-member.
#[derive(Clone, Debug)]
pub struct ExcludedStep {
    pub lambda: SetPartition,
    /// `ℒ ∪ Gλ`.
    pub extended: PartitionFamily,
    pub orbit: Vec<SetPartition>,
    /// Indices into the action list of the elements fixing `lambda`.
    pub stabilizer: Vec<usize>,
    /// The stabilizer acting on the blocks of `lambda`.
    pub block_action: GroupAction,
}

/// Non-members all of whose proper refinements are members, in canonical order.
pub fn minimal_excluded(family: &PartitionFamily) -> Result<Vec<SetPartition>> {
    Ok(SetPartition::enumerate_all(family.ground_size())?
        .into_iter()
        .filter(|p| !family.contains(p) && p.lower_covers().iter().all(|c| family.contains(c)))
        .collect())
}

/// Picks a minimal excluded `λ` and forms `ℒ⁺ = ℒ ∪ Gλ`, the stabilizer
/// `G_λ` and its action on the blocks of `λ`. `family` must be stable
/// under `action`.
pub fn minimal_excluded_step(
    family: &PartitionFamily,
    action: &GroupAction,
    tie: &mut TieBreak,
) -> Result<ExcludedStep> {
    if action.degree() != family.ground_size() {
        return Err(Error::GroundSizeMismatch { left: family.ground_size(), right: action.degree() });
    }
    let candidates = minimal_excluded(family)?;
    if candidates.is_empty() {
        return Err(Error::NoExcludedPartition);
    }
    let lambda = tie.pick(&candidates).clone();
    Ok(step_at(family, action, lambda))
}

fn step_at(family: &PartitionFamily, action: &GroupAction, lambda: SetPartition) -> ExcludedStep {
    let orbit: Vec<SetPartition> = action
        .image()
        .iter()
        .map(|g| lambda.permute(g))
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect();
    let extended = family.extended(orbit.iter().cloned());
    let (stabilizer, acts) = action.stabilizer_on_blocks(&lambda);
    let block_action = GroupAction::new(lambda.num_blocks(), acts).expect("stabilizer contains the identity");
    ExcludedStep { lambda, extended, orbit, stabilizer, block_action }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::PermutationGroup;
    use rand::SeedableRng;

    #[test]
    fn two_point_example() {
        let fam = PartitionFamily::discrete(2);
        let g = PermutationGroup::trivial(2).action();
        let s = minimal_excluded_step(&fam, &g, &mut TieBreak::CanonicalLeast).unwrap();
        assert_eq!(s.lambda, SetPartition::indiscrete(2));
        assert!(s.extended.is_everything());
        assert_eq!(s.block_action.degree(), 1);
    }

    #[test]
    fn symmetric_examples() {
        let fam = PartitionFamily::max_block(3, 1).unwrap();
        let s3 = PermutationGroup::symmetric(3).action();
        let s = minimal_excluded_step(&fam, &s3, &mut TieBreak::CanonicalLeast).unwrap();
        assert_eq!(s.lambda.shape(), vec![2, 1]);
        assert_eq!(s.orbit.len(), 3);
        assert_eq!(s.extended.len(), 4);
        assert_eq!(s.extended, PartitionFamily::max_block(3, 2).unwrap());
        assert_eq!(s.stabilizer.len(), 2);

        let fam = PartitionFamily::max_block(4, 2).unwrap();
        let s4 = PermutationGroup::symmetric(4).action();
        let mut rng = TieBreak::Random(ChaCha8Rng::seed_from_u64(7));
        let s = minimal_excluded_step(&fam, &s4, &mut rng).unwrap();
        assert_eq!(s.lambda.shape(), vec![3, 1]);
        assert_eq!(s.block_action.degree(), 2);
        // 3+1 partitions are minimal; the 2+2 pairings are members already.
        assert_eq!(minimal_excluded(&fam).unwrap().len(), 4);
    }

    #[test]
    fn full_family_rejected() {
        let fam = PartitionFamily::all(3).unwrap();
        let g = PermutationGroup::trivial(3).action();
        assert_eq!(
            minimal_excluded_step(&fam, &g, &mut TieBreak::CanonicalLeast).unwrap_err(),
            Error::NoExcludedPartition
        );
    }
}
