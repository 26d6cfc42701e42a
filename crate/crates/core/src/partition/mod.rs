//! Set partitions, refinement-closed families, permutation groups and their
//! actions, and the step that enlarges a family by one orbit.

mod family;
mod group;
mod set_partition;
mod step;

pub use family::PartitionFamily;
pub use group::{GSet, GSetJson, GroupAction, Perm, PermutationGroup, DEFAULT_GROUP_CAP};
pub use set_partition::{SetPartition, MAX_LATTICE_SIZE};
pub use step::{minimal_excluded, minimal_excluded_step, ExcludedStep, TieBreak};
