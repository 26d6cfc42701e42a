use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("series has zero constant term and is not invertible")]
    NotAUnit,
    #[error("rational function denominator vanishes at 0; no power series expansion")]
    NotExpandable,
    #[error("denominator is the zero polynomial")]
    ZeroDenominator,
    #[error("sequence is not a Lefschetz sequence: D_{period} = {value} is not an integer")]
    NotRealizable { period: usize, value: String },
    #[error("inconsistent input: {0}")]
    InconsistentInput(String),
    #[error("horizon {have} is too short; {needed} is required")]
    HorizonTooShort { needed: usize, have: usize },
    #[error("ground sizes differ: {left} vs {right}")]
    GroundSizeMismatch { left: usize, right: usize },
    #[error("family is not closed under refinement: {member} is a member but its refinement {refinement} is not")]
    NotRefinementClosed { member: String, refinement: String },
    #[error("family is not stable under the group: {member} maps to {image}")]
    NotGroupStable { member: String, image: String },
    #[error("family already contains every partition; no excluded partition exists")]
    NoExcludedPartition,
    #[error("enumeration of {what} has size {size}, above the limit {limit}")]
    TooLarge { what: String, size: u128, limit: u128 },
    #[error("invalid map: {0}")]
    InvalidMap(String),
    #[error("invalid permutation group: {0}")]
    InvalidGroup(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("invalid graded endomorphism: {0}")]
    InvalidGraded(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
