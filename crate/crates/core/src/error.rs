use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("lattice of rank {rank} has infinite index in Z^{ambient}")]
    InfiniteIndex { rank: usize, ambient: usize },

    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("group of fractions has torsion (invariant factors {0:?})")]
    TorsionQuotient(Vec<String>),
    #[error("monoid has nontrivial units")]
    NontrivialUnits,
    #[error("element {0:?} is not in the monoid")]
    NotInMonoid(Vec<i64>),
    #[error("monoid is not a maximal order")]
    NotMaximalOrder,
    #[error("membership search exceeded its budget")]
    MembershipUnknown,

    #[error("permutation {0} does not preserve the relations")]
    RelationNotPreserved(String),
    #[error("action is not faithful: {0}")]
    NotFaithful(String),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("invalid cocycle: {0}")]
    InvalidCocycle(String),
    #[error("generated monoid is not of IG-type: {0}")]
    NotIgType(String),

    #[error("relation set is not bijective: {0}")]
    NotBijective(String),
    #[error("word x{0}x{1} appears in more than one relation")]
    DuplicateWord(usize, usize),
    #[error("expected {expected} relations, found {found}")]
    WrongRelationCount { expected: usize, found: usize },
    #[error("derived map is not a permutation: {0}")]
    NotPermutation(String),
    #[error("relations do not satisfy the hypotheses of I-type: {0}")]
    NotIType(String),
    #[error("period lattice inference failed up to degree {0}")]
    PeriodInferenceFailed(usize),

    #[error("group of fractions has torsion")]
    TorsionPresent,
    #[error("precondition unmet: {0}")]
    PreconditionUnmet(String),
}
