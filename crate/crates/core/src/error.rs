use alloc::string::String;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Why a table failed to describe a group.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NotAGroupReason {
    NonAssociative,
    NoIdentity,
    NoInverse,
    NotLatinSquare,
}

impl NotAGroupReason {
    pub fn as_str(self) -> &'static str {
        match self {
            NotAGroupReason::NonAssociative => "non-associative",
            NotAGroupReason::NoIdentity => "no-identity",
            NotAGroupReason::NoInverse => "no-inverse",
            NotAGroupReason::NotLatinSquare => "not-latin-square",
        }
    }
}

impl fmt::Display for NotAGroupReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("not a group: {0}")]
    NotAGroup(NotAGroupReason),
    #[error("order ceiling {ceiling} exceeded")]
    OrderCeilingExceeded { ceiling: usize },
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("element index {index} out of range for a group of order {order}")]
    ElementOutOfRange { index: usize, order: usize },
    #[error("not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("not a homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("not an isomorphism: {0}")]
    NotIsomorphism(String),
    #[error("tower stage {0} out of range (1..=4)")]
    StageOutOfRange(usize),
    #[error("group of order {order} does not fit stage {stage} (degree {degree})")]
    TooLargeForStage {
        order: usize,
        stage: usize,
        degree: usize,
    },
    #[error("result outside bounds: order {order} exceeds {max_order}")]
    ResultOutsideBounds { order: usize, max_order: usize },
    #[error("subgroup lattice below node {0} is incomplete")]
    IncompleteLattice(usize),
    #[error("node {0} is not cyclic")]
    NotCyclic(usize),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("involution map does not extend to an automorphism: {0}")]
    NotExtendable(String),
    #[error("involutions do not generate the group")]
    NotGenerated,
    #[error("construction failed: {0}")]
    ConstructionFailed(String),
    #[error("step budget of {0} exhausted")]
    BudgetExhausted(u64),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}
