use thiserror::Error;

/// Errors raised by table validation, structural analysis and the global
/// isomorphism pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("table is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("table is empty")]
    EmptyTable,
    #[error("entry at ({0}, {1}) is out of range")]
    OutOfRange(usize, usize),
    #[error("not associative: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NotAssociative(usize, usize, usize),
    #[error("semigroup is not completely regular")]
    NotCompletelyRegular,
    #[error("component {0} is not completely simple")]
    NotSimpleComponent(usize),
    #[error("subset is empty")]
    EmptySubset,
    #[error("subsets belong to semigroups of different orders ({0} vs {1})")]
    ParentMismatch(usize, usize),
    #[error("order {order} exceeds the bound {bound}")]
    OrderTooLarge { order: usize, bound: usize },
    #[error("subset {0:#b} is not idempotent")]
    NotIdempotent(u32),
    #[error("element {0} is not idempotent")]
    NotIdempotentElement(usize),
    #[error("subsets {0:#b} and {1:#b} are not strictly comparable")]
    NotComparable(u32, u32),
    #[error("subset {0:#b} is not a left zero subsemigroup")]
    NotLeftZero(u32),
    #[error("subset {0:#b} is not a subsemigroup")]
    NotSubsemigroup(u32),
    #[error("subset {0:#b} does not satisfy (A3)")]
    NotA3(u32),
    #[error("bad family spec: {0}")]
    BadSpec(String),
    #[error("isomorphism search exceeded its budget of {0} nodes")]
    SearchBudgetExceeded(u64),
    #[error("psi(S_{component}) meets {ids:?} components instead of exactly one")]
    ThetaNotSingleton { component: usize, ids: Vec<usize> },
    #[error("theta is not a semilattice isomorphism: {0}")]
    ThetaNotIsomorphism(String),
    #[error("component {0} is not a left or right zero semigroup")]
    WrongComponentKind(usize),
    #[error("psi({{{element}}}) = {image:#b} is not a singleton")]
    PsiImageNotSingleton { element: usize, image: u32 },
    #[error("rho block of {element} has {size} elements but its target block has {target}")]
    BlockSizeMismatch { element: usize, size: usize, target: usize },
    #[error("target rho block depends on the chosen element of psi({{{0}}})")]
    BlockChoiceDependent(usize),
    #[error("eta is not an isomorphism: {0}")]
    EtaNotMorphism(String),
    #[error("map is not a bijective morphism: {0}")]
    NotIsomorphism(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
