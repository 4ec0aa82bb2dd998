use thiserror::Error;

use crate::root_system::Root;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid dimension n = {0} (need n >= 2)")]
    InvalidDimension(usize),
    #[error("root {0} is outside the positive roots of gl({1})")]
    RootOutOfRange(Root, usize),
    #[error("M is not a subset of A")]
    NotSubset,
    #[error("root {0} is not a member of the set")]
    NotMember(Root),
    #[error("choice {index} is not an element of A_{index} below the previous root")]
    InvalidChoice { index: usize },
    #[error("admissible subset is not maximal")]
    NotMaximal,
    #[error("inner subset is not admissible for n = {0}")]
    InvalidInner(usize),
    #[error("ideal generators are not in triangular shape: {0}")]
    UnsupportedIdealShape(String),
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("{{p, q}} is not congruent to 1 modulo the ideal")]
    NotCanonicalPair,
    #[error("ad_p series did not terminate after {0} steps")]
    SeriesDiverged(usize),
    #[error("factorial 1/{0}! is not invertible in characteristic {1}")]
    FactorialNotInvertible(usize, u64),
    #[error("column {column} has a shape outside the supported reduction cases: {detail}")]
    UnsupportedColumn { column: usize, detail: String },
    #[error("root {0} is not in A(S)")]
    NotInA(Root),
    #[error("no unique decomposition of (1 - w)phi_j for root {0}: {1} solutions")]
    DecompositionFailure(Root, usize),
    #[error("invalid constants: {0}")]
    InvalidC(String),
    #[error("state budget exceeded after visiting {partial} forms (budget {budget})")]
    BudgetExceeded { partial: usize, budget: usize },
    #[error("classification mismatch: {0}")]
    ClassificationMismatch(String),
    #[error("orbit is not subregular: {0}")]
    NotSubregular(String),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("index out of range: {0}")]
    IndexRange(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
