use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("number of variables must be at least 1")]
    EmptyAlgebra,
    #[error("index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("pair ({0}, {0}) is not an off-diagonal pair")]
    DiagonalPair(usize),
    #[error("triple {0:?} does not have three distinct elements")]
    DegenerateTriple([usize; 3]),
    #[error("dimension mismatch: expected n = {expected}, got n = {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("not a permutation of 1..={0}")]
    NotAPermutation(usize),
    #[error("triple set violates two-graph parity on the 4-set {0:?}")]
    ParityViolation([usize; 4]),
    #[error("n = {n} exceeds the limit {limit} for {what}")]
    TooLarge { what: &'static str, n: usize, limit: usize },
    #[error("ell = {ell} out of range 0..={max} for n = {n}")]
    EllOutOfRange { n: usize, ell: usize, max: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
