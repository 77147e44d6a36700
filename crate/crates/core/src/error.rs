use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("malformed matrix: {0}")]
    MalformedMatrix(String),
    #[error("lattice is not a sublattice of the given superlattice")]
    NotASublattice,
    #[error("{what} exceeded cap of {cap}")]
    CapExceeded { what: &'static str, cap: usize },
    #[error("generator {0} is not unimodular")]
    NonUnimodularGenerator(usize),
    #[error("conjugating matrix is not unimodular")]
    NonUnimodularConjugator,
    #[error("invalid rank {rank} for family {family}")]
    InvalidRank { family: char, rank: usize },
    #[error("lattice kind {0} is not available for this root system")]
    KindUnavailable(String),
    #[error("gram matrix is not symmetric")]
    NotSymmetric,
    #[error("gram matrix is not positive definite")]
    NotPositiveDefinite,
    #[error("group does not preserve the form (generator {0})")]
    FormNotPreserved(usize),
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),
    #[error("lattice is not stable under generator {0}")]
    NotGStable(usize),
    #[error("vector is not a member of the lattice")]
    VectorNotInLattice,
    #[error("invalid case: {0}")]
    InvalidCase(String),
    #[error("horizon {0} too small: no passing prime found")]
    HorizonTooSmall(u64),
    #[error("unknown formula identifier {0}")]
    UnknownFormula(String),
    #[error("missing external data: {0}")]
    MissingExternalData(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
