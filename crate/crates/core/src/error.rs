use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("universe must have at least one element")]
    EmptyUniverse,
    #[error("duplicate label `{0}` in universe")]
    DuplicateLabel(String),
    #[error("size guard violated: {0}")]
    SizeGuard(String),
    #[error("operands live in different universes")]
    UniverseMismatch,
    #[error("expected length {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("attribute list is empty")]
    EmptyAttributes,
    #[error("predicate `{0}` is not binary (values must be 0/1)")]
    NonBinaryPredicate(String),
    #[error("predicates are incomplete: elements {0} and {1} share every value")]
    IncompletePredicates(usize, usize),
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("matrix is not a paradigm (not of the all-ones-on-support form)")]
    NotProductForm,
    #[error("not a permutation of 0..{0}")]
    InvalidPermutation(usize),
    #[error("internal mismatch: {0}")]
    InternalMismatch(String),
    #[error("density undefined: trace is zero")]
    ZeroTrace,
    #[error("conditioning on an event of probability zero")]
    ZeroProbability,
    #[error("matrix is not positive semidefinite")]
    NotPositive,
    #[error("invalid probability vector: {0}")]
    InvalidDistribution(String),
    #[error("amplitude vector is not normalized (norm² = {0})")]
    NotNormalized(f64),
    #[error("matrix is not Hermitian")]
    NotHermitian,
    #[error("trace is {0}, expected 1")]
    TraceNotOne(f64),
    #[error("matrix is not unitary")]
    NotUnitary,
    #[error("observable eigenvalues must be distinct, one per block")]
    InvalidObservable,
    #[error("Pauli exclusion: {particles} particles cannot occupy {states} states without repeats")]
    ExclusionViolation { particles: usize, states: usize },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
