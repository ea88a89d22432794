use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power of an odd prime")]
    NotOddPrimePower(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {q} exceeds the configured limit {limit}")]
    FieldTooLarge { q: u128, limit: u64 },
    #[error("q = {q} exceeds the enumeration limit {limit}")]
    EnumerationLimit { q: u64, limit: u64 },
    #[error("k = {k} exceeds the matrix-method limit {limit}")]
    MatrixLimit { k: u64, limit: u64 },
    #[error("matrix size {size} exceeds the configured limit {limit}")]
    DetSizeLimit { size: u64, limit: u64 },
    #[error("could not factor {0} within the configured effort")]
    FactorizationEffort(u64),
    #[error("polynomials belong to different field contexts")]
    MixedContexts,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("the zero element lies in no cyclotomic coset")]
    ZeroElementCoset,
    #[error("element does not belong to this parameter set's field")]
    ForeignElement,
    #[error("{name} = {value} is out of range [0, {bound})")]
    IndexOutOfRange {
        name: &'static str,
        value: u64,
        bound: u64,
    },
    #[error("{divisor} does not divide {of}")]
    NotADivisor { divisor: u64, of: u64 },
    #[error("element does not have multiplicative order {expected}")]
    NotPrimitive { expected: u64 },
    #[error("k = {k} has the wrong parity for determinant variant {variant}")]
    ParityMismatch { k: u64, variant: &'static str },
    #[error("k must be at least 1")]
    ZeroK,
    #[error("hypothesis {hypothesis} fails at p = {p}, k = {k}")]
    HypothesisFails {
        hypothesis: &'static str,
        p: u64,
        k: u64,
    },
    #[error("witness construction check failed: {0}")]
    WitnessCheck(String),
}
