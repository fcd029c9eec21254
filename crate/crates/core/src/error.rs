use thiserror::Error;

use crate::exactfield::FieldSpec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("prime {0} is too large (at most 2^32 supported)")]
    PrimeTooLarge(u64),
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(FieldSpec, FieldSpec),
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse {what}: {detail}")]
    Parse { what: &'static str, detail: String },
    #[error("arity mismatch: expected {expected}, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("polynomial is not divisible")]
    NotDivisible,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not alternating")]
    NotAlternating,
    #[error("index {index} out of range 0..{len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("zero form")]
    ZeroForm,
    #[error("zero vector")]
    ZeroVector,
    #[error("vectors are linearly dependent")]
    DependentVectors,
    #[error("linear map is singular")]
    SingularMap,
    #[error("scalar must be nonzero")]
    ZeroScalar,
    #[error("catalog condition violated: {0}")]
    CatalogCondition(String),
    #[error("dimension {n} is smaller than the rank {rank} of {tag}")]
    DimensionTooSmall { tag: String, n: usize, rank: usize },
    #[error("enumeration budget exceeded: {needed} > {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("operation requires a finite field, got {0}")]
    InfiniteField(FieldSpec),
    #[error("every candidate index is degenerate: {0}")]
    DegenerateVariety(String),
    #[error("supports overlap: {0}")]
    SupportOverlap(String),
    #[error("invalid construction: {0}")]
    InvalidConstruction(String),
    #[error("wrong form type: expected {expected}")]
    WrongFormType { expected: &'static str },
    #[error("precondition failed: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
