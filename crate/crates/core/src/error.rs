use thiserror::Error;

/// Errors raised by field construction, polynomial and matrix arithmetic, and
/// the span criteria built on top of them.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field order exceeds the supported range: {0}")]
    Overflow(String),
    #[error("polynomial is not irreducible: {0}")]
    NotIrreducible(String),
    #[error("extensions must be built over a prime field")]
    BaseNotPrime,
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("no embedding of F_{{{p}^{from}}} into F_{{{p}^{to}}}")]
    EmbeddingUnavailable { p: u32, from: u32, to: u32 },
    #[error("polynomial does not split over the requested field")]
    NotSplit,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("invalid field element: {0}")]
    InvalidElement(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("Krylov depth {d} is below deg of the minimal polynomial ({min})")]
    DTooSmall { d: usize, min: usize },
    #[error("the two rank characterizations disagree: {0}")]
    LemmaViolation(String),
    #[error("vectors are not eigenvectors: {0}")]
    NotEigenvectors(String),
    #[error(
        "matrix is not cyclic and diagonalizable (characteristic polynomial has a repeated factor)"
    )]
    NotDiagonalizableCyclic,
    #[error("expected 2x2 matrices")]
    Not2x2,
    #[error("commutator test disagrees with the cyclicity/eigenvector conditions")]
    PropositionViolation,
    #[error("field order must be at least 2, got {0}")]
    InvalidOrder(u64),
    #[error("enumeration needs {needed} products but the budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("nonzero fibers of the outer-product map are not uniform: {0}")]
    NonUniformFiber(String),
}

pub type Result<T> = std::result::Result<T, Error>;
