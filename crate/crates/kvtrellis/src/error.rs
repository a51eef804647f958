//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime modulus")]
    NotPrime(u64),
    #[error("field mismatch: GF({0}) vs GF({1})")]
    FieldMismatch(u64, u64),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("time-axis mismatch: {0} vs {1}")]
    AxisMismatch(usize, usize),
    #[error("linear system has no solution")]
    NoSolution,
    #[error("linear system solution is not unique")]
    NotUnique,
    #[error("the zero vector has no span")]
    ZeroVector,
    #[error("span ({0},{0}] is empty")]
    EmptySpan(usize),
    #[error("generator matrix generates the zero code")]
    ZeroCode,
    #[error("row {0} of the generator matrix is zero")]
    ZeroRow(usize),
    #[error("{span} is not a span of row {row}")]
    InvalidSpan { row: usize, span: String },
    #[error("no codeword is nonzero at position {0}")]
    UnsupportedPosition(usize),
    #[error("code or dual code does not have full support")]
    SupportError,
    #[error("enumeration budget exceeded: {0}")]
    TooLarge(String),
    #[error("generator and check matrices are not orthogonal")]
    NotOrthogonal,
    #[error("selected rows are linearly dependent")]
    RankDeficient,
    #[error("selection has {got} rows, expected {expected}")]
    BadSelectionSize { expected: usize, got: usize },
    #[error("isomorphism search budget exceeded: {0}")]
    SearchBudgetExceeded(String),
    #[error("bilinear pairing is degenerate at time {0}")]
    DegeneratePairing(usize),
    #[error("no unique dual state vector for the generator omitted at index {0}")]
    NoUniqueSolution(usize),
    #[error("not a characteristic pair: {0}")]
    NotCharacteristic(String),
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("duality check failed at section {0}")]
    DualityFailed(usize),
    #[error("displacement symmetry check failed")]
    SymmetryFailed,
    #[error("parse error: {0}")]
    Parse(String),
}
