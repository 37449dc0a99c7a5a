//! Error type shared by every module of the crate.

use thiserror::Error;

/// All failure modes of the library. Verification *failures* are not errors:
/// the `verify_*` functions return a [`crate::report::Report`] instead.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("root depth exceeded: {0}")]
    DepthExceeded(String),
    #[error("element is not in the base field K: {0}")]
    NotInBaseField(String),
    #[error("inexact division while generating addition polynomials: {0}")]
    InexactDivision(String),
    #[error("operands belong to different truncated algebras")]
    AlgebraMismatch,
    #[error("tensor slot mismatch: {0}")]
    SlotMismatch(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("comultiplication coefficient escaped the base field: {0}")]
    BaseFieldViolation(String),
    #[error("coefficient field mismatch")]
    FieldMismatch,
    #[error("b is a p-th power in K; the extension is not primitive of degree p^n")]
    NotPrimitive,
    #[error("coaction index {0} is divisible by p")]
    BadIndex(u64),
    #[error("gamma map is not invertible; kernel vector: {0:?}")]
    NotInvertible(Vec<String>),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("operation restricted to r = n - 1: {0}")]
    ScopeError(String),
    #[error("N must be coprime to p")]
    BadN,
    #[error("L is not a Hopf-Galois extension; kernel vector: {0:?}")]
    NotGalois(Vec<String>),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
