use thiserror::Error;

use crate::algebra::SymId;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("syntax error at byte {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("nonzero constant term {0}")]
    NonzeroConstantTerm(String),
    #[error("polynomial is zero")]
    ZeroPolynomial,
    #[error("exponent must be at least 1")]
    ZeroExponent,
    #[error("variable indices start at 1")]
    BadVariable,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("matrix size mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("polynomial needs {expected} matrices, got {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("entry ({row},{col}) is outside an upper triangular {n}x{n} matrix")]
    BadEntry { row: usize, col: usize, n: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderError {
    #[error("order exceeds cap {cap}")]
    OrderExceedsCap { cap: usize },
    #[error("order is undefined for the zero polynomial")]
    ZeroPolynomial,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("constraint polynomial {index} is identically zero")]
    ZeroPolynomialInput { index: usize },
    #[error("symbol {0} occurs in a constraint but is not a search variable")]
    UncoveredSymbol(SymId),
    #[error("pivot coefficient is zero")]
    PivotZero,
    #[error("right-hand side must be nonzero")]
    TargetZero,
    #[error("target form has a constant term")]
    NonHomogeneousTarget,
    #[error("side form {index} is constant or has a constant term")]
    DegenerateSideForm { index: usize },
    #[error("need at least {needed} points, asked for {requested}")]
    TooFewPoints { needed: usize, requested: usize },
    #[error("internal error: {0}")]
    Internal(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error("order {r} is outside 1 < r < n-1 for n = {n}")]
    OrderOutOfRange { r: usize, n: usize },
    #[error("order {r} differs from n-2 = {expected}")]
    OrderMismatch { r: usize, expected: usize },
    #[error("target has a nonzero entry at ({row},{col}) below band {band}")]
    TargetNotInBand { row: usize, col: usize, band: usize },
    #[error("target entry ({row},{col}) on the leading band is zero")]
    ZeroOnRDiagonal { row: usize, col: usize },
    #[error("internal verification failure: {0}")]
    InternalVerificationFailure(String),
}

impl From<SearchError> for WitnessError {
    fn from(e: SearchError) -> Self {
        WitnessError::InternalVerificationFailure(e.to_string())
    }
}

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid rational {0:?}")]
    BadRational(String),
    #[error("duplicate entry ({row},{col})")]
    DuplicateEntry { row: usize, col: usize },
    #[error("matrix size must be at least 1")]
    EmptyMatrix,
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error("invalid polynomial: {0}")]
    Poly(#[from] AlgebraError),
}
