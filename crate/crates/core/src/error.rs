use thiserror::Error;

/// Reasons a Gram matrix is not an admissible even positive-definite form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum FormError {
    #[error("gram matrix is empty")]
    Empty,
    #[error("gram matrix is not square")]
    NotSquare,
    #[error("gram matrix is not symmetric")]
    NotSymmetric,
    #[error("odd diagonal entry at index {0}")]
    OddDiagonal(usize),
    #[error("odd rank {0}")]
    OddRank(usize),
    #[error("gram matrix is not positive definite")]
    NotPositiveDefinite,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Form(#[from] FormError),
    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),
    #[error("coefficient requested beyond precision")]
    BeyondPrecision,
    #[error("exponent is not a multiple of 1/{0}")]
    OffGrid(u64),
    #[error("vector length {got} does not match rank {rank}")]
    DimensionMismatch { rank: usize, got: usize },
    #[error("vector is not in a congruence class: A·h is not divisible by the level")]
    InvalidClass,
    #[error("insertion vector is not a unit vector")]
    NotUnit,
    #[error("the form has no root (no vector with Q = 1)")]
    NoRoot,
    #[error("odd insertion power is not exactly representable for this class")]
    NotExact,
    #[error("enumeration would visit about {estimate:.3e} vectors, over the budget")]
    EnumerationBudget { estimate: f64 },
    #[error("tolerance {tol:e} unachievable at im(tau) = {im}")]
    ToleranceUnachievable { tol: f64, im: f64 },
}
