use thiserror::Error;

/// Failures raised by the matrix kernel and the harness built on it.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("invalid dimension {0}")]
    InvalidDimension(usize),
    #[error("matrix has non-finite entries")]
    NonFinite,
    #[error("matrix is not Hermitian (relative defect {defect:.3e})")]
    NotHermitian { defect: f64 },
    #[error("matrix is not normal (relative defect {defect:.3e})")]
    NotNormal { defect: f64 },
    #[error("matrix is not positive semidefinite (eigenvalue {min_eigenvalue:.3e})")]
    NotPsd { min_eigenvalue: f64 },
    #[error("matrix is not positive definite (eigenvalue {min_eigenvalue:.3e})")]
    NotPositiveDefinite { min_eigenvalue: f64 },
    #[error("Jacobi iteration did not converge within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
    #[error("matrix is singular to working tolerance")]
    Singular,
    #[error("cannot split a matrix of odd dimension {0} into quadrants")]
    OddDimension(usize),
    #[error("grid size {n} below the minimum {min}")]
    GridTooSmall { n: usize, min: usize },
    #[error("invalid tolerance: {0}")]
    InvalidTolerance(String),
    #[error("malformed input: {0}")]
    Malformed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
