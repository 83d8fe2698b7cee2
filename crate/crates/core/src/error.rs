use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by the numerical and state-handling layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian: max |A - A^H| = {deviation:e} exceeds {tol:e}")]
    NotHermitian { deviation: f64, tol: f64 },

    #[error(
        "eigensolver did not converge within {sweeps} sweeps (off-diagonal norm {off_norm:e})"
    )]
    NoConvergence { sweeps: usize, off_norm: f64 },

    #[error("matrix is not positive semi-definite: eigenvalue {min_eigenvalue:e} below -{tol:e}")]
    NotPsd { min_eigenvalue: f64, tol: f64 },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("matrix entries have length {len}, expected {dim}x{dim}")]
    Shape { dim: usize, len: usize },

    #[error("trace is {trace}, expected 1 within {tol:e}")]
    NotUnitTrace { trace: f64, tol: f64 },

    #[error("invalid probability distribution: {0}")]
    InvalidDistribution(String),

    #[error("lambda must lie in [0, 1], got {0}")]
    InvalidLambda(f64),

    #[error("input must be nonnegative, got {0}")]
    NegativeInput(f64),

    #[error("support of rho is not contained in support of sigma (lambda0 = +inf)")]
    InfiniteLambda0,

    #[error(
        "lambda0 = {lambda0} is within the degeneracy tolerance of 1; decomposition undefined"
    )]
    DegenerateLambda0 { lambda0: f64 },

    #[error("invalid ensemble spec: {0}")]
    InvalidSpec(String),

    #[error("matrix is not unitary: max |U^H U - I| = {deviation:e}")]
    NotUnitary { deviation: f64 },

    #[error("POVM elements sum to identity only within {deviation:e}")]
    IncompletePovm { deviation: f64 },

    #[error("operation supports only dimension 2, got {0}")]
    UnsupportedDimension(usize),

    #[error("invalid state file: {0}")]
    Parse(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
