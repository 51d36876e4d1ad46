use thiserror::Error;

/// Failures raised by the decomposition routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix contains a non-finite entry")]
    NonFinite,
    #[error("matrix is numerically singular")]
    SingularMatrix,
    #[error("antidiagonal matrix is singular: coefficient a{index} is zero")]
    SingularAntidiagonal { index: usize },
    #[error("matrix is not antidiagonal: largest off-antidiagonal entry {magnitude:e} at ({row}, {col})")]
    NotAntidiagonal {
        row: usize,
        col: usize,
        magnitude: f64,
    },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("eigenvalue iteration did not converge within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
    #[error("dimension {n} exceeds the dense solver limit {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("precondition violated: {0}")]
    PrecondViolated(String),
    #[error("zero-pair basis vectors for pair {pair} are linearly dependent")]
    LinearlyDependentChoice { pair: usize },
    #[error("both coefficients of the 2x2 block are zero")]
    BothZero,
    #[error("free block for pair {pair} is singular")]
    SingularFreeBlock { pair: usize },
    #[error("matrix is not real antisymmetric: {0}")]
    NotRealAntisymmetric(String),
    #[error("transpose pair moduli differ: pair {pair} has |a{k}| = {low:e} and |a{k1}| = {high:e}", k1 = .k + 1)]
    NotNormal {
        pair: usize,
        k: usize,
        low: f64,
        high: f64,
    },
    #[error("matrix is not traceless (trace modulus {0:e})")]
    NotTraceless(f64),
    #[error("invalid paired diagonalization: {0}")]
    InvalidDiagonalization(String),
    #[error("transform is not centrosymmetric")]
    NotCentrosymmetric,
    #[error("similarity transform is singular")]
    SingularTransform,
}

pub type Result<T> = std::result::Result<T, Error>;
