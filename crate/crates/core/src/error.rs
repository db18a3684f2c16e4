use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (asymmetry {asymmetry:.3e} exceeds {limit:.3e})")]
    NotHermitian { asymmetry: f64, limit: f64 },
    #[error("Jacobi iteration did not converge within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
    #[error("eigenvalue {eigenvalue:.6e} is below the floor {floor:.3e}")]
    EigenvalueBelowFloor { eigenvalue: f64, floor: f64 },
    #[error("matrix is numerically singular (pivot {pivot:.3e})")]
    Singular { pivot: f64 },
    #[error("shape mismatch: {left:?} vs {right:?}")]
    ShapeMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("matrix has operator norm {norm:.17} and is not inside the open unit ball")]
    NotInBall { norm: f64 },
    #[error("point is outside the open unit disc (modulus {modulus:.17})")]
    OutOfDisc { modulus: f64 },
    #[error("invalid dimensions: {0}")]
    BadDims(String),
    #[error(
        "operator is not symmetric for the given pair (residual {residual:.3e} > {limit:.3e})"
    )]
    NotSymmetric { residual: f64, limit: f64 },
    #[error("truncation depth {depth} outside 1..={max}")]
    BadDepth { depth: usize, max: usize },
    #[error("matrix contains a non-finite entry")]
    NonFinite,
}
