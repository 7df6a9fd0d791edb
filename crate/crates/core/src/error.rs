use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid shape: {0}")]
    Shape(String),

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("not Hermitian (max asymmetry {0:.3e})")]
    NotHermitian(f64),

    #[error("trace is not 1 (got {0})")]
    Trace(f64),

    #[error("not positive semi-definite (min eigenvalue {0:.3e})")]
    NotPsd(f64),

    #[error("slot dimensions {dims:?} do not multiply to {size}")]
    Dims { dims: Vec<usize>, size: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("state is not in the tangent set (‖Q_N‖ = {0:.3e})")]
    NotTangent(f64),

    #[error("internal consistency check failed: {0}")]
    Consistency(String),

    #[error("degenerate factor: ‖B‖ = {0:.3e}")]
    DegenerateFactor(f64),

    #[error("no PSD boundary candidate satisfies the admissibility conditions")]
    NoBoundarySolution,
}

pub type Result<T> = std::result::Result<T, Error>;
