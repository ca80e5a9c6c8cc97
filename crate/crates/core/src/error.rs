use alloc::string::String;

/// Errors raised by the algebraic and numerical routines of this crate.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("the exponential is transcendental and needs float mode")]
    ExactExponential,
    #[error("dimension {dim} exceeds the configured cap {cap}")]
    DimTooLarge { dim: usize, cap: usize },
    #[error("subspace is not an ideal")]
    NotAnIdeal,
    #[error("scalar modes differ")]
    ModeMismatch,
    #[error("grid size {grid} too small for {constraint}")]
    GridTooSmall { grid: usize, constraint: &'static str },
    #[error("involution defect: |theta^2 - I| = {defect:e}")]
    InvolutionDefect { defect: f64 },
    #[error("theta is not an automorphism (violation {defect:e})")]
    NotAutomorphism { defect: f64 },
    #[error("closure defect: {0}")]
    ClosureDefect(String),
    #[error("input fails the Lie triple system axioms: {0}")]
    AxiomDefect(String),
    #[error("input fails the Jacobi identity at {0:?}")]
    JacobiDefect([usize; 3]),
    #[error("vector is not in the (-1)-eigenspace (residual {residual:e})")]
    NotInMinusSpace { residual: f64 },
    #[error("vector is not central (residual {residual:e})")]
    NotCentral { residual: f64 },
    #[error("direction does not lie in the center (residual {residual:e})")]
    CenterMismatch { residual: f64 },
    #[error("at most {max} generators supported, got {found}")]
    TooManyGenerators { max: usize, found: usize },
    #[error("ideal is not contained in the ambient space")]
    IdealOutsideAmbient,
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = core::result::Result<T, Error>;
