use thiserror::Error;

/// 1-based index tuple, as it appears in model files and messages.
pub type Indices = [usize; 4];

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension {0} outside supported range 2..=8")]
    InvalidDimension(usize),
    #[error("components[{index}]: indices {indices:?} out of range for dimension {dimension}")]
    IndexOutOfRange {
        index: usize,
        indices: Indices,
        dimension: usize,
    },
    #[error(
        "components[{index}]: A{indices:?} = {value} conflicts with value {forced} forced by symmetry"
    )]
    ConflictingEntry {
        index: usize,
        indices: Indices,
        value: f64,
        forced: f64,
    },
    #[error("components[{index}]: value is not finite")]
    NonFiniteEntry { index: usize },
    #[error("first Bianchi identity violated at {indices:?} by {residual:e}")]
    BianchiViolation { indices: Indices, residual: f64 },
    #[error("expected {expected} entries, found {found}")]
    ShapeMismatch { expected: usize, found: usize },
    #[error("zero vector")]
    ZeroVector,
    #[error("vector has length {found}, expected {expected}")]
    VectorLength { expected: usize, found: usize },
    #[error("vectors are not orthonormal (deviation {0:e})")]
    NotOrthonormal(f64),
    #[error("matrix is not symmetric (asymmetry {0:e})")]
    NonSymmetric(f64),
    #[error("matrix contains non-finite entries")]
    NonFiniteMatrix,
    #[error("eigensolver did not converge in {0} sweeps")]
    NoConvergence(usize),
    #[error("vector is not in the kernel (|Mx| = {0:e})")]
    KernelViolation(f64),
    #[error("operation requires dimension {expected}, got {found}")]
    WrongDimension { expected: usize, found: usize },
    #[error("basis is not adapted: {relation} residual {residual:e} exceeds {bound:e}")]
    NotAdapted {
        relation: &'static str,
        residual: f64,
        bound: f64,
    },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("malformed model file: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
