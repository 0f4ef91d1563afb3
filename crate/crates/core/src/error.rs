use thiserror::Error;

use crate::sympoly::RootDiagnostics;

/// Errors raised across the toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("not Hermitian: max |A[i,j] - conj(A[j,i])| = {residual:e} exceeds {tolerance:e}")]
    NotHermitian { residual: f64, tolerance: f64 },

    #[error("not unit trace: |Tr(A) - 1| = {residual:e} exceeds {tolerance:e}")]
    NotUnitTrace { residual: f64, tolerance: f64 },

    #[error("not positive semidefinite: min eigenvalue {min_eigenvalue:e} below -{tolerance:e}")]
    NotPsd { min_eigenvalue: f64, tolerance: f64 },

    #[error("Hermitian eigensolver did not converge")]
    ConvergenceFailure,

    #[error("size cap exceeded: requested dimension {requested} > cap {cap}")]
    SizeCapExceeded { requested: usize, cap: usize },

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid spectrum: {0}")]
    InvalidSpectrum(String),

    #[error("invalid state vector: norm {norm} is not 1")]
    NotNormalized { norm: f64 },

    #[error("polynomial has complex roots (max |Im| = {:.4})", .diagnostics.max_imag)]
    ComplexRoots { diagnostics: RootDiagnostics },

    #[error("root finder did not converge (residual {residual:e})")]
    NoConvergence { residual: f64 },

    #[error("posterior given outcome {outcome} is undefined: the outcome has zero probability")]
    UndefinedPosterior { outcome: u8 },

    #[error("invalid prior ensemble: {0}")]
    InvalidEnsemble(String),

    #[error("copy budget {budget} too small: at least {required} copies needed")]
    BudgetTooSmall { budget: u64, required: u64 },

    #[error("experiment record has no group with k = {k}")]
    MissingGroup { k: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
