use thiserror::Error;

use crate::spectrum::SpectralClass;

/// Everything that can go wrong while building or analyzing small matrices.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EigenError {
    #[error("scalar modes differ: exact and float values cannot be mixed")]
    ModeMismatch,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("unsupported dimension {0}: only 2 and 3 are handled")]
    UnsupportedDimension(usize),
    #[error("cannot normalize the zero vector")]
    ZeroVector,
    #[error("the spectrum contains irrational eigenvalues; rerun in float mode")]
    IrrationalSpectrum,
    #[error("the spectrum contains non-real eigenvalues")]
    ComplexSpectrum,
    #[error("eigenvalue multiplicities sum to {total}, expected {dim}")]
    InconsistentSpectrum { total: usize, dim: usize },
    #[error("extraction for {expected} called on a matrix classified as {found}")]
    ClassMismatch {
        expected: &'static str,
        found: SpectralClass,
    },
    #[error("shifted matrix is not nilpotent of order two: {0}")]
    NotNilpotent(String),
    #[error("matrix is zero")]
    ZeroMatrix,
    #[error("no nonzero column in {0}; the eigenvalues do not match the matrix")]
    NoNonzeroColumn(String),
}

pub type Result<T, E = EigenError> = std::result::Result<T, E>;
