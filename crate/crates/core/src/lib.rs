//! Eigenvalues, eigenspace bases and Jordan chains of real 2×2 and 3×3
//! matrices, computed from products of shifted matrices `A - λI` and the
//! columns they contain. No elimination or linear-system solving is used on
//! the extraction path; [`oracle`] holds an independent elimination-based
//! reference used for cross-checking.
//!
//! All algorithms are generic over [`Field`], implemented for exact
//! rationals ([`Rational`]) and for `f64`/`f32`.
//!
//! ```
//! use ch_eigen::{analyze, ExactMatrix, TolerancePolicy};
//!
//! let a = ExactMatrix::from_i64(&[&[4, 1], &[2, 5]]).unwrap();
//! let es = analyze(&a, &TolerancePolicy::default()).unwrap();
//! assert_eq!(es.eigenspaces.len(), 2);
//! ```

pub mod error;
pub mod extract;
pub mod matrix;
pub mod oracle;
pub mod scalar;
pub mod spectrum;
pub mod tolerance;
pub mod trace;

pub use error::{EigenError, Result};
pub use extract::{
    analyze, column_case_profile, extract_2x2_distinct, extract_2x2_double, extract_3x3_distinct,
    extract_3x3_simple_double, extract_3x3_triple, verify_structure, ColumnCaseProfile,
    EigenRecord, EigenStructure, JordanChain, VerificationReport,
};
pub use matrix::{
    best_column, first_nonzero_column, is_zero_matrix, mat_mul, normalize_eigenvector, shift,
    SmallMatrix, SmallVector,
};
pub use scalar::{canonicalize, DynMatrix, Field, Scalar};
pub use spectrum::{
    char_poly, classify, eigenvalues_exact, eigenvalues_float, CharPoly, SpectralClass, Spectrum,
};
pub use tolerance::TolerancePolicy;
pub use trace::ExtractionTrace;

/// Arbitrary-precision rational scalar used by the exact pipeline.
pub type Rational = num_rational::BigRational;

pub type ExactMatrix = SmallMatrix<Rational>;
pub type ExactVector = SmallVector<Rational>;
pub type ExactStructure = EigenStructure<Rational>;

pub type FloatMatrix = SmallMatrix<f64>;
pub type FloatVector = SmallVector<f64>;
pub type FloatStructure = EigenStructure<f64>;

pub type Float32Matrix = SmallMatrix<f32>;
