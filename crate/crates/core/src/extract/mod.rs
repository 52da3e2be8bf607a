//! Eigenspace bases and Jordan chains from columns of shifted-matrix
//! products, one routine per [`SpectralClass`].

mod profile;
mod three;
mod two;
mod verify;

use std::fmt;

use crate::error::{EigenError, Result};
use crate::matrix::{normalize_eigenvector, SmallMatrix, SmallVector};
use crate::scalar::Field;
use crate::spectrum::{char_poly, classify_traced, SpectralClass, Spectrum};
use crate::tolerance::TolerancePolicy;
use crate::trace::ExtractionTrace;

pub use profile::{column_case_profile, ColumnCaseProfile};
pub use verify::{verify_structure, Check, VerificationReport};

/// `[v, w, …]` with `(A - λI)v = 0` and `(A - λI)` mapping each later
/// vector onto its predecessor.
#[derive(Debug, Clone, PartialEq)]
pub struct JordanChain<T> {
    pub eigenvalue: T,
    pub vectors: Vec<SmallVector<T>>,
}

impl<T: Field> JordanChain<T> {
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn eigenvector(&self) -> &SmallVector<T> {
        &self.vectors[0]
    }
}

impl<T: Field> fmt::Display for JordanChain<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "λ = {}: ", self.eigenvalue)?;
        for (i, v) in self.vectors.iter().enumerate() {
            if i > 0 {
                f.write_str(" <- ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Everything known about one eigenvalue.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenRecord<T> {
    pub eigenvalue: T,
    pub algebraic: usize,
    pub geometric: usize,
    /// Canonical (normalized) eigenvectors spanning the eigenspace.
    pub basis: Vec<SmallVector<T>>,
    pub chains: Vec<JordanChain<T>>,
}

impl<T: Field> EigenRecord<T> {
    pub(crate) fn new(
        eigenvalue: T,
        algebraic: usize,
        basis: Vec<SmallVector<T>>,
        chains: Vec<JordanChain<T>>,
    ) -> Self {
        Self {
            eigenvalue,
            algebraic,
            geometric: basis.len(),
            basis,
            chains,
        }
    }

    /// Diagonalizable eigenvalue: every basis vector is its own chain.
    pub(crate) fn semisimple(eigenvalue: T, basis: Vec<SmallVector<T>>) -> Self {
        let chains = basis
            .iter()
            .map(|v| JordanChain {
                eigenvalue: eigenvalue.clone(),
                vectors: vec![v.clone()],
            })
            .collect();
        Self::new(eigenvalue, basis.len(), basis, chains)
    }

    pub fn chain_length_total(&self) -> usize {
        self.chains.iter().map(JordanChain::len).sum()
    }
}

/// Complete eigenstructure of a 2×2 or 3×3 matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenStructure<T> {
    pub dim: usize,
    pub class: SpectralClass,
    /// One record per distinct eigenvalue, ascending.
    pub eigenspaces: Vec<EigenRecord<T>>,
    /// Column pattern of `B = A - λI` in the triple, two-dimensional case.
    pub profile: Option<ColumnCaseProfile<T>>,
    pub trace: ExtractionTrace,
}

impl<T: Field> EigenStructure<T> {
    pub fn record(&self, eigenvalue: &T) -> Option<&EigenRecord<T>> {
        self.eigenspaces
            .iter()
            .find(|r| &r.eigenvalue == eigenvalue)
    }

    pub fn eigenvalues(&self) -> impl Iterator<Item = &T> {
        self.eigenspaces.iter().map(|r| &r.eigenvalue)
    }

    pub fn chains(&self) -> impl Iterator<Item = &JordanChain<T>> {
        self.eigenspaces.iter().flat_map(|r| r.chains.iter())
    }
}

pub(crate) fn normalized<T: Field>(v: &SmallVector<T>) -> Result<SmallVector<T>> {
    normalize_eigenvector(v)
}

pub(crate) fn standard_basis<T: Field>(dim: usize) -> Vec<SmallVector<T>> {
    (0..dim).map(|i| SmallVector::basis(dim, i)).collect()
}

/// Column of `m` to use as an eigenvector source, or an error naming the product.
pub(crate) fn required_column<T: Field>(
    m: &SmallMatrix<T>,
    tol: &TolerancePolicy,
    what: &str,
) -> Result<(usize, SmallVector<T>)> {
    m.pick_column(tol)
        .ok_or_else(|| EigenError::NoNonzeroColumn(format!("{what} = {m}")))
}

fn ensure_family(found: SpectralClass, expected: &'static str) -> Result<()> {
    if found.family() == expected {
        Ok(())
    } else {
        Err(EigenError::ClassMismatch { expected, found })
    }
}

fn dispatch<T: Field>(
    a: &SmallMatrix<T>,
    spectrum: &Spectrum<T>,
    class: SpectralClass,
    tol: &TolerancePolicy,
    mut trace: ExtractionTrace,
) -> Result<EigenStructure<T>> {
    let mut profile = None;
    let mut eigenspaces = match class {
        SpectralClass::Distinct2 => two::distinct(a, spectrum, tol, &mut trace)?,
        SpectralClass::Double2 { geo } => two::double(a, spectrum, geo, tol, &mut trace)?,
        SpectralClass::Distinct3 => three::distinct(a, spectrum, tol, &mut trace)?,
        SpectralClass::SimplePlusDouble { geo_of_double } => {
            three::simple_double(a, spectrum, geo_of_double, tol, &mut trace)?
        }
        SpectralClass::Triple { geo } => {
            let (records, p) = three::triple(a, spectrum, geo, tol, &mut trace)?;
            profile = p;
            records
        }
    };
    eigenspaces.sort_by(|x, y| {
        x.eigenvalue
            .partial_cmp(&y.eigenvalue)
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    Ok(EigenStructure {
        dim: a.dim(),
        class,
        eigenspaces,
        profile,
        trace,
    })
}

fn extract_checked<T: Field>(
    a: &SmallMatrix<T>,
    spectrum: &Spectrum<T>,
    tol: &TolerancePolicy,
    family: &'static str,
) -> Result<EigenStructure<T>> {
    let mut trace = ExtractionTrace::new();
    let class = classify_traced(a, spectrum, tol, &mut trace)?;
    ensure_family(class, family)?;
    dispatch(a, spectrum, class, tol, trace)
}

/// 2×2, distinct eigenvalues: columns of `B₁` are eigenvectors of `λ₂` and vice versa.
pub fn extract_2x2_distinct<T: Field>(
    a: &SmallMatrix<T>,
    spectrum: &Spectrum<T>,
    tol: &TolerancePolicy,
) -> Result<EigenStructure<T>> {
    extract_checked(a, spectrum, tol, "Distinct2")
}

/// 2×2, double eigenvalue: standard basis if `B = 0`, else the chain `[Bw, w]`.
pub fn extract_2x2_double<T: Field>(
    a: &SmallMatrix<T>,
    spectrum: &Spectrum<T>,
    tol: &TolerancePolicy,
) -> Result<EigenStructure<T>> {
    extract_checked(a, spectrum, tol, "Double2")
}

/// 3×3, distinct eigenvalues: columns of `BᵢBⱼ` are eigenvectors of `λₖ`.
pub fn extract_3x3_distinct<T: Field>(
    a: &SmallMatrix<T>,
    spectrum: &Spectrum<T>,
    tol: &TolerancePolicy,
) -> Result<EigenStructure<T>> {
    extract_checked(a, spectrum, tol, "Distinct3")
}

/// 3×3 with a simple eigenvalue `λ₁` and a double eigenvalue `λ₂`.
pub fn extract_3x3_simple_double<T: Field>(
    a: &SmallMatrix<T>,
    spectrum: &Spectrum<T>,
    tol: &TolerancePolicy,
) -> Result<EigenStructure<T>> {
    extract_checked(a, spectrum, tol, "SimplePlusDouble")
}

/// 3×3 with a triple eigenvalue, any geometric multiplicity.
pub fn extract_3x3_triple<T: Field>(
    a: &SmallMatrix<T>,
    spectrum: &Spectrum<T>,
    tol: &TolerancePolicy,
) -> Result<EigenStructure<T>> {
    extract_checked(a, spectrum, tol, "Triple")
}

/// Full pipeline: characteristic polynomial, eigenvalues, classification,
/// then column extraction. Never eliminates or solves a linear system.
pub fn analyze<T: Field>(a: &SmallMatrix<T>, tol: &TolerancePolicy) -> Result<EigenStructure<T>> {
    let mut trace = ExtractionTrace::new();
    let p = char_poly(a);
    trace.push(format!("characteristic polynomial: {p}"));
    let spectrum = T::solve_char_poly(&p, tol)?;
    trace.push(format!("eigenvalues: {spectrum}"));
    let class = classify_traced(a, &spectrum, tol, &mut trace)?;
    dispatch(a, &spectrum, class, tol, trace)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{eigenvalues_exact, ExactMatrix, ExactVector, Rational};

    #[test]
    fn extractors_reject_other_classes() {
        let a = ExactMatrix::from_i64(&[&[4, 1], &[2, 5]]).unwrap();
        let s = eigenvalues_exact(&char_poly(&a)).unwrap();
        let tol = TolerancePolicy::default();
        assert!(extract_2x2_distinct(&a, &s, &tol).is_ok());
        assert_eq!(
            extract_2x2_double(&a, &s, &tol),
            Err(EigenError::ClassMismatch {
                expected: "Double2",
                found: SpectralClass::Distinct2
            })
        );
        let b = ExactMatrix::identity(3);
        let sb = eigenvalues_exact(&char_poly(&b)).unwrap();
        assert!(matches!(
            extract_3x3_distinct(&b, &sb, &tol),
            Err(EigenError::ClassMismatch { .. })
        ));
        assert!(extract_3x3_triple(&b, &sb, &tol).is_ok());
    }

    #[test]
    fn chain_display() {
        let chain = JordanChain {
            eigenvalue: Rational::from_integer(3.into()),
            vectors: vec![
                ExactVector::from_i64(&[-1, -1]).unwrap(),
                ExactVector::from_i64(&[1, 0]).unwrap(),
            ],
        };
        assert_eq!(chain.to_string(), "λ = 3: (-1, -1) <- (1, 0)");
    }
}
