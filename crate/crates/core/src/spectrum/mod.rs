//! Characteristic polynomials, eigenvalues with multiplicities, and the
//! product-and-zero-test classification that drives extraction.

pub(crate) mod classify;
mod exact_roots;
mod float_roots;

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{EigenError, Result};
use crate::matrix::SmallMatrix;
use crate::scalar::Field;

pub use classify::classify;
pub(crate) use classify::{classify_traced, shift_label};
pub use exact_roots::eigenvalues_exact;
pub use float_roots::eigenvalues_float;

/// Monic polynomial, coefficients stored constant-first: `c₀ + c₁λ + … + λⁿ`.
#[derive(Debug, Clone, PartialEq)]
pub struct CharPoly<T> {
    coeffs: Vec<T>,
}

impl<T: Field> CharPoly<T> {
    /// Monic polynomial with the given lower coefficients (constant first).
    pub fn monic(lower: Vec<T>) -> Self {
        let mut coeffs = lower;
        coeffs.push(T::one());
        Self { coeffs }
    }

    /// `∏ (λ - rᵢ)^mᵢ`.
    pub fn from_roots(roots: &[(T, usize)]) -> Self {
        let mut coeffs = vec![T::one()];
        for (r, m) in roots {
            for _ in 0..*m {
                let mut next = vec![T::zero(); coeffs.len() + 1];
                for (i, c) in coeffs.iter().enumerate() {
                    next[i + 1] = next[i + 1].clone() + c.clone();
                    next[i] = next[i].clone() - c.clone() * r.clone();
                }
                coeffs = next;
            }
        }
        Self { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn evaluate(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    /// `p(A)` by Horner's scheme in matrix arithmetic.
    pub fn evaluate_at(&self, a: &SmallMatrix<T>) -> Result<SmallMatrix<T>> {
        let n = a.dim();
        let mut acc = SmallMatrix::zero(n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mat_mul(a)?.add(&SmallMatrix::identity(n).scale(c))?;
        }
        Ok(acc)
    }
}

impl<T: Field> fmt::Display for CharPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (power, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let mag = c.abs();
            if first {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            first = false;
            let show_coeff = power == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match power {
                0 => {}
                1 => f.write_str("λ")?,
                p => write!(f, "λ^{p}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Monic characteristic polynomial `det(λI - A)`.
pub fn char_poly<T: Field>(a: &SmallMatrix<T>) -> CharPoly<T> {
    let tr = a.trace();
    let det = a.determinant();
    match a.dim() {
        2 => CharPoly::monic(vec![det, -tr]),
        _ => CharPoly::monic(vec![-det, a.principal_minor_sum(), -tr]),
    }
}

/// Eigenvalues with algebraic multiplicities, sorted ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum<T> {
    entries: Vec<(T, usize)>,
}

impl<T: Field> Spectrum<T> {
    /// Sorts the entries and merges equal eigenvalues. The multiplicities must
    /// sum to `dim`.
    pub fn new(dim: usize, entries: Vec<(T, usize)>) -> Result<Self> {
        let total: usize = entries.iter().map(|e| e.1).sum();
        if total != dim || entries.iter().any(|e| e.1 == 0) {
            return Err(EigenError::InconsistentSpectrum { total, dim });
        }
        let mut entries = entries;
        entries.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(Ordering::Equal));
        let mut merged: Vec<(T, usize)> = Vec::with_capacity(entries.len());
        for (lam, m) in entries {
            match merged.last_mut() {
                Some(last) if last.0 == lam => last.1 += m,
                _ => merged.push((lam, m)),
            }
        }
        Ok(Self { entries: merged })
    }

    pub fn entries(&self) -> &[(T, usize)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.entries.iter().map(|e| e.1).sum()
    }

    pub fn eigenvalues(&self) -> impl Iterator<Item = &T> {
        self.entries.iter().map(|e| &e.0)
    }

    pub fn multiplicity(&self, lam: &T) -> Option<usize> {
        self.entries.iter().find(|e| &e.0 == lam).map(|e| e.1)
    }
}

impl<T: Field> fmt::Display for Spectrum<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (lam, m)) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{lam} (x{m})")?;
        }
        f.write_str("}")
    }
}

/// Multiplicity pattern of a spectrum together with the geometric
/// multiplicity of its repeated eigenvalue.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpectralClass {
    Distinct2,
    Double2 { geo: u8 },
    Distinct3,
    SimplePlusDouble { geo_of_double: u8 },
    Triple { geo: u8 },
}

impl SpectralClass {
    pub const ALL: [SpectralClass; 9] = [
        SpectralClass::Distinct2,
        SpectralClass::Double2 { geo: 1 },
        SpectralClass::Double2 { geo: 2 },
        SpectralClass::Distinct3,
        SpectralClass::SimplePlusDouble { geo_of_double: 1 },
        SpectralClass::SimplePlusDouble { geo_of_double: 2 },
        SpectralClass::Triple { geo: 1 },
        SpectralClass::Triple { geo: 2 },
        SpectralClass::Triple { geo: 3 },
    ];

    pub fn dim(&self) -> usize {
        match self {
            SpectralClass::Distinct2 | SpectralClass::Double2 { .. } => 2,
            _ => 3,
        }
    }

    /// Name of the extraction routine family that handles this class.
    pub fn family(&self) -> &'static str {
        match self {
            SpectralClass::Distinct2 => "Distinct2",
            SpectralClass::Double2 { .. } => "Double2",
            SpectralClass::Distinct3 => "Distinct3",
            SpectralClass::SimplePlusDouble { .. } => "SimplePlusDouble",
            SpectralClass::Triple { .. } => "Triple",
        }
    }
}

impl fmt::Display for SpectralClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpectralClass::Distinct2 => f.write_str("Distinct2"),
            SpectralClass::Double2 { geo } => write!(f, "Double2(geo {geo})"),
            SpectralClass::Distinct3 => f.write_str("Distinct3"),
            SpectralClass::SimplePlusDouble { geo_of_double } => {
                write!(f, "SimplePlusDouble(geo {geo_of_double})")
            }
            SpectralClass::Triple { geo } => write!(f, "Triple(geo {geo})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown spectral class {0:?}")]
pub struct ParseClassError(pub String);

impl FromStr for SpectralClass {
    type Err = ParseClassError;

    /// Accepts the display form (`Triple(geo 2)`) and a compact form (`triple-2`).
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let key: String = s
            .chars()
            .filter(|c| c.is_ascii_alphanumeric())
            .collect::<String>()
            .to_ascii_lowercase()
            .replace("geo", "");
        SpectralClass::ALL
            .into_iter()
            .find(|c| {
                let canon: String = c
                    .to_string()
                    .chars()
                    .filter(|c| c.is_ascii_alphanumeric())
                    .collect::<String>()
                    .to_ascii_lowercase()
                    .replace("geo", "");
                canon == key
            })
            .ok_or_else(|| ParseClassError(s.to_owned()))
    }
}
