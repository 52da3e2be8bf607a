//! Dense 2×2 / 3×3 matrices and vectors, plus the column and zero-test
//! primitives the extraction engine is built from.

use std::fmt;

use crate::error::{EigenError, Result};
use crate::scalar::Field;
use crate::tolerance::TolerancePolicy;

fn check_dim(dim: usize) -> Result<()> {
    match dim {
        2 | 3 => Ok(()),
        d => Err(EigenError::UnsupportedDimension(d)),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SmallVector<T> {
    entries: Vec<T>,
}

impl<T: Field> SmallVector<T> {
    pub fn new(entries: Vec<T>) -> Result<Self> {
        check_dim(entries.len())?;
        Ok(Self { entries })
    }

    pub fn from_i64(entries: &[i64]) -> Result<Self> {
        Self::new(entries.iter().map(|&x| T::from_i64(x).unwrap()).collect())
    }

    /// Standard basis vector `e_{index+1}`.
    pub fn basis(dim: usize, index: usize) -> Self {
        assert!(dim == 2 || dim == 3, "unsupported dimension {dim}");
        assert!(index < dim);
        Self {
            entries: (0..dim)
                .map(|i| if i == index { T::one() } else { T::zero() })
                .collect(),
        }
    }

    pub fn zero(dim: usize) -> Self {
        assert!(dim == 2 || dim == 3, "unsupported dimension {dim}");
        Self {
            entries: vec![T::zero(); dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn get(&self, i: usize) -> &T {
        &self.entries[i]
    }

    pub fn map<U: Field>(&self, f: impl Fn(&T) -> U) -> SmallVector<U> {
        SmallVector {
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|x| x.clone() * c.clone())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a.clone() - b.clone())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a.clone() + b.clone())
    }

    fn zip(&self, other: &Self, f: impl Fn(&T, &T) -> T) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(EigenError::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(Self {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    pub fn max_abs(&self) -> f64 {
        self.entries
            .iter()
            .map(Field::magnitude)
            .fold(0.0, f64::max)
    }

    /// Euclidean norm, evaluated in `f64`.
    pub fn norm(&self) -> f64 {
        self.entries
            .iter()
            .map(Field::magnitude)
            .fold(0.0, f64::hypot)
    }

    pub fn is_zero(&self, tol: &TolerancePolicy, scale: f64) -> bool {
        let threshold = tol.effective(scale);
        self.entries.iter().all(|x| x.is_negligible(threshold))
    }

    pub fn is_exactly_zero(&self) -> bool {
        self.entries.iter().all(|x| x.is_zero())
    }

    /// 2×2 minors of the pair `[self | other]`; all zero iff the pair is dependent.
    pub fn pair_minors(&self, other: &Self) -> Vec<T> {
        let n = self.dim();
        let mut out = Vec::with_capacity(3);
        for i in 0..n {
            for j in i + 1..n {
                out.push(
                    self.entries[i].clone() * other.entries[j].clone()
                        - self.entries[j].clone() * other.entries[i].clone(),
                );
            }
        }
        out
    }

    /// Linear independence of two vectors by the 2×2 minor test.
    pub fn independent_of(&self, other: &Self, tol: &TolerancePolicy) -> bool {
        let scale = self.max_abs() * other.max_abs();
        let threshold = tol.effective(scale);
        self.pair_minors(other)
            .iter()
            .any(|m| !m.is_negligible(threshold))
    }
}

impl<T: fmt::Display> fmt::Display for SmallVector<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

/// Canonical eigenray representative of `v` (see [`Field::canonical_direction`]).
pub fn normalize_eigenvector<T: Field>(v: &SmallVector<T>) -> Result<SmallVector<T>> {
    T::canonical_direction(&v.entries)
        .map(|entries| SmallVector { entries })
        .ok_or(EigenError::ZeroVector)
}

/// Square matrix of dimension 2 or 3, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SmallMatrix<T> {
    dim: usize,
    entries: Vec<T>,
}

impl<T: Field> SmallMatrix<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let dim = rows.len();
        check_dim(dim)?;
        if let Some(bad) = rows.iter().find(|r| r.len() != dim) {
            return Err(EigenError::DimensionMismatch {
                expected: dim,
                found: bad.len(),
            });
        }
        Ok(Self {
            dim,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| T::from_i64(x).unwrap()).collect())
                .collect(),
        )
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[SmallVector<T>]) -> Result<Self> {
        let dim = cols.len();
        check_dim(dim)?;
        if let Some(bad) = cols.iter().find(|c| c.dim() != dim) {
            return Err(EigenError::DimensionMismatch {
                expected: dim,
                found: bad.dim(),
            });
        }
        let entries = (0..dim)
            .flat_map(|r| cols.iter().map(move |c| c.entries[r].clone()))
            .collect();
        Ok(Self { dim, entries })
    }

    pub fn identity(dim: usize) -> Self {
        Self::diagonal(&vec![T::one(); dim])
    }

    pub fn zero(dim: usize) -> Self {
        assert!(dim == 2 || dim == 3, "unsupported dimension {dim}");
        Self {
            dim,
            entries: vec![T::zero(); dim * dim],
        }
    }

    pub fn diagonal(diag: &[T]) -> Self {
        let mut m = Self::zero(diag.len());
        for (i, d) in diag.iter().enumerate() {
            m.entries[i * m.dim + i] = d.clone();
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> &T {
        &self.entries[row * self.dim + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: T) {
        self.entries[row * self.dim + col] = value;
    }

    pub fn rows(&self) -> impl Iterator<Item = &[T]> {
        self.entries.chunks(self.dim)
    }

    /// Column `col` copied verbatim.
    pub fn column(&self, col: usize) -> SmallVector<T> {
        SmallVector {
            entries: (0..self.dim).map(|r| self.get(r, col).clone()).collect(),
        }
    }

    pub fn columns(&self) -> Vec<SmallVector<T>> {
        (0..self.dim).map(|c| self.column(c)).collect()
    }

    pub fn map<U: Field>(&self, f: impl Fn(&T) -> U) -> SmallMatrix<U> {
        SmallMatrix {
            dim: self.dim,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn try_map<U: Field>(&self, f: impl Fn(&T) -> Result<U>) -> Result<SmallMatrix<U>> {
        Ok(SmallMatrix {
            dim: self.dim,
            entries: self.entries.iter().map(f).collect::<Result<_>>()?,
        })
    }

    fn same_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(EigenError::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(())
    }

    pub fn mat_mul(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        let n = self.dim;
        let mut entries = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in 0..n {
                let mut acc = T::zero();
                for k in 0..n {
                    acc = acc + self.get(r, k).clone() * other.get(k, c).clone();
                }
                entries.push(acc);
            }
        }
        Ok(Self { dim: n, entries })
    }

    pub fn mul_vec(&self, v: &SmallVector<T>) -> Result<SmallVector<T>> {
        if v.dim() != self.dim {
            return Err(EigenError::DimensionMismatch {
                expected: self.dim,
                found: v.dim(),
            });
        }
        Ok(SmallVector {
            entries: self
                .rows()
                .map(|row| {
                    row.iter()
                        .zip(&v.entries)
                        .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
                })
                .collect(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        Ok(Self {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        Ok(Self {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        })
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|x| x.clone() * c.clone())
    }

    /// `A - λI`.
    pub fn shift(&self, lam: &T) -> Self {
        let mut out = self.clone();
        for i in 0..self.dim {
            let v = out.get(i, i).clone() - lam.clone();
            out.set(i, i, v);
        }
        out
    }

    pub fn trace(&self) -> T {
        (0..self.dim).fold(T::zero(), |acc, i| acc + self.get(i, i).clone())
    }

    pub fn determinant(&self) -> T {
        let e = |r, c| self.get(r, c).clone();
        match self.dim {
            2 => e(0, 0) * e(1, 1) - e(0, 1) * e(1, 0),
            _ => {
                e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1))
                    - e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0))
                    + e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0))
            }
        }
    }

    /// Sum of the principal 2×2 minors (3×3), or the determinant (2×2).
    pub fn principal_minor_sum(&self) -> T {
        if self.dim == 2 {
            return self.determinant();
        }
        let e = |r, c| self.get(r, c).clone();
        (e(0, 0) * e(1, 1) - e(0, 1) * e(1, 0))
            + (e(0, 0) * e(2, 2) - e(0, 2) * e(2, 0))
            + (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1))
    }

    /// Adjugate (transpose of the cofactor matrix).
    pub fn adjugate(&self) -> Self {
        let e = |r: usize, c: usize| self.get(r, c).clone();
        let n = self.dim;
        if n == 2 {
            return Self {
                dim: 2,
                entries: vec![e(1, 1), -e(0, 1), -e(1, 0), e(0, 0)],
            };
        }
        let mut out = Self::zero(3);
        for r in 0..3 {
            for c in 0..3 {
                let (r0, r1) = others(r);
                let (c0, c1) = others(c);
                let minor = e(r0, c0) * e(r1, c1) - e(r0, c1) * e(r1, c0);
                let cof = if (r + c) % 2 == 0 { minor } else { -minor };
                out.set(c, r, cof);
            }
        }
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.entries
            .iter()
            .map(Field::magnitude)
            .fold(0.0, f64::max)
    }

    /// Frobenius norm, evaluated in `f64`.
    pub fn norm(&self) -> f64 {
        self.entries
            .iter()
            .map(Field::magnitude)
            .fold(0.0, f64::hypot)
    }

    pub fn threshold(&self, tol: &TolerancePolicy) -> f64 {
        tol.effective(self.max_abs())
    }

    pub fn is_zero(&self, tol: &TolerancePolicy) -> bool {
        let threshold = self.threshold(tol);
        self.entries.iter().all(|x| x.is_negligible(threshold))
    }

    pub fn is_exactly_zero(&self) -> bool {
        self.entries.iter().all(|x| x.is_zero())
    }

    /// Smallest index whose column is not zero under `tol`, with the column.
    pub fn first_nonzero_column(&self, tol: &TolerancePolicy) -> Option<(usize, SmallVector<T>)> {
        let threshold = self.threshold(tol);
        (0..self.dim)
            .map(|c| (c, self.column(c)))
            .find(|(_, col)| col.entries.iter().any(|x| !x.is_negligible(threshold)))
    }

    /// Column used as an eigenvector source: first nonzero for exact fields,
    /// largest Euclidean norm (above threshold) for floats.
    pub fn pick_column(&self, tol: &TolerancePolicy) -> Option<(usize, SmallVector<T>)> {
        if T::EXACT {
            return self.first_nonzero_column(tol);
        }
        let threshold = self.threshold(tol);
        let (idx, norm) = (0..self.dim).map(|c| (c, self.column(c).norm())).fold(
            (0, f64::NEG_INFINITY),
            |best, cur| if cur.1 > best.1 { cur } else { best },
        );
        (norm > threshold).then(|| (idx, self.column(idx)))
    }

    pub fn best_column(&self, tol: &TolerancePolicy) -> Option<SmallVector<T>> {
        self.pick_column(tol).map(|(_, c)| c)
    }
}

fn others(i: usize) -> (usize, usize) {
    match i {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    }
}

impl<T: fmt::Display> fmt::Display for SmallMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (r, row) in self.entries.chunks(self.dim).enumerate() {
            if r > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for (c, x) in row.iter().enumerate() {
                if c > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

pub fn mat_mul<T: Field>(a: &SmallMatrix<T>, b: &SmallMatrix<T>) -> Result<SmallMatrix<T>> {
    a.mat_mul(b)
}

pub fn shift<T: Field>(a: &SmallMatrix<T>, lam: &T) -> SmallMatrix<T> {
    a.shift(lam)
}

pub fn is_zero_matrix<T: Field>(m: &SmallMatrix<T>, tol: &TolerancePolicy) -> bool {
    m.is_zero(tol)
}

pub fn first_nonzero_column<T: Field>(
    m: &SmallMatrix<T>,
    tol: &TolerancePolicy,
) -> Option<(usize, SmallVector<T>)> {
    m.first_nonzero_column(tol)
}

pub fn best_column<T: Field>(m: &SmallMatrix<T>, tol: &TolerancePolicy) -> Option<SmallVector<T>> {
    m.best_column(tol)
}
