//! Column structure of a nonzero `B` with `B² = 0` (3×3).
//!
//! Such a `B` has rank one, so every column is a multiple of the first
//! nonzero one. Which column that is selects one of three cases, each with a
//! closed-form test for `B² = 0` and an explicit kernel basis:
//!
//! | case | columns            | condition      | kernel basis             | generalized |
//! |------|--------------------|----------------|--------------------------|-------------|
//! | 1    | `(v │ tv │ sv)`    | `x + ty + sz = 0` | `(-t,1,0)`, `(-s,0,1)` | `e₁`        |
//! | 2    | `(0 │ v │ tv)`     | `y + tz = 0`   | `(0,-t,1)`, `e₁`         | `e₂`        |
//! | 3    | `(0 │ 0 │ v)`      | `z = 0`        | `e₁`, `e₂`               | `e₃`        |
//!
//! with `v = (x, y, z)` the pivot column.

use crate::error::{EigenError, Result};
use crate::matrix::{SmallMatrix, SmallVector};
use crate::scalar::Field;
use crate::tolerance::TolerancePolicy;

#[derive(Debug, Clone, PartialEq)]
pub struct ColumnCaseProfile<T> {
    /// 1, 2 or 3: one more than the index of the first nonzero column.
    pub case_id: u8,
    pub pivot_index: usize,
    /// The first nonzero column `v = (x, y, z)`.
    pub pivot_column: SmallVector<T>,
    /// Ratio of the next column to the pivot (cases 1 and 2).
    pub t: Option<T>,
    /// Ratio of the third column to the pivot (case 1).
    pub s: Option<T>,
    /// `x + ty + sz`, `y + tz`, or `z`, depending on the case.
    pub condition_value: T,
    /// Kernel basis in the closed form of the case (not normalized).
    pub eigenbasis: [SmallVector<T>; 2],
    /// Eigenvector of the length-two chain: `B · generalized`, the pivot column.
    pub eigenvector: SmallVector<T>,
    /// Standard basis vector mapped by `B` onto the pivot column.
    pub generalized: SmallVector<T>,
}

/// Ratio `num / den` read off at the pivot entry of `den`.
fn ratio<T: Field>(num: &SmallVector<T>, den: &SmallVector<T>, pivot: usize) -> T {
    num.get(pivot).clone() / den.get(pivot).clone()
}

/// Entry used to read ratios: first nonzero entry (exact), largest entry (float).
fn pivot_entry<T: Field>(v: &SmallVector<T>) -> usize {
    if T::EXACT {
        return v.entries().iter().position(|x| !x.is_zero()).unwrap_or(0);
    }
    v.entries()
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.magnitude().total_cmp(&b.1.magnitude()))
        .map(|(i, _)| i)
        .unwrap_or(0)
}

fn check_proportional<T: Field>(
    col: &SmallVector<T>,
    pivot: &SmallVector<T>,
    factor: &T,
    threshold: f64,
    which: usize,
) -> Result<()> {
    let residual = col.sub(&pivot.scale(factor))?;
    if residual
        .entries()
        .iter()
        .all(|x| x.is_negligible(threshold))
    {
        Ok(())
    } else {
        Err(EigenError::NotNilpotent(format!(
            "column {which} = {col} is not a multiple of the pivot column {pivot}"
        )))
    }
}

/// Classifies the column pattern of a nonzero 3×3 `B` and verifies `B² = 0`
/// through the case condition.
pub fn column_case_profile<T: Field>(
    b: &SmallMatrix<T>,
    tol: &TolerancePolicy,
) -> Result<ColumnCaseProfile<T>> {
    if b.dim() != 3 {
        return Err(EigenError::DimensionMismatch {
            expected: 3,
            found: b.dim(),
        });
    }
    let (index, v) = b.first_nonzero_column(tol).ok_or(EigenError::ZeroMatrix)?;
    let threshold = b.threshold(tol);
    let (x, y, z) = (v.get(0).clone(), v.get(1).clone(), v.get(2).clone());
    let e = |i| SmallVector::<T>::basis(3, i);
    let zero = T::zero;
    let one = T::one;
    let vec3 = |a: T, b: T, c: T| SmallVector::new(vec![a, b, c]).expect("dimension 3");

    let profile = match index {
        0 => {
            let p = pivot_entry(&v);
            let t = ratio(&b.column(1), &v, p);
            let s = ratio(&b.column(2), &v, p);
            check_proportional(&b.column(1), &v, &t, threshold, 1)?;
            check_proportional(&b.column(2), &v, &s, threshold, 2)?;
            let cond = x + t.clone() * y + s.clone() * z;
            let scale = 1.0 + t.magnitude() + s.magnitude();
            if !cond.is_negligible(threshold * scale) {
                return Err(EigenError::NotNilpotent(format!(
                    "x + ty + sz = {cond} is nonzero (t = {t}, s = {s})"
                )));
            }
            ColumnCaseProfile {
                case_id: 1,
                pivot_index: 0,
                pivot_column: v.clone(),
                eigenbasis: [
                    vec3(-t.clone(), one(), zero()),
                    vec3(-s.clone(), zero(), one()),
                ],
                t: Some(t),
                s: Some(s),
                condition_value: cond,
                eigenvector: v,
                generalized: e(0),
            }
        }
        1 => {
            let p = pivot_entry(&v);
            let t = ratio(&b.column(2), &v, p);
            check_proportional(&b.column(2), &v, &t, threshold, 2)?;
            let cond = y + t.clone() * z;
            if !cond.is_negligible(threshold * (1.0 + t.magnitude())) {
                return Err(EigenError::NotNilpotent(format!(
                    "y + tz = {cond} is nonzero (t = {t})"
                )));
            }
            ColumnCaseProfile {
                case_id: 2,
                pivot_index: 1,
                pivot_column: v.clone(),
                eigenbasis: [vec3(zero(), -t.clone(), one()), e(0)],
                t: Some(t),
                s: None,
                condition_value: cond,
                eigenvector: v,
                generalized: e(1),
            }
        }
        _ => {
            if !z.is_negligible(threshold) {
                return Err(EigenError::NotNilpotent(format!(
                    "third column {v} has nonzero last entry"
                )));
            }
            ColumnCaseProfile {
                case_id: 3,
                pivot_index: 2,
                pivot_column: v.clone(),
                eigenbasis: [e(0), e(1)],
                t: None,
                s: None,
                condition_value: z,
                eigenvector: v,
                generalized: e(2),
            }
        }
    };
    Ok(profile)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{ExactMatrix, ExactVector, FloatMatrix, Rational};

    fn int(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn m(rows: &[&[i64]]) -> ExactMatrix {
        ExactMatrix::from_i64(rows).unwrap()
    }

    fn v(e: &[i64]) -> ExactVector {
        ExactVector::from_i64(e).unwrap()
    }

    #[test]
    fn case_one() {
        let b = m(&[&[-5, 5, -10], &[-1, 1, -2], &[2, -2, 4]]);
        let p = column_case_profile(&b, &TolerancePolicy::default()).unwrap();
        assert_eq!(p.case_id, 1);
        assert_eq!(p.t, Some(int(-1)));
        assert_eq!(p.s, Some(int(2)));
        assert_eq!(p.condition_value, int(0));
        assert_eq!(p.eigenbasis, [v(&[1, 1, 0]), v(&[-2, 0, 1])]);
        assert_eq!(p.generalized, v(&[1, 0, 0]));
        assert_eq!(b.mul_vec(&p.generalized).unwrap(), p.eigenvector);
    }

    #[test]
    fn case_two() {
        let b = m(&[&[0, -1, 2], &[0, -6, 12], &[0, -3, 6]]);
        let p = column_case_profile(&b, &TolerancePolicy::default()).unwrap();
        assert_eq!(p.case_id, 2);
        assert_eq!(p.t, Some(int(-2)));
        assert_eq!(p.condition_value, int(0));
        assert_eq!(p.eigenbasis, [v(&[0, 2, 1]), v(&[1, 0, 0])]);
        assert_eq!(p.eigenvector, v(&[-1, -6, -3]));
        assert_eq!(p.generalized, v(&[0, 1, 0]));
    }

    #[test]
    fn case_three() {
        let b = m(&[&[0, 0, 4], &[0, 0, -7], &[0, 0, 0]]);
        let p = column_case_profile(&b, &TolerancePolicy::default()).unwrap();
        assert_eq!(p.case_id, 3);
        assert_eq!(p.eigenbasis, [v(&[1, 0, 0]), v(&[0, 1, 0])]);
        assert_eq!(p.eigenvector, v(&[4, -7, 0]));
        assert_eq!(p.generalized, v(&[0, 0, 1]));
    }

    #[test]
    fn rejections() {
        let tol = TolerancePolicy::default();
        let ones = m(&[&[1, 1, 1], &[1, 1, 1], &[1, 1, 1]]);
        assert!(matches!(
            column_case_profile(&ones, &tol),
            Err(EigenError::NotNilpotent(_))
        ));
        // rank two: columns not proportional
        let b = m(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
        assert!(matches!(
            column_case_profile(&b, &tol),
            Err(EigenError::NotNilpotent(_))
        ));
        let b = m(&[&[0, 0, 1], &[0, 0, 1], &[0, 0, 1]]);
        assert!(matches!(
            column_case_profile(&b, &tol),
            Err(EigenError::NotNilpotent(_))
        ));
        assert_eq!(
            column_case_profile(&ExactMatrix::zero(3), &tol),
            Err(EigenError::ZeroMatrix)
        );
        assert!(matches!(
            column_case_profile(&ExactMatrix::zero(2), &tol),
            Err(EigenError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn float_case_one_within_tolerance() {
        let b = FloatMatrix::from_rows(vec![
            vec![-5.0, 5.0 + 1e-12, -10.0],
            vec![-1.0, 1.0, -2.0],
            vec![2.0, -2.0, 4.0],
        ])
        .unwrap();
        let p = column_case_profile(&b, &TolerancePolicy::default()).unwrap();
        assert_eq!(p.case_id, 1);
        assert!((p.t.unwrap() + 1.0).abs() < 1e-9);
        assert!((p.s.unwrap() - 2.0).abs() < 1e-9);
    }

    use proptest::prelude::*;

    proptest! {
        /// Every member of the case-1 family `(v | tv | sv)` with
        /// `x = -ty - sz` squares to zero and is profiled as case 1.
        #[test]
        fn case_one_family_is_nilpotent(
            t in -9i64..9, s in -9i64..9, y in -9i64..9, z in -9i64..9
        ) {
            prop_assume!(y != 0 || z != 0);
            let x = -t * y - s * z;
            prop_assume!(x != 0 || y != 0 || z != 0);
            let b = m(&[&[x, t * x, s * x], &[y, t * y, s * y], &[z, t * z, s * z]]);
            prop_assert!(b.mat_mul(&b).unwrap().is_zero(&TolerancePolicy::default()));
            let p = column_case_profile(&b, &TolerancePolicy::default()).unwrap();
            prop_assert_eq!(p.case_id, 1);
            for u in &p.eigenbasis {
                prop_assert!(b.mul_vec(u).unwrap().is_exactly_zero());
            }
        }
    }
}
