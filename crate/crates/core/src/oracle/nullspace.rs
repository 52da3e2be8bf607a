use num_traits::Zero;

use crate::error::{EigenError, Result};
use crate::{ExactMatrix, ExactVector, Rational};

/// Basis of `ker M`, one vector per free column of the reduced row echelon form.
#[derive(Debug, Clone, PartialEq)]
pub struct NullSpaceBasis {
    pub vectors: Vec<ExactVector>,
}

impl NullSpaceBasis {
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }
}

/// Reduced row echelon form in place; returns the pivot columns.
fn rref(rows: &mut [Vec<Rational>]) -> Vec<usize> {
    let width = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..width {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

pub fn matrix_rank(m: &ExactMatrix) -> usize {
    let mut rows: Vec<Vec<Rational>> = m.rows().map(<[Rational]>::to_vec).collect();
    rref(&mut rows).len()
}

/// Rank of a set of vectors (all of one dimension).
pub fn rank(vectors: &[ExactVector]) -> usize {
    let mut rows: Vec<Vec<Rational>> = vectors.iter().map(|v| v.entries().to_vec()).collect();
    rref(&mut rows).len()
}

pub fn null_space(m: &ExactMatrix) -> NullSpaceBasis {
    let n = m.dim();
    let mut rows: Vec<Vec<Rational>> = m.rows().map(<[Rational]>::to_vec).collect();
    let pivots = rref(&mut rows);
    let vectors = (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut x = vec![Rational::zero(); n];
            x[free] = Rational::from_integer(1.into());
            for (r, &pc) in pivots.iter().enumerate() {
                x[pc] = -rows[r][free].clone();
            }
            ExactVector::new(x).expect("matrix dimension is valid")
        })
        .collect();
    NullSpaceBasis { vectors }
}

/// Whether `u` and `v` generate the same subspace.
pub fn spans_equal(u: &[ExactVector], v: &[ExactVector]) -> Result<bool> {
    let mut dims = u.iter().chain(v).map(ExactVector::dim);
    if let Some(first) = dims.next() {
        if let Some(bad) = dims.find(|&d| d != first) {
            return Err(EigenError::DimensionMismatch {
                expected: first,
                found: bad,
            });
        }
    }
    let ru = rank(u);
    let rv = rank(v);
    let both: Vec<ExactVector> = u.iter().chain(v).cloned().collect();
    Ok(ru == rv && rank(&both) == ru)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> ExactMatrix {
        ExactMatrix::from_i64(rows).unwrap()
    }

    fn v(e: &[i64]) -> ExactVector {
        ExactVector::from_i64(e).unwrap()
    }

    #[test]
    fn null_space_examples() {
        let ns = null_space(&m(&[&[1, 1], &[2, 2]]));
        assert_eq!(ns.dim(), 1);
        assert!(spans_equal(&ns.vectors, &[v(&[-1, 1])]).unwrap());

        assert_eq!(null_space(&ExactMatrix::identity(3)).dim(), 0);

        let ns = null_space(&m(&[&[3, -9, -6], &[-6, 6, 6], &[12, -18, -15]]));
        assert_eq!(ns.dim(), 1);
        assert!(spans_equal(&ns.vectors, &[v(&[1, -1, 2])]).unwrap());

        assert_eq!(null_space(&ExactMatrix::zero(3)).dim(), 3);
    }

    #[test]
    fn spans_equal_examples() {
        assert!(spans_equal(&[v(&[1, 2])], &[v(&[2, 4])]).unwrap());
        assert!(!spans_equal(&[v(&[1, 0]), v(&[0, 1])], &[v(&[1, 1])]).unwrap());
        assert!(spans_equal(&[], &[]).unwrap());
        assert_eq!(
            spans_equal(&[v(&[1, 2])], &[v(&[1, 2, 3])]),
            Err(EigenError::DimensionMismatch {
                expected: 2,
                found: 3
            })
        );
    }

    #[test]
    fn columns_of_b1_span_the_double_eigenspace() {
        let a = m(&[&[4, -9, -6], &[-6, 7, 6], &[12, -18, -14]]);
        let b1 = a.shift(&Rational::from_integer(1.into()));
        let b2 = a.shift(&Rational::from_integer((-2).into()));
        assert!(spans_equal(&b1.columns(), &null_space(&b2).vectors).unwrap());
    }

    fn small_matrix() -> impl Strategy<Value = ExactMatrix> {
        (2usize..=3).prop_flat_map(|n| {
            proptest::collection::vec(-3i64..=3, n * n).prop_map(move |e| {
                let rows: Vec<Vec<Rational>> = e
                    .chunks(n)
                    .map(|r| {
                        r.iter()
                            .map(|&x| Rational::from_integer(x.into()))
                            .collect()
                    })
                    .collect();
                ExactMatrix::from_rows(rows).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn null_space_vectors_are_annihilated(a in small_matrix()) {
            let ns = null_space(&a);
            prop_assert_eq!(ns.dim(), a.dim() - matrix_rank(&a));
            for x in &ns.vectors {
                prop_assert!(a.mul_vec(x).unwrap().is_exactly_zero());
            }
            prop_assert_eq!(rank(&ns.vectors), ns.dim());
        }

        #[test]
        fn spans_equal_is_an_equivalence(
            a in proptest::collection::vec(proptest::collection::vec(-2i64..=2, 3), 1..3),
            b in proptest::collection::vec(proptest::collection::vec(-2i64..=2, 3), 1..3),
            c in proptest::collection::vec(proptest::collection::vec(-2i64..=2, 3), 1..3),
        ) {
            let to = |s: &Vec<Vec<i64>>| s.iter().map(|e| v(e)).collect::<Vec<_>>();
            let (a, b, c) = (to(&a), to(&b), to(&c));
            prop_assert!(spans_equal(&a, &a).unwrap());
            prop_assert_eq!(spans_equal(&a, &b).unwrap(), spans_equal(&b, &a).unwrap());
            if spans_equal(&a, &b).unwrap() && spans_equal(&b, &c).unwrap() {
                prop_assert!(spans_equal(&a, &c).unwrap());
            }
        }
    }
}
