use super::nullspace::{null_space, rank};
use crate::error::{EigenError, Result};
use crate::extract::{EigenRecord, EigenStructure, JordanChain};
use crate::matrix::normalize_eigenvector;
use crate::spectrum::{SpectralClass, Spectrum};
use crate::trace::ExtractionTrace;
use crate::{ExactMatrix, ExactVector, Rational};

/// Classical eigensolver: eigenspaces as null spaces of `A - λI`, Jordan
/// chains from null spaces of `(A - λI)²` and rank tests.
pub fn eigensolve_reference(
    a: &ExactMatrix,
    spectrum: &Spectrum<Rational>,
) -> Result<EigenStructure<Rational>> {
    let dim = a.dim();
    if spectrum.dim() != dim {
        return Err(EigenError::InconsistentSpectrum {
            total: spectrum.dim(),
            dim,
        });
    }
    let mut trace = ExtractionTrace::new();
    trace.push("oracle: eigenspaces by exact elimination");
    let mut records = Vec::new();
    let mut repeated_geo = 0u8;
    for (lam, alg) in spectrum.entries() {
        let b = a.shift(lam);
        let kernel = null_space(&b).vectors;
        let geo = kernel.len();
        if geo == 0 || geo > *alg {
            return Err(EigenError::InconsistentSpectrum {
                total: geo,
                dim: *alg,
            });
        }
        if *alg > 1 {
            repeated_geo = geo as u8;
        }
        trace.push(format!("oracle: ker(A - ({lam})I) has dimension {geo}"));
        let basis = kernel
            .iter()
            .map(normalize_eigenvector)
            .collect::<Result<Vec<_>>>()?;
        let chains = match (*alg, geo) {
            (a_, g) if a_ == g => basis.iter().map(|v| chain(lam, vec![v.clone()])).collect(),
            (2, 1) => {
                let w = outside(&null_space(&b.mat_mul(&b)?).vectors, &kernel)?;
                vec![chain(lam, vec![b.mul_vec(&w)?, w])]
            }
            (3, 2) => {
                let w = outside(&null_space(&b.mat_mul(&b)?).vectors, &kernel)?;
                let v = b.mul_vec(&w)?;
                let other = basis
                    .iter()
                    .find(|u| rank(&[v.clone(), (*u).clone()]) == 2)
                    .cloned()
                    .ok_or_else(|| EigenError::NotNilpotent("degenerate kernel".into()))?;
                vec![chain(lam, vec![v, w]), chain(lam, vec![other])]
            }
            _ => {
                // alg 3, geo 1: seed outside ker B² taken from the standard basis
                let b2 = b.mat_mul(&b)?;
                let layer = null_space(&b2).vectors;
                let seed = outside(&standard(dim), &layer)?;
                let middle = b.mul_vec(&seed)?;
                let head = b.mul_vec(&middle)?;
                vec![chain(lam, vec![head, middle, seed])]
            }
        };
        records.push(EigenRecord {
            eigenvalue: lam.clone(),
            algebraic: *alg,
            geometric: geo,
            basis,
            chains,
        });
    }
    let class = match (dim, spectrum.len()) {
        (2, 2) => SpectralClass::Distinct2,
        (2, _) => SpectralClass::Double2 { geo: repeated_geo },
        (3, 3) => SpectralClass::Distinct3,
        (3, 2) => SpectralClass::SimplePlusDouble {
            geo_of_double: repeated_geo,
        },
        _ => SpectralClass::Triple { geo: repeated_geo },
    };
    trace.push(format!("oracle: class {class}"));
    Ok(EigenStructure {
        dim,
        class,
        eigenspaces: records,
        profile: None,
        trace,
    })
}

fn chain(lam: &Rational, vectors: Vec<ExactVector>) -> JordanChain<Rational> {
    JordanChain {
        eigenvalue: lam.clone(),
        vectors,
    }
}

fn standard(dim: usize) -> Vec<ExactVector> {
    (0..dim).map(|i| ExactVector::basis(dim, i)).collect()
}

/// First candidate not in the span of `inside`.
fn outside(candidates: &[ExactVector], inside: &[ExactVector]) -> Result<ExactVector> {
    let base = rank(inside);
    candidates
        .iter()
        .find(|c| {
            let mut set = inside.to_vec();
            set.push((*c).clone());
            rank(&set) > base
        })
        .cloned()
        .ok_or(EigenError::InconsistentSpectrum {
            total: base,
            dim: candidates.len(),
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::spans_equal;
    use crate::{analyze, char_poly, eigenvalues_exact, verify_structure, TolerancePolicy};

    fn reference(rows: &[&[i64]]) -> (ExactMatrix, EigenStructure<Rational>) {
        let a = ExactMatrix::from_i64(rows).unwrap();
        let s = eigenvalues_exact(&char_poly(&a)).unwrap();
        let es = eigensolve_reference(&a, &s).unwrap();
        (a, es)
    }

    #[test]
    fn agrees_with_column_method_on_golden_matrix() {
        let (a, es) = reference(&[&[4, 1], &[2, 5]]);
        let col = analyze(&a, &TolerancePolicy::default()).unwrap();
        for (r, c) in es.eigenspaces.iter().zip(&col.eigenspaces) {
            assert_eq!(r.eigenvalue, c.eigenvalue);
            assert!(spans_equal(&r.basis, &c.basis).unwrap());
        }
    }

    #[test]
    fn double_eigenvalue_chain() {
        let (a, es) = reference(&[&[2, 1], &[-1, 4]]);
        assert_eq!(es.class, SpectralClass::Double2 { geo: 1 });
        assert_eq!(es.eigenspaces[0].geometric, 1);
        assert_eq!(es.eigenspaces[0].chains[0].len(), 2);
        assert!(verify_structure(&a, &es, &TolerancePolicy::default()).passed());
    }

    #[test]
    fn scalar_matrix() {
        let (a, es) = reference(&[&[5, 0, 0], &[0, 5, 0], &[0, 0, 5]]);
        assert_eq!(es.eigenspaces[0].geometric, 3);
        assert!(verify_structure(&a, &es, &TolerancePolicy::default()).passed());
    }

    #[test]
    fn all_triple_shapes_verify() {
        for rows in [
            &[&[0i64, 1, 0][..], &[0, 0, 1], &[0, 0, 0]][..],
            &[&[-2, 5, -10], &[-1, 4, -2], &[2, -2, 7]],
            &[&[5, -10, -7], &[-6, 7, 6], &[13, -19, -15]],
        ] {
            let (a, es) = reference(rows);
            let report = verify_structure(&a, &es, &TolerancePolicy::default());
            assert!(report.passed(), "{report}");
        }
    }

    #[test]
    fn inconsistent_spectrum() {
        let a = ExactMatrix::identity(2);
        let s = Spectrum::new(3, vec![(Rational::from_integer(1.into()), 3)]).unwrap();
        assert!(matches!(
            eigensolve_reference(&a, &s),
            Err(EigenError::InconsistentSpectrum { .. })
        ));
    }
}
