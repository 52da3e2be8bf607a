use std::fmt;

use super::EigenStructure;
use crate::matrix::{SmallMatrix, SmallVector};
use crate::scalar::Field;
use crate::tolerance::TolerancePolicy;

/// One named residual check.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub residual: f64,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn max_residual(&self) -> f64 {
        self.checks.iter().map(|c| c.residual).fold(0.0, f64::max)
    }

    fn push(&mut self, name: String, residual: f64, passed: bool) {
        self.checks.push(Check {
            name,
            passed,
            residual,
        });
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(
                f,
                "{} {} (residual {:.3e})",
                if c.passed { "ok  " } else { "FAIL" },
                c.name,
                c.residual
            )?;
        }
        Ok(())
    }
}

/// Relative residual of `got` against `want`: exactly zero or not for exact
/// fields, `‖got - want‖ / max(1, ‖want‖)` for floats.
fn residual<T: Field>(got: &SmallVector<T>, want: &SmallVector<T>) -> (f64, bool) {
    let diff = got.sub(want).expect("same dimension");
    if T::EXACT {
        (diff.max_abs(), diff.is_exactly_zero())
    } else {
        (diff.norm() / want.norm().max(1.0), false)
    }
}

/// Checks every eigenpair, chain identity, basis independence and the
/// multiplicity bookkeeping of `es` against `a`.
///
/// Exact structures must produce exact zeros. Float residuals pass when at
/// most `zero_threshold · max(1, max |Aᵢⱼ|)`; vectors are scaled to unit
/// length (or by their predecessor for chain links) before measuring.
pub fn verify_structure<T: Field>(
    a: &SmallMatrix<T>,
    es: &EigenStructure<T>,
    tol: &TolerancePolicy,
) -> VerificationReport {
    let mut report = VerificationReport::default();
    let limit = tol.zero_threshold * a.max_abs().max(1.0);
    let judge = |(r, exact_ok): (f64, bool)| if T::EXACT { exact_ok } else { r <= limit };

    let total: usize = es.eigenspaces.iter().map(|r| r.algebraic).sum();
    report.push(
        format!("algebraic multiplicities sum to {}", a.dim()),
        total.abs_diff(a.dim()) as f64,
        total == a.dim() && es.dim == a.dim(),
    );

    for rec in &es.eigenspaces {
        let lam = &rec.eigenvalue;
        let b = a.shift(lam);
        let zero = SmallVector::zero(a.dim());
        for (i, v) in rec.basis.iter().enumerate() {
            let image = b.mul_vec(v).expect("same dimension");
            let (r, ok) = residual(&image, &zero);
            let r = if T::EXACT {
                r
            } else {
                r / v.norm().max(f64::MIN_POSITIVE)
            };
            report.push(
                format!("λ = {lam}: A v = λ v for basis[{i}] = {v}"),
                r,
                judge((r, ok)),
            );
        }
        for (ci, chain) in rec.chains.iter().enumerate() {
            for (k, w) in chain.vectors.iter().enumerate() {
                let image = b.mul_vec(w).expect("same dimension");
                let (r, ok) = if k == 0 {
                    let (r, ok) = residual(&image, &zero);
                    (
                        if T::EXACT {
                            r
                        } else {
                            r / w.norm().max(f64::MIN_POSITIVE)
                        },
                        ok,
                    )
                } else {
                    residual(&image, &chain.vectors[k - 1])
                };
                let name = if k == 0 {
                    format!("λ = {lam}: chain {ci} head {w} is an eigenvector")
                } else {
                    format!(
                        "λ = {lam}: chain {ci} (A - λI) {w} = {}",
                        chain.vectors[k - 1]
                    )
                };
                report.push(name, r, judge((r, ok)));
            }
            report.push(
                format!("λ = {lam}: chain {ci} eigenvalue matches"),
                0.0,
                &chain.eigenvalue == lam,
            );
        }
        let (indep_residual, indep_ok) = independence(&rec.basis, tol);
        report.push(
            format!("λ = {lam}: eigenspace basis is linearly independent"),
            indep_residual,
            indep_ok,
        );
        report.push(
            format!(
                "λ = {lam}: basis size equals geometric multiplicity {}",
                rec.geometric
            ),
            rec.basis.len().abs_diff(rec.geometric) as f64,
            rec.basis.len() == rec.geometric && rec.geometric <= rec.algebraic,
        );
        let lengths = rec.chain_length_total();
        report.push(
            format!(
                "λ = {lam}: chain lengths sum to algebraic multiplicity {}",
                rec.algebraic
            ),
            lengths.abs_diff(rec.algebraic) as f64,
            lengths == rec.algebraic,
        );
    }
    report
}

/// Independence of up to three vectors via determinant / minor tests.
/// Returns the residual (zero, or the largest minor when dependent) and the verdict.
fn independence<T: Field>(basis: &[SmallVector<T>], tol: &TolerancePolicy) -> (f64, bool) {
    let scale = basis.iter().map(|v| v.max_abs()).product::<f64>();
    let threshold = if T::EXACT { 0.0 } else { tol.effective(scale) };
    let witness: f64 = match basis.len() {
        0 => return (0.0, false),
        1 => basis[0].max_abs(),
        2 => basis[0]
            .pair_minors(&basis[1])
            .iter()
            .map(Field::magnitude)
            .fold(0.0, f64::max),
        _ => match SmallMatrix::from_columns(basis) {
            Ok(m) => m.determinant().magnitude(),
            Err(_) => return (0.0, false),
        },
    };
    let ok = if T::EXACT {
        witness > 0.0
    } else {
        witness > threshold
    };
    (if ok { 0.0 } else { witness }, ok)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{analyze, ExactMatrix, ExactVector, FloatMatrix, Rational};

    #[test]
    fn golden_structure_verifies_exactly() {
        let a = ExactMatrix::from_i64(&[&[4, 1], &[2, 5]]).unwrap();
        let tol = TolerancePolicy::default();
        let es = analyze(&a, &tol).unwrap();
        let report = verify_structure(&a, &es, &tol);
        assert!(report.passed(), "{report}");
        assert_eq!(report.max_residual(), 0.0);
    }

    #[test]
    fn corrupted_vector_fails() {
        let a = ExactMatrix::from_i64(&[&[4, 1], &[2, 5]]).unwrap();
        let tol = TolerancePolicy::default();
        let mut es = analyze(&a, &tol).unwrap();
        let six = Rational::from_integer(6.into());
        let rec = es
            .eigenspaces
            .iter_mut()
            .find(|r| r.eigenvalue == six)
            .unwrap();
        rec.basis[0] = ExactVector::from_i64(&[1, 3]).unwrap();
        let report = verify_structure(&a, &es, &tol);
        assert!(!report.passed());
        assert!(report
            .failures()
            .any(|c| c.name.contains("A v = λ v") && c.name.contains("(1, 3)")));
    }

    #[test]
    fn float_structure_residuals() {
        let a = FloatMatrix::from_rows(vec![
            vec![7.0, -4.0, -5.0],
            vec![3.0, -2.0, -3.0],
            vec![6.0, -4.0, -4.0],
        ])
        .unwrap();
        let tol = TolerancePolicy::default();
        let es = analyze(&a, &tol).unwrap();
        let report = verify_structure(&a, &es, &tol);
        assert!(report.passed(), "{report}");
        assert!(report
            .checks
            .iter()
            .filter(|c| c.name.contains("A v"))
            .all(|c| c.residual <= 1e-9));
    }

    #[test]
    fn dependent_basis_fails() {
        let tol = TolerancePolicy::default();
        let v = ExactVector::from_i64(&[1, 2, 3]).unwrap();
        assert!(
            !independence(
                &[v.clone(), v.scale(&Rational::from_integer(2.into()))],
                &tol
            )
            .1
        );
        assert!(independence(&[v], &tol).1);
    }
}
