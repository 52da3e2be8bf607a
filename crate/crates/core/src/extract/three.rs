use super::two::sub;
use super::{
    column_case_profile, normalized, required_column, standard_basis, ColumnCaseProfile,
    EigenRecord, JordanChain,
};
use crate::error::{EigenError, Result};
use crate::matrix::{SmallMatrix, SmallVector};
use crate::scalar::Field;
use crate::spectrum::{shift_label, Spectrum};
use crate::tolerance::TolerancePolicy;
use crate::trace::ExtractionTrace;

pub(super) fn distinct<T: Field>(
    a: &SmallMatrix<T>,
    spectrum: &Spectrum<T>,
    tol: &TolerancePolicy,
    trace: &mut ExtractionTrace,
) -> Result<Vec<EigenRecord<T>>> {
    let lam: Vec<T> = spectrum.eigenvalues().cloned().collect();
    let b: Vec<SmallMatrix<T>> = lam.iter().map(|l| a.shift(l)).collect();
    for (i, (l, bi)) in lam.iter().zip(&b).enumerate() {
        trace.push(format!("B{} = {} = {bi}", sub(i + 1), shift_label(l)));
    }
    let mut records = Vec::with_capacity(3);
    for (k, lam_k) in lam.iter().enumerate() {
        let (i, j) = match k {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        let prod = b[i].mat_mul(&b[j])?;
        let name = format!("B{}B{}", sub(i + 1), sub(j + 1));
        let (col, v) = required_column(&prod, tol, &name)?;
        let unit = normalized(&v)?;
        trace.push(format!(
            "λ{} = {}: {name} = {prod}; column {col} is {v}, eigenvector {unit}",
            sub(k + 1),
            lam_k
        ));
        records.push(EigenRecord::semisimple(lam_k.clone(), vec![unit]));
    }
    Ok(records)
}

pub(super) fn simple_double<T: Field>(
    a: &SmallMatrix<T>,
    spectrum: &Spectrum<T>,
    geo: u8,
    tol: &TolerancePolicy,
    trace: &mut ExtractionTrace,
) -> Result<Vec<EigenRecord<T>>> {
    let entries = spectrum.entries();
    let (simple, double) = if entries[0].1 == 1 {
        (entries[0].0.clone(), entries[1].0.clone())
    } else {
        (entries[1].0.clone(), entries[0].0.clone())
    };
    let b1 = a.shift(&simple);
    let b2 = a.shift(&double);
    trace.push(format!("λ₁ = {simple} (simple), λ₂ = {double} (double)"));
    trace.push(format!("B₁ = {} = {b1}", shift_label(&simple)));
    trace.push(format!("B₂ = {} = {b2}", shift_label(&double)));

    // B₁B₂² = 0, so the columns of B₂² lie in ker B₁
    let b2_sq = b2.mat_mul(&b2)?;
    let (col, v1) = required_column(&b2_sq, tol, "B₂²")?;
    let u1 = normalized(&v1)?;
    trace.push(format!(
        "λ₁ = {simple}: B₂² = {b2_sq}; column {col} is {v1}, eigenvector {u1}"
    ));
    let simple_rec = EigenRecord::semisimple(simple, vec![u1]);

    let double_rec = if geo == 2 {
        let cols = b1.columns();
        let (i, j) = independent_pair(&cols, tol).ok_or_else(|| {
            EigenError::NoNonzeroColumn(format!("independent column pair of B₁ = {b1}"))
        })?;
        let basis = vec![normalized(&cols[i])?, normalized(&cols[j])?];
        trace.push(format!(
            "λ₂ = {double}: B₂B₁ = 0, so columns of B₁ are eigenvectors; columns {i} and {j} are independent, basis {}, {}",
            basis[0], basis[1]
        ));
        EigenRecord::semisimple(double, basis)
    } else {
        // columns of B₂B₁ are B₂w for the columns w of B₁
        let prod = b2.mat_mul(&b1)?;
        let (col, _) = required_column(&prod, tol, "B₂B₁")?;
        let w = b1.column(col);
        let v = b2.mul_vec(&w)?;
        let unit = normalized(&v)?;
        trace.push(format!(
            "λ₂ = {double}: column {col} of B₁ is w = {w} with B₂w = {v} nonzero; eigenvector {unit}, generalized eigenvector w"
        ));
        let chain = JordanChain {
            eigenvalue: double.clone(),
            vectors: vec![v, w],
        };
        EigenRecord::new(double, 2, vec![unit], vec![chain])
    };
    Ok(vec![simple_rec, double_rec])
}

/// First column pair passing the minor test (exact), or the best-conditioned pair (float).
fn independent_pair<T: Field>(
    cols: &[SmallVector<T>],
    tol: &TolerancePolicy,
) -> Option<(usize, usize)> {
    let pairs = [(0, 1), (0, 2), (1, 2)];
    if T::EXACT {
        return pairs
            .into_iter()
            .find(|&(i, j)| cols[i].independent_of(&cols[j], tol));
    }
    pairs
        .into_iter()
        .filter(|&(i, j)| cols[i].independent_of(&cols[j], tol))
        .max_by(|&(i, j), &(k, l)| {
            let size = |p: usize, q: usize| {
                cols[p]
                    .pair_minors(&cols[q])
                    .iter()
                    .map(Field::magnitude)
                    .fold(0.0, f64::max)
            };
            size(i, j).total_cmp(&size(k, l))
        })
}

type TripleParts<T> = (Vec<EigenRecord<T>>, Option<ColumnCaseProfile<T>>);

pub(super) fn triple<T: Field>(
    a: &SmallMatrix<T>,
    spectrum: &Spectrum<T>,
    geo: u8,
    tol: &TolerancePolicy,
    trace: &mut ExtractionTrace,
) -> Result<TripleParts<T>> {
    let lam = spectrum.entries()[0].0.clone();
    let b = a.shift(&lam);
    match geo {
        3 => {
            trace.push(format!(
                "λ = {lam}: A is a multiple of the identity, eigenspace basis e₁, e₂, e₃"
            ));
            Ok((vec![EigenRecord::semisimple(lam, standard_basis(3))], None))
        }
        1 => {
            let b_sq = b.mat_mul(&b)?;
            let (col, _) = required_column(&b_sq, tol, "B²")?;
            let seed = SmallVector::basis(3, col);
            let middle = b.mul_vec(&seed)?;
            let head = b.mul_vec(&middle)?;
            let unit = normalized(&head)?;
            trace.push(format!(
                "λ = {lam}: B² = {b_sq}; column {col} is {head}, eigenvector {unit}"
            ));
            trace.push(format!(
                "seed v₁ = e{} (B²v₁ ≠ 0): chain B²v₁ = {head}, Bv₁ = {middle}, v₁ = {seed}",
                sub(col + 1)
            ));
            let chain = JordanChain {
                eigenvalue: lam.clone(),
                vectors: vec![head, middle, seed],
            };
            Ok((
                vec![EigenRecord::new(lam, 3, vec![unit], vec![chain])],
                None,
            ))
        }
        _ => {
            let profile = column_case_profile(&b, tol)?;
            trace.push(format!(
                "λ = {lam}: B ≠ 0, B² = 0; column pattern case {} with pivot column {} = {}",
                profile.case_id, profile.pivot_index, profile.pivot_column
            ));
            match (&profile.t, &profile.s) {
                (Some(t), Some(s)) => trace.push(format!(
                    "t = {t}, s = {s}; x + ty + sz = {}",
                    profile.condition_value
                )),
                (Some(t), None) => {
                    trace.push(format!("t = {t}; y + tz = {}", profile.condition_value))
                }
                _ => trace.push(format!("z = {}", profile.condition_value)),
            }
            if !T::EXACT {
                trace.push(
                    "float mode: column zero tests decided the case under the tolerance policy; \
                     the case split is sensitive to perturbation",
                );
            }
            let basis = profile
                .eigenbasis
                .iter()
                .map(normalized)
                .collect::<Result<Vec<_>>>()?;
            let eigenvector = profile.eigenvector.clone();
            let second = basis
                .iter()
                .find(|u| u.independent_of(&eigenvector, tol))
                .cloned()
                .ok_or_else(|| {
                    EigenError::NotNilpotent("eigenbasis does not extend the pivot column".into())
                })?;
            trace.push(format!(
                "eigenspace basis {}, {}; chain {} <- {}; second eigenvector {second}",
                basis[0], basis[1], eigenvector, profile.generalized
            ));
            let chains = vec![
                JordanChain {
                    eigenvalue: lam.clone(),
                    vectors: vec![eigenvector, profile.generalized.clone()],
                },
                JordanChain {
                    eigenvalue: lam.clone(),
                    vectors: vec![second],
                },
            ];
            Ok((vec![EigenRecord::new(lam, 3, basis, chains)], Some(profile)))
        }
    }
}
