use super::{normalized, required_column, standard_basis, EigenRecord, JordanChain};
use crate::error::Result;
use crate::matrix::{SmallMatrix, SmallVector};
use crate::scalar::Field;
use crate::spectrum::shift_label;
use crate::spectrum::Spectrum;
use crate::tolerance::TolerancePolicy;
use crate::trace::ExtractionTrace;

pub(super) fn distinct<T: Field>(
    a: &SmallMatrix<T>,
    spectrum: &Spectrum<T>,
    tol: &TolerancePolicy,
    trace: &mut ExtractionTrace,
) -> Result<Vec<EigenRecord<T>>> {
    let lam = [
        spectrum.entries()[0].0.clone(),
        spectrum.entries()[1].0.clone(),
    ];
    let b = [a.shift(&lam[0]), a.shift(&lam[1])];
    for i in 0..2 {
        trace.push(format!(
            "B{} = {} = {}",
            sub(i + 1),
            shift_label(&lam[i]),
            b[i]
        ));
    }
    let mut records = Vec::with_capacity(2);
    // columns of B₁ belong to λ₂ and columns of B₂ to λ₁
    for (target, source) in [(1, 0), (0, 1)] {
        let (col, v) = required_column(&b[source], tol, &format!("B{}", sub(source + 1)))?;
        let unit = normalized(&v)?;
        trace.push(format!(
            "λ{} = {}: column {col} of B{} is {v}, eigenvector {unit}",
            sub(target + 1),
            lam[target],
            sub(source + 1)
        ));
        records.push(EigenRecord::semisimple(lam[target].clone(), vec![unit]));
    }
    Ok(records)
}

pub(super) fn double<T: Field>(
    a: &SmallMatrix<T>,
    spectrum: &Spectrum<T>,
    geo: u8,
    tol: &TolerancePolicy,
    trace: &mut ExtractionTrace,
) -> Result<Vec<EigenRecord<T>>> {
    let lam = spectrum.entries()[0].0.clone();
    if geo == 2 {
        trace.push(format!(
            "λ = {lam}: A is a multiple of the identity, eigenspace basis e₁, e₂"
        ));
        return Ok(vec![EigenRecord::semisimple(lam, standard_basis(2))]);
    }
    let b = a.shift(&lam);
    // w = e_i for the chosen nonzero column i of B, so B w is that column
    let (col, _) = required_column(&b, tol, "B")?;
    let w = SmallVector::basis(2, col);
    let v = b.mul_vec(&w)?;
    let unit = normalized(&v)?;
    trace.push(format!(
        "λ = {lam}: w = e{} is not in ker B, v = Bw = {v} (column {col} of B), eigenvector {unit}",
        sub(col + 1)
    ));
    let chain = JordanChain {
        eigenvalue: lam.clone(),
        vectors: vec![v, w],
    };
    Ok(vec![EigenRecord::new(lam, 2, vec![unit], vec![chain])])
}

/// Unicode subscript for small indices.
pub(crate) fn sub(i: usize) -> char {
    char::from_u32(0x2080 + i as u32).unwrap_or('?')
}
