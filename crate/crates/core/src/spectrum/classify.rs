use super::{SpectralClass, Spectrum};
use crate::error::{EigenError, Result};
use crate::matrix::SmallMatrix;
use crate::scalar::Field;
use crate::tolerance::TolerancePolicy;
use crate::trace::ExtractionTrace;

/// Text form of `A - λI`.
pub(crate) fn shift_label<T: Field>(lam: &T) -> String {
    let mag = lam.abs();
    let body = if mag.to_string().contains('/') {
        format!("({mag})")
    } else {
        mag.to_string()
    };
    if lam.is_negative() {
        format!("A + {body}I")
    } else {
        format!("A - {body}I")
    }
}

/// Class label of `A` from products of shifted matrices and zero tests only.
pub fn classify<T: Field>(
    a: &SmallMatrix<T>,
    spectrum: &Spectrum<T>,
    tol: &TolerancePolicy,
) -> Result<SpectralClass> {
    classify_traced(a, spectrum, tol, &mut ExtractionTrace::new())
}

pub(crate) fn classify_traced<T: Field>(
    a: &SmallMatrix<T>,
    spectrum: &Spectrum<T>,
    tol: &TolerancePolicy,
    trace: &mut ExtractionTrace,
) -> Result<SpectralClass> {
    let dim = a.dim();
    if spectrum.dim() != dim {
        return Err(EigenError::InconsistentSpectrum {
            total: spectrum.dim(),
            dim,
        });
    }
    let entries = spectrum.entries();
    let class = match (dim, entries.len()) {
        (2, 2) => SpectralClass::Distinct2,
        (3, 3) => SpectralClass::Distinct3,
        (2, 1) => {
            let b = a.shift(&entries[0].0);
            let zero = b.is_zero(tol);
            trace.push(format!(
                "B = {} = {b} is {}",
                shift_label(&entries[0].0),
                if zero { "zero" } else { "nonzero" }
            ));
            SpectralClass::Double2 {
                geo: if zero { 2 } else { 1 },
            }
        }
        (3, 2) => {
            let (simple, double) = if entries[0].1 == 1 {
                (&entries[0].0, &entries[1].0)
            } else {
                (&entries[1].0, &entries[0].0)
            };
            let b1 = a.shift(simple);
            let b2 = a.shift(double);
            let prod = b2.mat_mul(&b1)?;
            let zero = prod.is_zero(tol);
            trace.push(format!(
                "B₂B₁ = ({})({}) = {prod} is {}",
                shift_label(double),
                shift_label(simple),
                if zero { "zero" } else { "nonzero" }
            ));
            SpectralClass::SimplePlusDouble {
                geo_of_double: if zero { 2 } else { 1 },
            }
        }
        (3, 1) => {
            let b = a.shift(&entries[0].0);
            let geo = if b.is_zero(tol) {
                trace.push(format!("B = {} is zero", shift_label(&entries[0].0)));
                3
            } else {
                let b2 = b.mat_mul(&b)?;
                let zero = b2.is_zero(tol);
                trace.push(format!(
                    "B = {} = {b} is nonzero; B² = {b2} is {}",
                    shift_label(&entries[0].0),
                    if zero { "zero" } else { "nonzero" }
                ));
                if zero {
                    2
                } else {
                    1
                }
            };
            SpectralClass::Triple { geo }
        }
        _ => {
            return Err(EigenError::InconsistentSpectrum {
                total: spectrum.dim(),
                dim,
            })
        }
    };
    trace.push(format!("class: {class}"));
    Ok(class)
}
