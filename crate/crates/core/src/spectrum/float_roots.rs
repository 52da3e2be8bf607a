//! Closed-form real roots of floating quadratics and cubics, with clustering
//! of nearly equal roots into repeated eigenvalues.

use std::f64::consts::PI;

use num_traits::Float;

use super::{CharPoly, Spectrum};
use crate::error::{EigenError, Result};
use crate::scalar::Field;
use crate::tolerance::TolerancePolicy;

/// Real eigenvalues of a floating characteristic polynomial.
///
/// Roots are computed in `f64` whatever the field, then merged: roots closer
/// than `cluster_eps · max(1, |largest root|)` form one entry whose value is
/// their mean. A conjugate pair whose imaginary part is below the same
/// distance counts as a repeated real root.
pub fn eigenvalues_float<F: Field + Float>(
    p: &CharPoly<F>,
    tol: &TolerancePolicy,
) -> Result<Spectrum<F>> {
    let c: Vec<f64> = p
        .coeffs()
        .iter()
        .map(|x| x.to_f64().unwrap_or(f64::NAN))
        .collect();
    if c.iter().any(|x| !x.is_finite()) {
        return Err(EigenError::ComplexSpectrum);
    }
    let roots = match p.degree() {
        2 => quadratic(c[1], c[0], tol.cluster_eps)?,
        3 => cubic(c[2], c[1], c[0], tol.cluster_eps)?,
        d => return Err(EigenError::UnsupportedDimension(d)),
    };
    let clusters = cluster(roots, tol.cluster_eps);
    let entries = clusters
        .into_iter()
        .map(|(value, m)| {
            let value = if m == 1 { polish(&c, value) } else { value };
            (F::from_f64(value).unwrap(), m)
        })
        .collect();
    Spectrum::new(p.degree(), entries)
}

fn pair_is_real(re: f64, im: f64, eps: f64) -> bool {
    im.abs() <= eps * re.abs().max(1.0)
}

/// Roots of `x² + bx + c`.
fn quadratic(b: f64, c: f64, eps: f64) -> Result<Vec<f64>> {
    let disc = b * b - 4.0 * c;
    if disc < 0.0 {
        let re = -0.5 * b;
        let im = 0.5 * (-disc).sqrt();
        return if pair_is_real(re, im, eps) {
            Ok(vec![re, re])
        } else {
            Err(EigenError::ComplexSpectrum)
        };
    }
    let q = -0.5 * (b + disc.sqrt().copysign(b));
    if q == 0.0 {
        return Ok(vec![0.0, 0.0]);
    }
    Ok(vec![q, c / q])
}

/// Roots of `x³ + ax² + bx + c`.
fn cubic(a: f64, b: f64, c: f64, eps: f64) -> Result<Vec<f64>> {
    let offset = a / 3.0;
    // depressed form t³ + pt + q with x = t - a/3
    let p = b - a * a / 3.0;
    let q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
    let half_q = 0.5 * q;
    let third_p = p / 3.0;
    let disc = half_q * half_q + third_p * third_p * third_p;

    if disc < 0.0 {
        // three distinct real roots: trigonometric form
        let m = 2.0 * (-third_p).sqrt();
        let arg = (3.0 * q / (p * m)).clamp(-1.0, 1.0);
        let theta = arg.acos() / 3.0;
        return Ok((0..3)
            .map(|k| m * (theta - 2.0 * PI * k as f64 / 3.0).cos() - offset)
            .collect());
    }
    // one real root by Cardano; the larger cube root avoids cancellation
    let u = -(half_q + disc.sqrt().copysign(q)).cbrt();
    let v = if u == 0.0 { 0.0 } else { -third_p / u };
    let t = u + v;
    let re = -0.5 * t;
    let im = 0.5 * 3f64.sqrt() * (u - v).abs();
    if !pair_is_real(re - offset, im, eps) {
        return Err(EigenError::ComplexSpectrum);
    }
    Ok(vec![t - offset, re - offset, re - offset])
}

fn cluster(mut roots: Vec<f64>, eps: f64) -> Vec<(f64, usize)> {
    roots.sort_by(|a, b| a.total_cmp(b));
    let scale = roots.iter().fold(1.0f64, |m, r| m.max(r.abs()));
    let gap = eps * scale;
    let mut groups: Vec<Vec<f64>> = Vec::new();
    for r in roots {
        match groups.last_mut() {
            Some(g) if r - g[g.len() - 1] <= gap => g.push(r),
            _ => groups.push(vec![r]),
        }
    }
    groups
        .into_iter()
        .map(|g| (g.iter().sum::<f64>() / g.len() as f64, g.len()))
        .collect()
}

/// A few guarded Newton steps on a simple root.
fn polish(c: &[f64], mut x: f64) -> f64 {
    let eval = |x: f64| {
        c.iter()
            .rev()
            .fold((0.0, 0.0), |(f, df), &k| (f * x + k, df * x + f))
    };
    for _ in 0..3 {
        let (f, df) = eval(x);
        if f == 0.0 || df == 0.0 {
            break;
        }
        let next = x - f / df;
        if eval(next).0.abs() >= f.abs() {
            break;
        }
        x = next;
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(lower: &[f64]) -> CharPoly<f64> {
        CharPoly::monic(lower.to_vec())
    }

    fn assert_spectrum(s: &Spectrum<f64>, want: &[(f64, usize)], tol: f64) {
        assert_eq!(s.len(), want.len(), "{s}");
        for ((lam, m), (w, wm)) in s.entries().iter().zip(want) {
            assert!((lam - w).abs() <= tol, "{lam} vs {w}");
            assert_eq!(m, wm);
        }
    }

    #[test]
    fn golden_quadratic() {
        let s = eigenvalues_float(&poly(&[18.0, -9.0]), &TolerancePolicy::default()).unwrap();
        assert_spectrum(&s, &[(3.0, 1), (6.0, 1)], 1e-12);
    }

    #[test]
    fn double_root_clusters() {
        let s = eigenvalues_float(&poly(&[9.0, -6.0]), &TolerancePolicy::default()).unwrap();
        assert_spectrum(&s, &[(3.0, 2)], 1e-12);
    }

    #[test]
    fn golden_cubic() {
        let s = eigenvalues_float(&poly(&[4.0, -4.0, -1.0]), &TolerancePolicy::default()).unwrap();
        assert_spectrum(&s, &[(-2.0, 1), (1.0, 1), (2.0, 1)], 1e-10);
    }

    #[test]
    fn cubic_with_double_and_triple_roots() {
        let tol = TolerancePolicy::default();
        // (λ-1)(λ+2)²
        let s = eigenvalues_float(&poly(&[-4.0, 0.0, 3.0]), &tol).unwrap();
        assert_spectrum(&s, &[(-2.0, 2), (1.0, 1)], 1e-9);
        // (λ-3)³
        let s = eigenvalues_float(&poly(&[-27.0, 27.0, -9.0]), &tol).unwrap();
        assert_spectrum(&s, &[(3.0, 3)], 1e-9);
    }

    #[test]
    fn cubic_single_real_root_is_complex() {
        let tol = TolerancePolicy::default();
        // (λ-1)(λ²+1)
        assert_eq!(
            eigenvalues_float(&poly(&[-1.0, 1.0, -1.0]), &tol),
            Err(EigenError::ComplexSpectrum)
        );
        assert_eq!(
            eigenvalues_float(&poly(&[1.0, 0.0]), &tol),
            Err(EigenError::ComplexSpectrum)
        );
    }

    #[test]
    fn irrational_roots_are_fine() {
        let s = eigenvalues_float(&poly(&[-2.0, 0.0]), &TolerancePolicy::default()).unwrap();
        assert_spectrum(&s, &[(-(2f64.sqrt()), 1), (2f64.sqrt(), 1)], 1e-14);
    }

    #[test]
    fn single_precision_field() {
        let p = CharPoly::<f32>::monic(vec![4.0, -4.0, -1.0]);
        let s = eigenvalues_float(&p, &TolerancePolicy::default()).unwrap();
        let got: Vec<f32> = s.eigenvalues().copied().collect();
        assert_eq!(got.len(), 3);
        for (g, w) in got.iter().zip([-2.0f32, 1.0, 2.0]) {
            assert!((g - w).abs() < 1e-5);
        }
    }
}
