//! Scalar substrate: the [`Field`] trait the engine is generic over, its
//! exact and floating implementations, and the mode-tagged [`Scalar`] used
//! at I/O boundaries where the mode is only known at runtime.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Float, FromPrimitive, One, Signed, ToPrimitive, Zero};

use crate::error::{EigenError, Result};
use crate::matrix::SmallMatrix;
use crate::spectrum::{self, CharPoly, Spectrum};
use crate::tolerance::TolerancePolicy;
use crate::Rational;

/// A real field the eigen engine can run over.
///
/// Exact fields compare against zero exactly and find eigenvalues by the
/// rational-root method; floating fields use thresholds and closed forms.
pub trait Field:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + PartialOrd
    + Signed
    + FromPrimitive
    + ToPrimitive
    + Send
    + Sync
    + 'static
{
    const EXACT: bool;
    const NAME: &'static str;

    fn magnitude(&self) -> f64 {
        self.abs().to_f64().unwrap_or(f64::INFINITY)
    }

    /// Zero test against an already-scaled threshold.
    fn is_negligible(&self, threshold: f64) -> bool {
        if Self::EXACT {
            self.is_zero()
        } else {
            self.magnitude() <= threshold
        }
    }

    /// Canonical representative of the ray through `v`: coprime integers for
    /// exact fields, unit Euclidean length for floats; first significant
    /// entry positive in both cases. `None` for the zero vector.
    fn canonical_direction(v: &[Self]) -> Option<Vec<Self>>;

    /// Real roots of a characteristic polynomial with multiplicities.
    fn solve_char_poly(p: &CharPoly<Self>, tol: &TolerancePolicy) -> Result<Spectrum<Self>>;

    fn from_rational(r: &Rational) -> Self;
}

impl Field for Rational {
    const EXACT: bool = true;
    const NAME: &'static str = "exact";

    fn canonical_direction(v: &[Self]) -> Option<Vec<Self>> {
        if v.iter().all(Zero::is_zero) {
            return None;
        }
        let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
        let gcd = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        let sign = ints
            .iter()
            .find(|x| !x.is_zero())
            .map(|x| {
                if x.is_negative() {
                    -BigInt::one()
                } else {
                    BigInt::one()
                }
            })
            .unwrap_or_else(BigInt::one);
        let divisor = gcd * sign;
        Some(
            ints.into_iter()
                .map(|x| Rational::from_integer(x / &divisor))
                .collect(),
        )
    }

    fn solve_char_poly(p: &CharPoly<Self>, _tol: &TolerancePolicy) -> Result<Spectrum<Self>> {
        spectrum::eigenvalues_exact(p)
    }

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
}

fn float_direction<F: Float>(v: &[F]) -> Option<Vec<F>> {
    let norm = v.iter().fold(F::zero(), |acc, &x| acc.hypot(x));
    if norm.is_zero() || !norm.is_finite() {
        return None;
    }
    let unit: Vec<F> = v.iter().map(|&x| x / norm).collect();
    // entries below sqrt(eps) relative to the unit length are roundoff noise
    // and must not decide the sign
    let noise = F::epsilon().sqrt();
    let lead = unit.iter().find(|x| x.abs() > noise).copied()?;
    Some(if lead < F::zero() {
        unit.into_iter().map(|x| -x).collect()
    } else {
        unit
    })
}

macro_rules! float_field {
    ($t:ty, $name:literal) => {
        impl Field for $t {
            const EXACT: bool = false;
            const NAME: &'static str = $name;

            fn canonical_direction(v: &[Self]) -> Option<Vec<Self>> {
                float_direction(v)
            }

            fn solve_char_poly(
                p: &CharPoly<Self>,
                tol: &TolerancePolicy,
            ) -> Result<Spectrum<Self>> {
                spectrum::eigenvalues_float(p, tol)
            }

            fn from_rational(r: &Rational) -> Self {
                r.to_f64().unwrap_or(f64::NAN) as $t
            }
        }
    };
}

float_field!(f64, "float");
float_field!(f32, "float32");

/// Scalar mode of a runtime-tagged value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Exact,
    Float,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Exact => "exact",
            Mode::Float => "float",
        })
    }
}

/// Runtime-tagged scalar: an exact rational or a binary64 float.
#[derive(Debug, Clone, PartialEq)]
pub enum Scalar {
    Exact(Rational),
    Float(f64),
}

impl Scalar {
    /// Canonical exact scalar `num/den`. `None` when `den` is zero.
    pub fn exact(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Option<Self> {
        let den = den.into();
        if den.is_zero() {
            return None;
        }
        Some(Scalar::Exact(Rational::new(num.into(), den)))
    }

    /// Exact scalar stored as given, without reduction.
    pub fn exact_raw(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Self {
        Scalar::Exact(Rational::new_raw(num.into(), den.into()))
    }

    pub fn integer(n: i64) -> Self {
        Scalar::Exact(Rational::from_integer(BigInt::from(n)))
    }

    pub fn mode(&self) -> Mode {
        match self {
            Scalar::Exact(_) => Mode::Exact,
            Scalar::Float(_) => Mode::Float,
        }
    }

    /// Reduced form with positive denominator; floats are always canonical.
    pub fn is_canonical(&self) -> bool {
        match self {
            Scalar::Exact(r) => r.denom().is_positive() && r.numer().gcd(r.denom()).is_one(),
            Scalar::Float(_) => true,
        }
    }

    pub fn checked_add(&self, rhs: &Scalar) -> Result<Scalar> {
        self.combine(rhs, |a, b| a + b, |a, b| a + b)
    }

    pub fn checked_sub(&self, rhs: &Scalar) -> Result<Scalar> {
        self.combine(rhs, |a, b| a - b, |a, b| a - b)
    }

    pub fn checked_mul(&self, rhs: &Scalar) -> Result<Scalar> {
        self.combine(rhs, |a, b| a * b, |a, b| a * b)
    }

    fn combine(
        &self,
        rhs: &Scalar,
        exact: impl Fn(&Rational, &Rational) -> Rational,
        float: impl Fn(f64, f64) -> f64,
    ) -> Result<Scalar> {
        let out = match (self, rhs) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(exact(a, b)),
            (Scalar::Float(a), Scalar::Float(b)) => Scalar::Float(float(*a, *b)),
            _ => return Err(EigenError::ModeMismatch),
        };
        debug_assert!(out.is_canonical());
        Ok(out)
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(r) => r.to_f64().unwrap_or(f64::NAN),
            Scalar::Float(x) => *x,
        }
    }

    /// Exact value of the scalar; finite floats convert without rounding.
    pub fn to_rational(&self) -> Option<Rational> {
        match self {
            Scalar::Exact(r) => Some(r.clone()),
            Scalar::Float(x) => Rational::from_float(*x),
        }
    }
}

/// Reduced-form equal value of an exact scalar. Floats pass through.
pub fn canonicalize(s: Scalar) -> Scalar {
    match s {
        Scalar::Exact(r) => {
            let (n, d) = r.into();
            Scalar::Exact(Rational::new(n, d))
        }
        f => f,
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(r) => write!(f, "{r}"),
            Scalar::Float(x) => write!(f, "{x}"),
        }
    }
}

/// Error for [`Scalar`] parsing from `"p"` or `"p/q"`.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid exact scalar {0:?}: expected \"p\" or \"p/q\" with q != 0")]
pub struct ParseScalarError(pub String);

impl FromStr for Scalar {
    type Err = ParseScalarError;

    /// Parses the exact textual forms `"p"` and `"p/q"`; the result is canonical.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let err = || ParseScalarError(s.to_owned());
        let t = s.trim();
        let (num, den) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (t, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| err())?;
        let den: BigInt = den.parse().map_err(|_| err())?;
        Scalar::exact(num, den).ok_or_else(err)
    }
}

/// A matrix whose scalar mode is decided at runtime.
#[derive(Debug, Clone, PartialEq)]
pub enum DynMatrix {
    Exact(SmallMatrix<Rational>),
    Float(SmallMatrix<f64>),
}

impl DynMatrix {
    /// Builds a matrix from tagged rows. All entries must share one mode.
    pub fn from_scalars(rows: &[Vec<Scalar>]) -> Result<Self> {
        let mode = rows
            .iter()
            .flatten()
            .next()
            .map(Scalar::mode)
            .unwrap_or(Mode::Exact);
        if rows.iter().flatten().any(|s| s.mode() != mode) {
            return Err(EigenError::ModeMismatch);
        }
        match mode {
            Mode::Exact => {
                let rows: Vec<Vec<Rational>> = rows
                    .iter()
                    .map(|r| {
                        r.iter()
                            .map(|s| match s {
                                Scalar::Exact(q) => q.clone(),
                                Scalar::Float(_) => unreachable!(),
                            })
                            .collect()
                    })
                    .collect();
                SmallMatrix::from_rows(rows).map(DynMatrix::Exact)
            }
            Mode::Float => {
                let rows: Vec<Vec<f64>> = rows
                    .iter()
                    .map(|r| r.iter().map(Scalar::to_f64).collect())
                    .collect();
                SmallMatrix::from_rows(rows).map(DynMatrix::Float)
            }
        }
    }

    pub fn mode(&self) -> Mode {
        match self {
            DynMatrix::Exact(_) => Mode::Exact,
            DynMatrix::Float(_) => Mode::Float,
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            DynMatrix::Exact(m) => m.dim(),
            DynMatrix::Float(m) => m.dim(),
        }
    }

    /// Exact version of the matrix. Floats convert to their exact binary values.
    pub fn to_exact(&self) -> Result<SmallMatrix<Rational>> {
        match self {
            DynMatrix::Exact(m) => Ok(m.clone()),
            DynMatrix::Float(m) => {
                m.try_map(|x| Rational::from_float(*x).ok_or(EigenError::ModeMismatch))
            }
        }
    }

    pub fn to_float(&self) -> SmallMatrix<f64> {
        match self {
            DynMatrix::Exact(m) => m.map(f64::from_rational),
            DynMatrix::Float(m) => m.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn canonicalize_normalizes_sign_and_gcd() {
        assert_eq!(
            canonicalize(Scalar::exact_raw(6, -4)),
            Scalar::Exact(q(-3, 2))
        );
        let zero = canonicalize(Scalar::exact_raw(0, 7));
        match &zero {
            Scalar::Exact(r) => {
                assert!(r.numer().is_zero());
                assert!(r.denom().is_one());
            }
            _ => unreachable!(),
        }
        assert_eq!(canonicalize(Scalar::exact_raw(12, 4)), Scalar::integer(3));
        assert!(!Scalar::exact_raw(12, 4).is_canonical());
    }

    #[test]
    fn canonicalize_is_idempotent() {
        for (n, d) in [(6, -4), (0, 7), (-9, -3), (5, 10)] {
            let once = canonicalize(Scalar::exact_raw(n, d));
            assert!(once.is_canonical());
            assert_eq!(canonicalize(once.clone()), once);
        }
    }

    #[test]
    fn mixing_modes_is_rejected() {
        let a = Scalar::integer(1);
        let b = Scalar::Float(1.0);
        assert_eq!(a.checked_add(&b), Err(EigenError::ModeMismatch));
        assert_eq!(b.checked_mul(&a), Err(EigenError::ModeMismatch));
        assert_eq!(a.checked_sub(&a).unwrap(), Scalar::integer(0));
    }

    #[test]
    fn parse_exact_forms() {
        assert_eq!("3".parse::<Scalar>().unwrap(), Scalar::integer(3));
        assert_eq!("-10/4".parse::<Scalar>().unwrap(), Scalar::Exact(q(-5, 2)));
        assert_eq!("7/-14".parse::<Scalar>().unwrap(), Scalar::Exact(q(-1, 2)));
        assert!("1/0".parse::<Scalar>().is_err());
        assert!("x".parse::<Scalar>().is_err());
        assert!("1.5".parse::<Scalar>().is_err());
    }

    #[test]
    fn display_is_canonical_text() {
        assert_eq!(Scalar::exact(-10, 4).unwrap().to_string(), "-5/2");
        assert_eq!(Scalar::integer(3).to_string(), "3");
    }

    #[test]
    fn rational_direction_clears_denominators() {
        let v = [q(3, 1), q(-3, 1), q(6, 1)];
        assert_eq!(
            Rational::canonical_direction(&v).unwrap(),
            vec![q(1, 1), q(-1, 1), q(2, 1)]
        );
        let v = [q(-1, 2), q(1, 3)];
        assert_eq!(
            Rational::canonical_direction(&v).unwrap(),
            vec![q(3, 1), q(-2, 1)]
        );
        assert!(Rational::canonical_direction(&[q(0, 1), q(0, 1)]).is_none());
    }

    #[test]
    fn float_direction_ignores_noise_for_sign() {
        let v = [-1e-18, -3.0, 4.0];
        let d = f64::canonical_direction(&v).unwrap();
        assert!((d[1] - 0.6).abs() < 1e-15);
        assert!((d[2] + 0.8).abs() < 1e-15);
    }

    #[test]
    fn dyn_matrix_rejects_mixed_entries() {
        let rows = vec![
            vec![Scalar::integer(1), Scalar::Float(0.0)],
            vec![Scalar::integer(0), Scalar::integer(1)],
        ];
        assert_eq!(
            DynMatrix::from_scalars(&rows),
            Err(EigenError::ModeMismatch)
        );
    }

    #[test]
    fn dyn_matrix_mode_conversion() {
        let rows = vec![
            vec![Scalar::Float(0.5), Scalar::Float(0.0)],
            vec![Scalar::Float(0.0), Scalar::Float(2.0)],
        ];
        let m = DynMatrix::from_scalars(&rows).unwrap();
        assert_eq!(m.mode(), Mode::Float);
        let exact = m.to_exact().unwrap();
        assert_eq!(exact.get(0, 0), &q(1, 2));
        assert_eq!(m.to_float().get(1, 1), &2.0);
    }
}
