//! Rational-root eigenvalue extraction for exact polynomials of degree 2 and 3.
//!
//! The cubic is cleared of denominators and rescaled to a monic integer
//! polynomial, whose rational roots are then exactly its integer roots (all
//! dividing the constant term). Those are located by exact bisection on the
//! monotone pieces of the cubic, then deflated to a quadratic that is solved
//! with an exact perfect-square test on its discriminant.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{CharPoly, Spectrum};
use crate::error::{EigenError, Result};
use crate::Rational;

pub fn eigenvalues_exact(p: &CharPoly<Rational>) -> Result<Spectrum<Rational>> {
    let degree = p.degree();
    let c = p.coeffs();
    let mut roots = match degree {
        1 => vec![-c[0].clone()],
        2 => quadratic_roots(&c[1], &c[0])?,
        3 => {
            let r = rational_root_of_cubic(&c[0], &c[1], &c[2])
                .ok_or(EigenError::IrrationalSpectrum)?;
            // synthetic division by (λ - r)
            let q1 = c[2].clone() + r.clone();
            let q0 = c[1].clone() + r.clone() * q1.clone();
            debug_assert!((c[0].clone() + r.clone() * q0.clone()).is_zero());
            let mut rest = quadratic_roots(&q1, &q0)?;
            rest.push(r);
            rest
        }
        d => return Err(EigenError::UnsupportedDimension(d)),
    };
    roots.sort();
    let mut entries: Vec<(Rational, usize)> = Vec::new();
    for r in roots {
        match entries.last_mut() {
            Some(last) if last.0 == r => last.1 += 1,
            _ => entries.push((r, 1)),
        }
    }
    Spectrum::new(degree, entries)
}

/// Roots of `λ² + bλ + c`, both rational, or the reason they are not.
fn quadratic_roots(b: &Rational, c: &Rational) -> Result<Vec<Rational>> {
    let disc = b * b - Rational::from_integer(4.into()) * c;
    if disc.is_negative() {
        return Err(EigenError::ComplexSpectrum);
    }
    let s = rational_sqrt(&disc).ok_or(EigenError::IrrationalSpectrum)?;
    let two = Rational::from_integer(2.into());
    Ok(vec![(-b - &s) / &two, (-b + &s) / &two])
}

fn rational_sqrt(x: &Rational) -> Option<Rational> {
    let n = x.numer();
    let d = x.denom();
    let sn = n.sqrt();
    let sd = d.sqrt();
    (&sn * &sn == *n && &sd * &sd == *d).then(|| Rational::new(sn, sd))
}

/// Some rational root of `λ³ + c2 λ² + c1 λ + c0`, if one exists.
fn rational_root_of_cubic(c0: &Rational, c1: &Rational, c2: &Rational) -> Option<Rational> {
    let lcm = [c0, c1, c2]
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let a3 = lcm.clone();
    let a2 = (c2 * Rational::from_integer(lcm.clone())).to_integer();
    let a1 = (c1 * Rational::from_integer(lcm.clone())).to_integer();
    let a0 = (c0 * Rational::from_integer(lcm)).to_integer();
    // y = a3·λ turns a3λ³ + a2λ² + a1λ + a0 into a monic integer cubic
    let monic = [&a0 * &a3 * &a3, &a1 * &a3, a2];
    integer_root_of_monic_cubic(&monic).map(|y| Rational::new(y, a3))
}

fn eval_monic(c: &[BigInt; 3], y: &BigInt) -> BigInt {
    ((y + &c[2]) * y + &c[1]) * y + &c[0]
}

/// An integer root of `y³ + c[2]y² + c[1]y + c[0]`, if any.
pub(crate) fn integer_root_of_monic_cubic(c: &[BigInt; 3]) -> Option<BigInt> {
    if c[0].is_zero() {
        return Some(BigInt::zero());
    }
    let f = |y: &BigInt| eval_monic(c, y);
    // Cauchy bound: every root lies strictly inside (-bound, bound)
    let bound: BigInt = c.iter().map(Signed::abs).max().unwrap() + 1;
    let lo = -bound.clone();
    let hi = bound;
    let a = &c[2];
    let b = &c[1];
    // f'(y) = 3y² + 2ay + b has real critical points iff a² - 3b > 0
    let d = a * a - BigInt::from(3) * b;
    if !d.is_positive() {
        return monotone_root(&f, &lo, &hi);
    }
    let s = d.sqrt();
    let three = BigInt::from(3);
    // integer brackets around the critical points y₁ ≤ y₂
    let low: BigInt = -a - &s;
    let high: BigInt = -a + &s;
    let c1: BigInt = (&low - BigInt::one()).div_floor(&three) - 1;
    let c2: BigInt = ceil_div(&low, &three) + 1;
    let d1: BigInt = high.div_floor(&three) - 1;
    let d2: BigInt = ceil_div(&(&high + BigInt::one()), &three) + 1;

    if let Some(r) = monotone_root(&f, &lo, &c1.clone().min(hi.clone())) {
        return Some(r);
    }
    if c2 <= d1 {
        if let Some(r) = monotone_root(&f, &c2, &d1) {
            return Some(r);
        }
        for window in [(&c1, &c2), (&d1, &d2)] {
            if let Some(r) = scan(&f, window.0, window.1) {
                return Some(r);
            }
        }
    } else if let Some(r) = scan(&f, &c1, &d2) {
        return Some(r);
    }
    monotone_root(&f, &d2.max(lo), &hi)
}

fn ceil_div(n: &BigInt, d: &BigInt) -> BigInt {
    -((-n).div_floor(d))
}

fn scan(f: &impl Fn(&BigInt) -> BigInt, lo: &BigInt, hi: &BigInt) -> Option<BigInt> {
    let mut y = lo.clone();
    while &y <= hi {
        if f(&y).is_zero() {
            return Some(y);
        }
        y += 1;
    }
    None
}

/// Integer zero of a function monotone on `[lo, hi]`, by bisection.
fn monotone_root(f: &impl Fn(&BigInt) -> BigInt, lo: &BigInt, hi: &BigInt) -> Option<BigInt> {
    if lo > hi {
        return None;
    }
    let (mut lo, mut hi) = (lo.clone(), hi.clone());
    let f_lo = f(&lo);
    let f_hi = f(&hi);
    if f_lo.is_zero() {
        return Some(lo);
    }
    if f_hi.is_zero() {
        return Some(hi);
    }
    if f_lo.signum() == f_hi.signum() {
        return None;
    }
    let lo_sign = f_lo.signum();
    while &hi - &lo > BigInt::one() {
        let mid: BigInt = (&lo + &hi).div_floor(&BigInt::from(2));
        let fm = f(&mid);
        if fm.is_zero() {
            return Some(mid);
        }
        if fm.signum() == lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    None
}
