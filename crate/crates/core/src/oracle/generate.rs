use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{EigenError, Result};
use crate::spectrum::{CharPoly, SpectralClass};
use crate::{ExactMatrix, Rational};

const RETRIES_PER_RANGE: usize = 64;

/// Jordan structure to synthesize: `(eigenvalue, block size)` per block.
#[derive(Debug, Clone, PartialEq)]
pub struct JordanSpec {
    dim: usize,
    blocks: Vec<(Rational, usize)>,
}

impl JordanSpec {
    pub fn new(dim: usize, blocks: Vec<(Rational, usize)>) -> Result<Self> {
        if dim != 2 && dim != 3 {
            return Err(EigenError::UnsupportedDimension(dim));
        }
        let total: usize = blocks.iter().map(|b| b.1).sum();
        if total != dim || blocks.iter().any(|b| b.1 == 0) {
            return Err(EigenError::InconsistentSpectrum { total, dim });
        }
        Ok(Self { dim, blocks })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn blocks(&self) -> &[(Rational, usize)] {
        &self.blocks
    }

    /// Block diagonal Jordan matrix: eigenvalues on the diagonal, ones on
    /// the superdiagonal inside each block.
    pub fn jordan_matrix(&self) -> ExactMatrix {
        let mut j = ExactMatrix::zero(self.dim);
        let mut at = 0;
        for (lam, size) in &self.blocks {
            for k in 0..*size {
                j.set(at + k, at + k, lam.clone());
                if k + 1 < *size {
                    j.set(at + k, at + k + 1, Rational::from_integer(1.into()));
                }
            }
            at += size;
        }
        j
    }

    /// Distinct eigenvalues with (algebraic, geometric) multiplicities.
    fn multiplicities(&self) -> Vec<(Rational, usize, usize)> {
        let mut out: Vec<(Rational, usize, usize)> = Vec::new();
        for (lam, size) in &self.blocks {
            match out.iter_mut().find(|e| &e.0 == lam) {
                Some(e) => {
                    e.1 += size;
                    e.2 += 1;
                }
                None => out.push((lam.clone(), *size, 1)),
            }
        }
        out
    }

    pub fn char_poly(&self) -> CharPoly<Rational> {
        let roots: Vec<(Rational, usize)> = self
            .multiplicities()
            .into_iter()
            .map(|(l, a, _)| (l, a))
            .collect();
        CharPoly::from_roots(&roots)
    }

    pub fn expected_class(&self) -> SpectralClass {
        let m = self.multiplicities();
        let repeated_geo = m.iter().find(|e| e.1 > 1).map_or(0, |e| e.2 as u8);
        match (self.dim, m.len()) {
            (2, 2) => SpectralClass::Distinct2,
            (2, _) => SpectralClass::Double2 { geo: repeated_geo },
            (3, 3) => SpectralClass::Distinct3,
            (3, 2) => SpectralClass::SimplePlusDouble {
                geo_of_double: repeated_geo,
            },
            _ => SpectralClass::Triple { geo: repeated_geo },
        }
    }

    /// Random spec of the given class with small rational eigenvalues.
    pub fn sample(class: SpectralClass, rng: &mut impl Rng) -> Self {
        let count = match class {
            SpectralClass::Distinct3 => 3,
            SpectralClass::Distinct2 | SpectralClass::SimplePlusDouble { .. } => 2,
            _ => 1,
        };
        let mut eig: Vec<Rational> = Vec::with_capacity(count);
        while eig.len() < count {
            let den = [1, 1, 1, 2, 3][rng.random_range(0..5)];
            let lam = Rational::new(rng.random_range(-9i64..=9).into(), (den as i64).into());
            if !eig.contains(&lam) {
                eig.push(lam);
            }
        }
        let e = |i: usize, size: usize| (eig[i].clone(), size);
        let blocks = match class {
            SpectralClass::Distinct2 => vec![e(0, 1), e(1, 1)],
            SpectralClass::Double2 { geo: 1 } => vec![e(0, 2)],
            SpectralClass::Double2 { .. } => vec![e(0, 1), e(0, 1)],
            SpectralClass::Distinct3 => vec![e(0, 1), e(1, 1), e(2, 1)],
            SpectralClass::SimplePlusDouble { geo_of_double: 1 } => vec![e(0, 1), e(1, 2)],
            SpectralClass::SimplePlusDouble { .. } => vec![e(0, 1), e(1, 1), e(1, 1)],
            SpectralClass::Triple { geo: 1 } => vec![e(0, 3)],
            SpectralClass::Triple { geo: 2 } => vec![e(0, 2), e(0, 1)],
            SpectralClass::Triple { .. } => vec![e(0, 1), e(0, 1), e(0, 1)],
        };
        Self::new(class.dim(), blocks).expect("sampled spec is consistent")
    }
}

/// `P J P⁻¹` with the inverse taken as adjugate over determinant.
pub fn conjugate(j: &ExactMatrix, p: &ExactMatrix) -> Result<ExactMatrix> {
    let det = p.determinant();
    if num_traits::Zero::is_zero(&det) {
        return Err(EigenError::ZeroMatrix);
    }
    let inv = p.adjugate().scale(&det.recip());
    p.mat_mul(j)?.mat_mul(&inv)
}

fn random_invertible(dim: usize, rng: &mut impl Rng) -> ExactMatrix {
    let mut range = 9i64;
    loop {
        for _ in 0..RETRIES_PER_RANGE {
            let rows = (0..dim)
                .map(|_| {
                    (0..dim)
                        .map(|_| Rational::from_integer(rng.random_range(-range..=range).into()))
                        .collect()
                })
                .collect();
            let p = ExactMatrix::from_rows(rows).expect("valid dimension");
            if !num_traits::Zero::is_zero(&p.determinant()) {
                return p;
            }
        }
        range = range * 10 + 9;
    }
}

/// Matrix with exactly the Jordan structure of `spec`, reproducible from `seed`.
pub fn generate_matrix(spec: &JordanSpec, seed: u64) -> ExactMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = random_invertible(spec.dim, &mut rng);
    conjugate(&spec.jordan_matrix(), &p).expect("P is invertible")
}

/// Spec of the given class and its generated matrix, both derived from `seed`.
pub fn generate_case(class: SpectralClass, seed: u64) -> (JordanSpec, ExactMatrix) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let spec = JordanSpec::sample(class, &mut rng);
    let p = random_invertible(spec.dim, &mut rng);
    let a = conjugate(&spec.jordan_matrix(), &p).expect("P is invertible");
    (spec, a)
}
