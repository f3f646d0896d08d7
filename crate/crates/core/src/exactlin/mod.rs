//! Exact integer and rational linear algebra.
//!
//! Matrices are dense and generic over the entry ring; the two instances used
//! throughout the crate are [`IntMatrix`] (arbitrary-precision integers) and
//! [`RatMatrix`] (reduced rationals). Lattices are full-rank sublattices of
//! `ℤⁿ` stored in column Hermite normal form, so equal lattices have equal
//! bases.

mod lattice;
mod matrix;
mod normal_forms;
mod poly;

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub use lattice::{lattice_from_generators, rational_preimage_lattice, Lattice, Span};
pub use matrix::{IntMatrix, Matrix, RatMatrix, ScaledMatrix};
pub use normal_forms::{hnf, snf, Hnf, Snf};
pub use poly::{
    char_poly, is_squarefree, min_poly, reciprocal_transform, sturm_count, Polynomial,
    Reciprocal, RootCount,
};

/// Arbitrary-precision integer.
pub type Int = BigInt;
/// Reduced arbitrary-precision rational with positive denominator.
pub type Rational = BigRational;
/// Integer column vector.
pub type IntVector = Vec<BigInt>;
/// Rational column vector.
pub type RatVector = Vec<BigRational>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinAlgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("rows of a matrix have different lengths")]
    Ragged,
    #[error("matrix is not square")]
    NotSquare,
    #[error("matrix is singular")]
    Singular,
    #[error("matrix does not have full column rank (rank {rank})")]
    RankDeficient { rank: usize },
    #[error("the zero polynomial is not allowed here")]
    ZeroPolynomial,
    #[error("polynomial has odd degree {0} after removing roots at ±1")]
    OddDegree(usize),
    #[error("interval is empty")]
    EmptyInterval,
    #[error("the zero vector has no primitive direction")]
    ZeroVector,
    #[error("image of basis vector {column} is not integral")]
    NonIntegralImage { column: usize },
}

/// Extended gcd: returns `(g, x, y)` with `x·a + y·b = g` and `g ≥ 0`.
pub fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let (mut old_r, mut r) = (a.clone(), b.clone());
    let (mut old_s, mut s) = (BigInt::one(), BigInt::zero());
    let (mut old_t, mut t) = (BigInt::zero(), BigInt::one());
    while !r.is_zero() {
        let q = old_r.div_floor(&r);
        let next_r = &old_r - &q * &r;
        old_r = core::mem::replace(&mut r, next_r);
        let next_s = &old_s - &q * &s;
        old_s = core::mem::replace(&mut s, next_s);
        let next_t = &old_t - &q * &t;
        old_t = core::mem::replace(&mut t, next_t);
    }
    if old_r.is_negative() {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// Divides `v` by the gcd of its entries. The sign is kept: `v` and `-v`
/// name different directions.
pub fn primitive_vector(v: &[BigInt]) -> Result<IntVector, LinAlgError> {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return Err(LinAlgError::ZeroVector);
    }
    Ok(v.iter().map(|x| x / &g).collect())
}

pub fn int_vector(entries: &[i64]) -> IntVector {
    entries.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn to_rational_vector(v: &[BigInt]) -> RatVector {
    v.iter().map(|x| BigRational::from_integer(x.clone())).collect()
}

/// Returns the integer vector if every entry has denominator one.
pub fn to_integer_vector(v: &[BigRational]) -> Option<IntVector> {
    v.iter()
        .map(|x| x.is_integer().then(|| x.to_integer()))
        .collect()
}

pub fn is_zero_vector(v: &[BigInt]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn add_vectors(a: &[BigInt], b: &[BigInt]) -> IntVector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_vectors(a: &[BigInt], b: &[BigInt]) -> IntVector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn neg_vector(a: &[BigInt]) -> IntVector {
    a.iter().map(|x| -x).collect()
}

pub fn scale_vector(k: &BigInt, a: &[BigInt]) -> IntVector {
    a.iter().map(|x| k * x).collect()
}

/// Least common multiple of the denominators of `values`.
pub fn denominator_lcm<'a>(values: impl IntoIterator<Item = &'a BigRational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primitive_vector_keeps_sign() {
        assert_eq!(primitive_vector(&int_vector(&[6, -4])).unwrap(), int_vector(&[3, -2]));
        assert_eq!(primitive_vector(&int_vector(&[0, -5])).unwrap(), int_vector(&[0, -1]));
        assert_eq!(primitive_vector(&int_vector(&[3, 4])).unwrap(), int_vector(&[3, 4]));
        assert_eq!(primitive_vector(&int_vector(&[0, 0])), Err(LinAlgError::ZeroVector));
    }

    #[test]
    fn ext_gcd_bezout() {
        for a in -12i64..=12 {
            for b in -12i64..=12 {
                let (a, b) = (BigInt::from(a), BigInt::from(b));
                let (g, x, y) = ext_gcd(&a, &b);
                assert_eq!(&x * &a + &y * &b, g);
                assert_eq!(g, a.gcd(&b));
            }
        }
    }
}
