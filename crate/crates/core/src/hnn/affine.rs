use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::Zero;

use super::{GroupSpec, HnnError, Letter, Word};
use crate::exactlin::{RatMatrix, RatVector};

/// `x ↦ B·x + v` on `ℚⁿ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineMap {
    pub linear: RatMatrix,
    pub translation: RatVector,
}

impl AffineMap {
    pub fn identity(n: usize) -> Self {
        Self {
            linear: RatMatrix::identity(n),
            translation: alloc::vec![BigRational::zero(); n],
        }
    }

    pub fn is_identity(&self) -> bool {
        self.linear.is_identity() && self.translation.iter().all(Zero::is_zero)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &AffineMap) -> AffineMap {
        let moved = self.linear.mul_vec(&other.translation);
        AffineMap {
            linear: &self.linear * &other.linear,
            translation: moved.iter().zip(&self.translation).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn apply(&self, x: &[BigRational]) -> RatVector {
        self.linear
            .mul_vec(x)
            .iter()
            .zip(&self.translation)
            .map(|(a, b)| a + b)
            .collect()
    }
}

/// The action in which `ℤⁿ` translates and `t` acts by `A`.
pub fn affine_rep(spec: &GroupSpec, w: &Word) -> AffineMap {
    let n = spec.dim();
    let mut out = AffineMap::identity(n);
    for letter in w.letters() {
        let step = match letter {
            Letter::Gen { index, exp } => {
                let mut m = AffineMap::identity(n);
                m.translation[*index] = BigRational::from_integer(exp.clone());
                m
            }
            Letter::Stable(e) => {
                let base = if *e > 0 {
                    spec.matrix()
                } else {
                    spec.inverse_matrix()
                };
                AffineMap {
                    linear: base.pow(e.unsigned_abs()),
                    translation: alloc::vec![BigRational::zero(); n],
                }
            }
        };
        out = out.compose(&step);
    }
    out
}

fn quadratic(g: &RatMatrix, x: &[BigRational]) -> BigRational {
    g.mul_vec(x).iter().zip(x).map(|(a, b)| a * b).sum()
}

/// Checks that `g` is symmetric positive definite with `Aᵀ·G·A = G`.
pub(crate) fn check_invariant_form(spec: &GroupSpec, g: &RatMatrix) -> Result<(), HnnError> {
    let n = spec.dim();
    if g.rows() != n || g.cols() != n || g.transpose() != *g || !g.is_positive_definite() {
        return Err(HnnError::InvalidForm);
    }
    let a = spec.matrix();
    if &(&a.transpose() * g) * a != *g {
        return Err(HnnError::InvalidForm);
    }
    Ok(())
}

/// `min_x ‖(B − I)x + v‖²_G` for the affine map `(B, v)` of `w`.
pub fn euclidean_translation_length_sq(
    spec: &GroupSpec,
    w: &Word,
    g: &RatMatrix,
) -> Result<BigRational, HnnError> {
    check_invariant_form(spec, g)?;
    let map = affine_rep(spec, w);
    let n = spec.dim();
    let m = &map.linear - &RatMatrix::identity(n);
    let (_, pivots) = m.rref();
    if pivots.len() == n {
        return Ok(BigRational::zero());
    }
    let v = &map.translation;
    if pivots.is_empty() {
        return Ok(quadratic(g, v));
    }
    // G-orthogonal projection of v onto the column space of B − I.
    let cols: Vec<RatVector> = pivots.iter().map(|&j| m.column(j)).collect();
    let c = RatMatrix::from_columns(n, &cols)?;
    let ct_g = &c.transpose() * g;
    let gram = &ct_g * &c;
    let rhs = ct_g.mul_vec(v);
    let coeffs = gram.solve(&rhs)?;
    let proj = c.mul_vec(&coeffs);
    let residual: RatVector = v.iter().zip(&proj).map(|(a, b)| a - b).collect();
    Ok(quadratic(g, &residual))
}
