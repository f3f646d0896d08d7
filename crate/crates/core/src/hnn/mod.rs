//! The groups `G(A, L') = ⟨ℤⁿ, t ‖ t c t⁻¹ = A c, c ∈ L'⟩`: specifications,
//! words, Britton normal forms and the affine action on `ℚⁿ`.

mod affine;
mod normal_form;
mod word;

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::exactlin::{
    rational_preimage_lattice, IntVector, Lattice, LinAlgError, RatMatrix, ScaledMatrix,
};

pub use affine::{affine_rep, euclidean_translation_length_sq, AffineMap};
pub use normal_form::{
    britton_reduce, cyclic_reduce, is_identity, normalize, tree_translation_length, NormalForm,
};
pub use word::{Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HnnError {
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
    #[error("matrix A must be square of size {0}")]
    Shape(usize),
    #[error("matrix A is singular")]
    Singular,
    #[error("A·{vector} = {image} is not integral")]
    NonIntegralImage { vector: String, image: String },
    #[error("invalid generator name {0:?}")]
    BadName(String),
    #[error("expected {expected} generator names, found {found}")]
    NameCount { expected: usize, found: usize },
    #[error("cannot parse token {token:?}: {reason}")]
    Parse { token: String, reason: &'static str },
    #[error("not an A-invariant positive definite form")]
    InvalidForm,
}

/// The data `(n, A, L', L'' = A·L')` defining `G(A, L')`, with names for the
/// generators of `ℤⁿ` and the stable letter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSpec {
    a: RatMatrix,
    a_inv: RatMatrix,
    forward: ScaledMatrix,
    backward: ScaledMatrix,
    lprime: Lattice,
    lsecond: Lattice,
    names: Vec<String>,
    stable: String,
}

pub(crate) fn format_vector<T: core::fmt::Display>(v: &[T]) -> String {
    let mut s = String::from("(");
    for (i, x) in v.iter().enumerate() {
        if i > 0 {
            s.push_str(", ");
        }
        let _ = write!(s, "{x}");
    }
    s.push(')');
    s
}

/// `a, b, c, …` skipping `t`; `x1, x2, …` beyond that.
pub fn default_generator_names(n: usize) -> Vec<String> {
    const LETTERS: &str = "abcdefghijklmnopqrsuvwxyz";
    if n <= LETTERS.len() {
        LETTERS.chars().take(n).map(|c| c.to_string()).collect()
    } else {
        (1..=n).map(|i| format!("x{i}")).collect()
    }
}

fn valid_name(name: &str) -> bool {
    !name.is_empty()
        && name
            .chars()
            .all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
}

impl GroupSpec {
    /// Validates `(A, L')` and computes `L'' = A·L'`. With `names = None` the
    /// generators are called `a, b, …` and the stable letter `t`.
    pub fn new(
        a: RatMatrix,
        lprime: Lattice,
        names: Option<Vec<String>>,
        stable: Option<String>,
    ) -> Result<Self, HnnError> {
        let n = lprime.dim();
        if a.rows() != n || a.cols() != n {
            return Err(HnnError::Shape(n));
        }
        let a_inv = a.inverse().map_err(|_| HnnError::Singular)?;
        let forward = ScaledMatrix::new(&a);
        for b in lprime.basis_vectors() {
            if forward.apply(&b).is_none() {
                return Err(HnnError::NonIntegralImage {
                    vector: format_vector(&b),
                    image: format_vector(&forward.apply_rational(&b)),
                });
            }
        }
        let lsecond = lprime.image(&a)?;
        let names = names.unwrap_or_else(|| default_generator_names(n));
        let stable = stable.unwrap_or_else(|| "t".to_string());
        if names.len() != n {
            return Err(HnnError::NameCount {
                expected: n,
                found: names.len(),
            });
        }
        for (i, name) in names.iter().chain(core::iter::once(&stable)).enumerate() {
            let clash = names.iter().take(i).any(|m| m == name);
            if !valid_name(name) || clash {
                return Err(HnnError::BadName(name.clone()));
            }
        }
        Ok(Self {
            backward: ScaledMatrix::new(&a_inv),
            a,
            a_inv,
            forward,
            lprime,
            lsecond,
            names,
            stable,
        })
    }

    /// `G(A)`: the spec with the largest admissible `L' = ℤⁿ ∩ A⁻¹ℤⁿ`.
    pub fn maximal(a: RatMatrix) -> Result<Self, HnnError> {
        if !a.is_square() {
            return Err(HnnError::Shape(a.rows()));
        }
        let lprime = rational_preimage_lattice(&a, &Lattice::standard(a.rows()))
            .map_err(|_| HnnError::Singular)?;
        Self::new(a, lprime, None, None)
    }

    pub fn dim(&self) -> usize {
        self.lprime.dim()
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.a
    }

    pub fn inverse_matrix(&self) -> &RatMatrix {
        &self.a_inv
    }

    pub fn lprime(&self) -> &Lattice {
        &self.lprime
    }

    pub fn lsecond(&self) -> &Lattice {
        &self.lsecond
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn stable_name(&self) -> &str {
        &self.stable
    }

    /// True iff `L' = ℤⁿ ∩ A⁻¹ℤⁿ`.
    pub fn is_maximal(&self) -> bool {
        rational_preimage_lattice(&self.a, &Lattice::standard(self.dim()))
            .is_ok_and(|l| l == self.lprime)
    }

    /// `A·v`, when integral.
    pub fn forward(&self, v: &[BigInt]) -> Option<IntVector> {
        self.forward.apply(v)
    }

    /// `A⁻¹·v`, when integral.
    pub fn backward(&self, v: &[BigInt]) -> Option<IntVector> {
        self.backward.apply(v)
    }

    pub fn zero_vector(&self) -> IntVector {
        alloc::vec![BigInt::zero(); self.dim()]
    }

    pub fn unit_vector(&self, i: usize) -> IntVector {
        let mut v = self.zero_vector();
        v[i] = BigInt::from(1);
        v
    }

    /// Defining relators: commutators of the generators of `ℤⁿ` and
    /// `t c t⁻¹ (A c)⁻¹` for each HNF basis vector `c` of `L'`.
    pub fn relators(&self) -> Vec<Word> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                out.push(Word::commutator(&Word::generator(i, 1), &Word::generator(j, 1)));
            }
        }
        for c in self.lprime.basis_vectors() {
            let image = self.forward(&c).expect("validated spec");
            let lhs = Word::stable(1)
                .concat(&Word::from_vector(&c))
                .concat(&Word::stable(-1));
            out.push(lhs.concat(&Word::from_vector(&image).inverse()));
        }
        out
    }

    pub fn parse_word(&self, text: &str) -> Result<Word, HnnError> {
        Word::parse(text, &self.names, &self.stable)
    }

    pub fn format_word(&self, w: &Word) -> String {
        w.to_text(&self.names, &self.stable)
    }

    pub fn trace(&self) -> BigRational {
        self.a.trace()
    }
}
