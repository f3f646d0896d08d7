use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{hnf, snf, IntMatrix, IntVector, LinAlgError, RatMatrix};

/// A full-rank sublattice of `ℤⁿ`, stored by its column Hermite normal form.
///
/// The basis is lower triangular with positive diagonal and each entry left
/// of the diagonal reduced into `[0, diagonal)`. Two lattices are equal iff
/// their bases are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lattice {
    basis: IntMatrix,
}

/// The span of a set of generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Span {
    Full(Lattice),
    /// The generators span a subgroup of infinite index.
    Deficient { rank: usize },
}

impl Span {
    pub fn full(self) -> Option<Lattice> {
        match self {
            Span::Full(l) => Some(l),
            Span::Deficient { .. } => None,
        }
    }
}

/// Canonical lattice spanned by `vectors` in `ℤⁿ`.
pub fn lattice_from_generators(vectors: &[IntVector], n: usize) -> Result<Span, LinAlgError> {
    if vectors.is_empty() {
        return Ok(Span::Deficient { rank: 0 });
    }
    let m = IntMatrix::from_columns(n, vectors)?;
    let r = hnf(&m, true)?;
    if r.rank < n {
        return Ok(Span::Deficient { rank: r.rank });
    }
    let basis = IntMatrix::from_fn(n, n, |i, j| r.h[(i, j)].clone());
    Ok(Span::Full(Lattice { basis }))
}

/// `{v ∈ ℤⁿ : A·v ∈ L}` for invertible rational `A`.
///
/// With `C = H⁻¹A` (`H` the basis of `L`) the condition is `C·v ∈ ℤⁿ`. Writing
/// `C = N / d` with integral `N` and taking `S = U·N·V`, the solutions are
/// `V·diag(d / gcd(sᵢ, d))·ℤⁿ`.
pub fn rational_preimage_lattice(a: &RatMatrix, l: &Lattice) -> Result<Lattice, LinAlgError> {
    let n = l.dim();
    if a.rows() != n || a.cols() != n {
        return Err(LinAlgError::Dimension {
            expected: n,
            found: a.rows(),
        });
    }
    let h_inv = l.basis.to_rational().inverse()?;
    let c = &h_inv * a;
    let d = c.denominator_lcm();
    let dq = BigRational::from_integer(d.clone());
    let num = c.map(|x| (x * &dq).to_integer());
    let f = snf(&num);
    let mut columns = Vec::with_capacity(n);
    for i in 0..n {
        let s = &f.s[(i, i)];
        if s.is_zero() {
            return Err(LinAlgError::Singular);
        }
        let scale = &d / s.gcd(&d);
        columns.push(f.v.column(i).iter().map(|x| x * &scale).collect::<IntVector>());
    }
    Ok(lattice_from_generators(&columns, n)?
        .full()
        .expect("preimage of a full-rank lattice under an invertible map has full rank"))
}

impl Lattice {
    pub fn standard(n: usize) -> Self {
        Self {
            basis: IntMatrix::identity(n),
        }
    }

    /// `kℤⁿ`.
    pub fn scaled_standard(n: usize, k: i64) -> Self {
        assert!(k > 0, "scale must be positive");
        Self {
            basis: IntMatrix::identity(n).scale(&BigInt::from(k)),
        }
    }

    /// Lattice with the given generating columns; errors unless they span a
    /// full-rank lattice.
    pub fn from_columns(n: usize, columns: &[IntVector]) -> Result<Self, LinAlgError> {
        match lattice_from_generators(columns, n)? {
            Span::Full(l) => Ok(l),
            Span::Deficient { rank } => Err(LinAlgError::RankDeficient { rank }),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    /// HNF basis, one lattice vector per column.
    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<IntVector> {
        self.basis.columns()
    }

    /// `|ℤⁿ : L|`, the product of the diagonal of the HNF basis.
    pub fn index(&self) -> BigInt {
        (0..self.dim()).fold(BigInt::one(), |acc, i| acc * &self.basis[(i, i)])
    }

    pub fn is_standard(&self) -> bool {
        self.basis.is_identity()
    }

    /// Coordinates of `v` in the HNF basis, if `v ∈ L`.
    pub fn coordinates(&self, v: &[BigInt]) -> Option<IntVector> {
        assert_eq!(v.len(), self.dim(), "vector dimension mismatch");
        let mut rest = v.to_vec();
        let mut coords = Vec::with_capacity(v.len());
        for i in 0..self.dim() {
            let (q, r) = rest[i].div_rem(&self.basis[(i, i)]);
            if !r.is_zero() {
                return None;
            }
            for (k, x) in rest.iter_mut().enumerate().skip(i) {
                *x -= &q * &self.basis[(k, i)];
            }
            coords.push(q);
        }
        Some(coords)
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.coordinates(v).is_some()
    }

    /// Representative of `v + L` in the half-open fundamental parallelepiped
    /// of the HNF basis: entry `i` lies in `[0, hᵢᵢ)`.
    pub fn coset_canonical(&self, v: &[BigInt]) -> IntVector {
        assert_eq!(v.len(), self.dim(), "vector dimension mismatch");
        let mut rest = v.to_vec();
        for i in 0..self.dim() {
            let q = rest[i].div_floor(&self.basis[(i, i)]);
            if q.is_zero() {
                continue;
            }
            for (k, x) in rest.iter_mut().enumerate().skip(i) {
                *x -= &q * &self.basis[(k, i)];
            }
        }
        rest
    }

    /// `A·L`, provided the image of every basis vector is integral.
    pub fn image(&self, a: &RatMatrix) -> Result<Lattice, LinAlgError> {
        let scaled = super::ScaledMatrix::new(a);
        let mut columns = Vec::with_capacity(self.dim());
        for (j, b) in self.basis_vectors().iter().enumerate() {
            columns.push(
                scaled
                    .apply(b)
                    .ok_or(LinAlgError::NonIntegralImage { column: j })?,
            );
        }
        Lattice::from_columns(self.dim(), &columns)
    }

    pub fn is_sublattice_of(&self, other: &Lattice) -> bool {
        self.basis_vectors().iter().all(|b| other.contains(b))
    }
}
