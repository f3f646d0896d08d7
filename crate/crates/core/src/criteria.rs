//! Decision procedures on the pair `(A, L')`: CAT(0), biautomaticity,
//! residual finiteness, the non-Hopf criterion, and the invariant inner
//! product.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::exactlin::{
    char_poly, is_squarefree, min_poly, reciprocal_transform, sturm_count, LinAlgError,
    Polynomial, RatMatrix, Reciprocal,
};
use crate::hnn::GroupSpec;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CriteriaError {
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
    #[error("expected a 2x2 matrix, found size {0}")]
    NotTwoByTwo(usize),
    #[error("A is not conjugate to an orthogonal matrix, so it preserves no inner product")]
    NotOrthogonalizable,
    #[error("no positive definite invariant form found after {tried} candidates")]
    SearchExhausted { tried: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MatrixOrder {
    Finite(u64),
    Infinite,
}

impl MatrixOrder {
    pub fn is_finite(self) -> bool {
        matches!(self, MatrixOrder::Finite(_))
    }
}

/// Outcome of the non-Hopf criterion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NonHopfVerdict {
    /// `mA` is integral and `k = m·tr(A)` is coprime to `m`.
    Holds { m: BigInt, k: BigInt },
    Fails,
    /// The criterion only covers `G(A)` with `n = 2`.
    Inapplicable(&'static str),
}

impl NonHopfVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, NonHopfVerdict::Holds { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnalysisReport {
    pub n: usize,
    pub det: BigRational,
    pub trace: BigRational,
    pub char_poly: Polynomial,
    pub index_lprime: BigInt,
    pub index_lsecond: BigInt,
    pub is_ascending: bool,
    pub cat0: bool,
    pub order: MatrixOrder,
    pub biautomatic: bool,
    pub virtually_biautomatic: bool,
    pub residually_finite: bool,
    pub linear_over_q: bool,
    pub nonhopf: NonHopfVerdict,
    /// `nonhopf` holds and `L'` is maximal.
    pub nonhopf_applies: bool,
    pub qi_class: Option<String>,
}

fn square(a: &RatMatrix) -> Result<usize, LinAlgError> {
    if !a.is_square() {
        return Err(LinAlgError::NotSquare);
    }
    Ok(a.rows())
}

/// True iff `A` is conjugate in `GL(n, ℝ)` to an orthogonal matrix, i.e. its
/// minimal polynomial is squarefree with every root on the unit circle.
pub fn is_conjugate_orthogonal(a: &RatMatrix) -> Result<bool, LinAlgError> {
    square(a)?;
    if a.det()?.is_zero() {
        return Err(LinAlgError::Singular);
    }
    let mut p = min_poly(a)?;
    if !is_squarefree(&p)? {
        return Ok(false);
    }
    for r in [1, -1] {
        let lin = Polynomial::linear_root(&BigRational::from_integer(BigInt::from(r)));
        if let Some(q) = p.div_exact(&lin) {
            p = q;
        }
    }
    if p.degree() == Some(0) {
        return Ok(true);
    }
    let h = match reciprocal_transform(&p) {
        Ok(Reciprocal::Reduced(h)) => h,
        Ok(Reciprocal::NotSelfInversive) | Err(LinAlgError::OddDegree(_)) => return Ok(false),
        Err(e) => return Err(e),
    };
    let two = BigRational::from_integer(BigInt::from(2));
    let count = sturm_count(&h, &-two.clone(), &two)?;
    Ok(!count.at_lower && !count.at_upper && Some(count.interior) == h.degree())
}

/// `det A = 1` and either `A = ±I` or `-2 < tr A < 2`: conjugacy into
/// `SO(2)` for `2x2` matrices.
pub fn is_conjugate_orthogonal_2x2(a: &RatMatrix) -> Result<bool, CriteriaError> {
    if a.rows() != 2 || a.cols() != 2 {
        return Err(CriteriaError::NotTwoByTwo(a.rows()));
    }
    if !a.det()?.is_one() {
        return Ok(false);
    }
    let scalar = a[(0, 1)].is_zero() && a[(1, 0)].is_zero() && a[(0, 0)] == a[(1, 1)];
    let t = a.trace();
    let two = BigRational::from_integer(BigInt::from(2));
    Ok(scalar || (t > -two.clone() && t < two))
}

fn totient(k: u64) -> u64 {
    let (mut m, mut phi, mut p) = (k, k, 2);
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            phi -= phi / p;
        }
        p += 1;
    }
    if m > 1 {
        phi -= phi / m;
    }
    phi
}

fn pow_big(a: &RatMatrix, e: &BigInt) -> RatMatrix {
    let mut out = RatMatrix::identity(a.rows());
    for i in (0..e.bits()).rev() {
        out = &out * &out;
        if e.bit(i) {
            out = &out * a;
        }
    }
    out
}

/// Order of `A` in `GL(n, ℚ)`. Any finite order is a divisor of
/// `N = lcm{k : φ(k) ≤ n}`, so it suffices to test divisors of `N`.
pub fn matrix_order(a: &RatMatrix) -> Result<MatrixOrder, LinAlgError> {
    let n = square(a)?;
    if !a.det()?.abs().is_one() || !char_poly(a)?.has_integer_coeffs() {
        return Ok(MatrixOrder::Infinite);
    }
    let bound = 2 * (n as u64) * (n as u64) + 1;
    let mut d = BigInt::one();
    for k in 1..=bound {
        if totient(k) <= n as u64 {
            d = d.lcm(&BigInt::from(k));
        }
    }
    if !pow_big(a, &d).is_identity() {
        return Ok(MatrixOrder::Infinite);
    }
    for p in (2..=bound).filter(|&p| totient(p) == p - 1) {
        let p = BigInt::from(p);
        while d.is_multiple_of(&p) && pow_big(a, &(&d / &p)).is_identity() {
            d /= &p;
        }
    }
    Ok(MatrixOrder::Finite(
        d.to_u64().expect("orders of rational matrices of supported size fit in u64"),
    ))
}

pub fn is_cat0(spec: &GroupSpec) -> bool {
    is_conjugate_orthogonal(spec.matrix()).expect("spec matrices are invertible")
}

pub fn is_biautomatic(spec: &GroupSpec) -> bool {
    matrix_order(spec.matrix())
        .expect("spec matrices are square")
        .is_finite()
}

pub fn is_virtually_biautomatic(spec: &GroupSpec) -> bool {
    is_biautomatic(spec)
}

/// `L' = ℤⁿ`, or `L'' = ℤⁿ`, or `A` is conjugate into `GL(n, ℤ)`
/// (`|det A| = 1` with integral characteristic polynomial).
pub fn is_residually_finite(spec: &GroupSpec) -> bool {
    if spec.lprime().is_standard() || spec.lsecond().is_standard() {
        return true;
    }
    let a = spec.matrix();
    let det = a.det().expect("square");
    det.abs().is_one() && char_poly(a).expect("square").has_integer_coeffs()
}

pub fn is_linear_over_q(spec: &GroupSpec) -> bool {
    is_residually_finite(spec)
}

/// Tests `m = d₀`, the lcm of the entry denominators. Any admissible `m` is
/// `d₀·j`, and then `j` divides both `m` and `k = m·tr(A)`, so `j = 1`.
///
/// The test only looks at `A`. The conclusion that the group is non-Hopfian
/// is drawn for `G(A)`; see [`nonhopf_applies`].
pub fn nonhopf_criterion(spec: &GroupSpec) -> NonHopfVerdict {
    if spec.dim() != 2 {
        return NonHopfVerdict::Inapplicable("the criterion is stated for 2x2 matrices");
    }
    let a = spec.matrix();
    let det = a.det().expect("square");
    let d0 = a.denominator_lcm();
    let k = spec.trace() * BigRational::from_integer(d0.clone());
    if !det.is_integer() || d0.is_one() || !k.is_integer() {
        return NonHopfVerdict::Fails;
    }
    let k = k.to_integer();
    if !k.gcd(&d0).is_one() {
        NonHopfVerdict::Fails
    } else {
        NonHopfVerdict::Holds { m: d0, k }
    }
}

/// The criterion holds and `L' = ℤⁿ ∩ A⁻¹ℤⁿ`, so the group is non-Hopfian.
pub fn nonhopf_applies(spec: &GroupSpec) -> bool {
    nonhopf_criterion(spec).holds() && spec.is_maximal()
}

const FORM_SEARCH_LIMIT: u64 = 2_000_000;

/// Calls `f` on each vector of `[-h, h]^r` with max-norm exactly `h`, in
/// lexicographic order, until it returns `true`.
fn for_each_in_shell(r: usize, h: i64, tried: &mut u64, f: &mut impl FnMut(&[i64]) -> bool) -> bool {
    let mut c = alloc::vec![-h; r];
    loop {
        if c.iter().any(|x| x.abs() == h) {
            *tried += 1;
            if f(&c) {
                return true;
            }
            if *tried >= FORM_SEARCH_LIMIT {
                return false;
            }
        }
        let mut i = r;
        loop {
            if i == 0 {
                return false;
            }
            i -= 1;
            if c[i] < h {
                c[i] += 1;
                break;
            }
            c[i] = -h;
        }
    }
}

/// A symmetric positive definite `G` with `AᵀGA = G`, normalized to
/// `G₁₁ = 1`.
pub fn invariant_form(a: &RatMatrix) -> Result<RatMatrix, CriteriaError> {
    let n = square(a)?;
    if !is_conjugate_orthogonal(a)? {
        return Err(CriteriaError::NotOrthogonalizable);
    }
    let mut basis = Vec::new();
    for i in 0..n {
        for j in i..n {
            basis.push(RatMatrix::from_fn(n, n, |r, c| {
                if (r, c) == (i, j) || (r, c) == (j, i) {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            }));
        }
    }
    let at = a.transpose();
    let images: Vec<RatMatrix> = basis.iter().map(|e| &(&(&at * e) * a) - e).collect();
    let system = RatMatrix::from_fn(n * n, basis.len(), |row, col| {
        images[col][(row / n, row % n)].clone()
    });
    let solutions: Vec<RatMatrix> = system
        .nullspace()
        .iter()
        .map(|coeffs| {
            let mut g = RatMatrix::zeros(n, n);
            for (c, e) in coeffs.iter().zip(&basis) {
                g = &g + &e.scale(c);
            }
            g
        })
        .collect();
    let r = solutions.len();
    let mut tried = 0;
    let mut found = None;
    let mut check = |c: &[i64]| {
        let mut g = RatMatrix::zeros(n, n);
        for (x, s) in c.iter().zip(&solutions) {
            g = &g + &s.scale(&BigRational::from_integer(BigInt::from(*x)));
        }
        if g.is_positive_definite() {
            found = Some(g);
            true
        } else {
            false
        }
    };
    let mut h = 1;
    while r > 0 && tried < FORM_SEARCH_LIMIT {
        if for_each_in_shell(r, h, &mut tried, &mut check) {
            break;
        }
        h += 1;
    }
    let g = found.ok_or(CriteriaError::SearchExhausted { tried })?;
    let g11 = g[(0, 0)].clone();
    Ok(g.map(|x| x / &g11))
}

fn qi_class(spec: &GroupSpec, cat0: bool, order: MatrixOrder) -> Option<String> {
    let n = spec.dim();
    let index = spec.lprime().index();
    if cat0 && !index.is_one() {
        Some(format!("quasi-isometric to Z^{n} x F_{index}"))
    } else if order.is_finite() && index.is_one() {
        Some(format!("virtually Z^{}", n + 1))
    } else {
        None
    }
}

pub fn analyze(spec: &GroupSpec) -> Result<AnalysisReport, CriteriaError> {
    let a = spec.matrix();
    let det = a.det()?;
    let cat0 = is_conjugate_orthogonal(a)?;
    if spec.dim() == 2 && det.is_one() {
        debug_assert_eq!(cat0, is_conjugate_orthogonal_2x2(a)?);
    }
    let order = matrix_order(a)?;
    let residually_finite = is_residually_finite(spec);
    Ok(AnalysisReport {
        n: spec.dim(),
        trace: a.trace(),
        char_poly: char_poly(a)?,
        index_lprime: spec.lprime().index(),
        index_lsecond: spec.lsecond().index(),
        is_ascending: spec.lprime().is_standard() || spec.lsecond().is_standard(),
        cat0,
        order,
        biautomatic: order.is_finite(),
        virtually_biautomatic: order.is_finite(),
        residually_finite,
        linear_over_q: residually_finite,
        nonhopf: nonhopf_criterion(spec),
        nonhopf_applies: nonhopf_applies(spec),
        qi_class: qi_class(spec, cat0, order),
        det,
    })
}
