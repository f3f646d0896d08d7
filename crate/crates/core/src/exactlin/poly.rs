//! Univariate polynomials over ℚ, characteristic and minimal polynomials,
//! and exact real-root counting.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{LinAlgError, RatMatrix, RatVector};

/// Polynomial with rational coefficients, lowest degree first. The zero
/// polynomial has no coefficients; otherwise the leading coefficient is
/// nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<BigRational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(alloc::vec![c])
    }

    /// `x - r`.
    pub fn linear_root(r: &BigRational) -> Self {
        Self::new(alloc::vec![-r.clone(), BigRational::one()])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(lc) => {
                let inv = lc.recip();
                Self::new(self.coeffs.iter().map(|c| c * &inv).collect())
            }
        }
    }

    pub fn has_integer_coeffs(&self) -> bool {
        self.coeffs.iter().all(BigRational::is_integer)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    /// `p(M)` by Horner's scheme.
    pub fn eval_matrix(&self, m: &RatMatrix) -> RatMatrix {
        let n = m.rows();
        let mut acc = RatMatrix::zeros(n, n);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * m) + &RatMatrix::identity(n).scale(c);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = alloc::vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Euclidean division `self = q·d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self), LinAlgError> {
        let dd = d.degree().ok_or(LinAlgError::ZeroPolynomial)?;
        let lc_inv = d.coeffs[dd].recip();
        let mut r = self.coeffs.clone();
        let Some(sd) = self.degree().filter(|&sd| sd >= dd) else {
            return Ok((Self::zero(), self.clone()));
        };
        let mut q = alloc::vec![BigRational::zero(); sd - dd + 1];
        for k in (0..=sd - dd).rev() {
            let f = &r[k + dd] * &lc_inv;
            if f.is_zero() {
                continue;
            }
            for (j, c) in d.coeffs.iter().enumerate() {
                r[k + j] -= &f * c;
            }
            q[k] = f;
        }
        Ok((Self::new(q), Self::new(r)))
    }

    pub fn rem(&self, d: &Self) -> Result<Self, LinAlgError> {
        Ok(self.div_rem(d)?.1)
    }

    /// `self / d` when the division is exact.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(d).ok()?;
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &Self) -> bool {
        !self.is_zero() && other.rem(self).is_ok_and(|r| r.is_zero())
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = core::mem::replace(&mut b, r);
        }
        a.monic()
    }

    /// Monic lcm.
    pub fn lcm(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let g = self.gcd(other);
        self.mul(other)
            .div_exact(&g)
            .expect("gcd divides the product")
            .monic()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            let show_coeff = i == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 if show_coeff => f.write_str("*x")?,
                1 => f.write_str("x")?,
                _ if show_coeff => write!(f, "*x^{i}")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

/// Characteristic polynomial `det(xI - A)` by the Faddeev–LeVerrier
/// recurrence (exact over ℚ).
pub fn char_poly(a: &RatMatrix) -> Result<Polynomial, LinAlgError> {
    if !a.is_square() {
        return Err(LinAlgError::NotSquare);
    }
    let n = a.rows();
    let mut coeffs = alloc::vec![BigRational::zero(); n + 1];
    coeffs[n] = BigRational::one();
    let id = RatMatrix::identity(n);
    let mut m = RatMatrix::zeros(n, n);
    for k in 1..=n {
        m = &(a * &m) + &id.scale(&coeffs[n - k + 1]);
        let am = a * &m;
        coeffs[n - k] = -am.trace() / BigRational::from_integer(BigInt::from(k));
    }
    Ok(Polynomial::new(coeffs))
}

/// Monic polynomial of least degree with `p(A)·v = 0`.
fn krylov_annihilator(a: &RatMatrix, v: RatVector) -> Polynomial {
    let n = a.rows();
    let mut krylov: Vec<RatVector> = alloc::vec![v];
    loop {
        let next = a.mul_vec(krylov.last().expect("nonempty"));
        // Solve next = Σ cᵢ·krylov[i] if possible.
        let k = krylov.len();
        let system = RatMatrix::from_fn(n, k + 1, |i, j| {
            if j < k {
                krylov[j][i].clone()
            } else {
                next[i].clone()
            }
        });
        let ns = system.nullspace();
        if let Some(rel) = ns.into_iter().find(|r| !r[k].is_zero()) {
            // rel·[v, Av, …, Aᵏv] = 0, normalised so the Aᵏv coefficient is 1.
            let lead = rel[k].clone();
            return Polynomial::new(rel.iter().map(|c| c / &lead).collect());
        }
        krylov.push(next);
    }
}

/// Minimal polynomial as the lcm of the Krylov annihilators of the standard
/// basis vectors.
pub fn min_poly(a: &RatMatrix) -> Result<Polynomial, LinAlgError> {
    if !a.is_square() {
        return Err(LinAlgError::NotSquare);
    }
    let n = a.rows();
    let mut p = Polynomial::constant(BigRational::one());
    for i in 0..n {
        let mut e = alloc::vec![BigRational::zero(); n];
        e[i] = BigRational::one();
        if p.eval_matrix(a).mul_vec(&e).iter().all(Zero::is_zero) {
            continue;
        }
        p = p.lcm(&krylov_annihilator(a, e));
    }
    debug_assert!(p.divides(&char_poly(a)?));
    Ok(p)
}

/// True iff `gcd(p, p')` is constant.
pub fn is_squarefree(p: &Polynomial) -> Result<bool, LinAlgError> {
    if p.is_zero() {
        return Err(LinAlgError::ZeroPolynomial);
    }
    Ok(p.gcd(&p.derivative()).degree() == Some(0))
}

/// Outcome of [`reciprocal_transform`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reciprocal {
    /// `h` of degree `m` with `p(x) = xᵐ·h(x + 1/x)`.
    Reduced(Polynomial),
    /// The coefficient sequence is not a palindrome.
    NotSelfInversive,
}

/// For monic `p` of degree `2m` with palindromic coefficients, returns `h`
/// with `p(x) = xᵐ·h(x + 1/x)`. Uses `xᵏ + x⁻ᵏ = Cₖ(y)` where `C₀ = 2`,
/// `C₁ = y`, `Cₖ₊₁ = y·Cₖ − Cₖ₋₁`.
pub fn reciprocal_transform(p: &Polynomial) -> Result<Reciprocal, LinAlgError> {
    let deg = p.degree().ok_or(LinAlgError::ZeroPolynomial)?;
    if deg % 2 == 1 {
        return Err(LinAlgError::OddDegree(deg));
    }
    let c = p.coeffs();
    if !p.is_monic() || (0..=deg).any(|i| c[i] != c[deg - i]) {
        return Ok(Reciprocal::NotSelfInversive);
    }
    let m = deg / 2;
    let y = Polynomial::from_ints(&[0, 1]);
    let mut prev = Polynomial::from_ints(&[2]);
    let mut cur = y.clone();
    let mut h = Polynomial::constant(c[m].clone());
    for k in 1..=m {
        h = h.add(&cur.scale(&c[m + k]));
        let next = y.mul(&cur).sub(&prev);
        prev = core::mem::replace(&mut cur, next);
    }
    Ok(Reciprocal::Reduced(h))
}

/// Real roots of a polynomial relative to a closed interval `[a, b]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RootCount {
    /// Distinct real roots in the open interval `(a, b)`.
    pub interior: usize,
    pub at_lower: bool,
    pub at_upper: bool,
}

fn sign_changes(chain: &[Polynomial], x: &BigRational) -> usize {
    let signs: Vec<bool> = chain
        .iter()
        .map(|p| p.eval(x))
        .filter(|v| !v.is_zero())
        .map(|v| v.is_positive())
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Counts distinct real roots of `h` in `(a, b)` with a Sturm chain. Roots at
/// the endpoints are detected by evaluation and divided out first, so the
/// chain is only ever evaluated at non-roots.
pub fn sturm_count(
    h: &Polynomial,
    a: &BigRational,
    b: &BigRational,
) -> Result<RootCount, LinAlgError> {
    if h.is_zero() {
        return Err(LinAlgError::ZeroPolynomial);
    }
    if a >= b {
        return Err(LinAlgError::EmptyInterval);
    }
    let at_lower = h.eval(a).is_zero();
    let at_upper = h.eval(b).is_zero();
    let mut p = h.clone();
    for r in [a, b] {
        let lin = Polynomial::linear_root(r);
        while p.eval(r).is_zero() {
            p = p.div_exact(&lin).expect("root implies linear factor");
        }
    }
    let mut chain = alloc::vec![p.clone(), p.derivative()];
    while !chain.last().expect("nonempty").is_zero() {
        let k = chain.len();
        let r = chain[k - 2].rem(&chain[k - 1])?.neg();
        chain.push(r);
    }
    chain.pop();
    let interior = sign_changes(&chain, a) - sign_changes(&chain, b);
    Ok(RootCount {
        interior,
        at_lower,
        at_upper,
    })
}
