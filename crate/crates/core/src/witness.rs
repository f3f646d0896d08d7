//! Certificates: the non-Hopf endomorphism with a kernel element, the
//! surjectivity identity, and the Wise-property witness.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::criteria::{nonhopf_criterion, NonHopfVerdict};
use crate::exactlin::{IntMatrix, IntVector, Lattice, RatMatrix, ScaledMatrix};
use crate::hnn::{is_identity, normalize, GroupSpec, Word};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WitnessError {
    #[error("the non-Hopf criterion fails for this group")]
    CriterionFails,
    #[error("the non-Hopf criterion does not apply: {0}")]
    Inapplicable(&'static str),
    #[error("the Wise witness is defined for 2x2 matrices, found size {0}")]
    NotTwoDimensional(usize),
    #[error("n must be at least 1")]
    ZeroPower,
    #[error("A^n·(n·m^n·e1) = {0} is not integral")]
    NonIntegral(String),
    #[error("n·e1 and h = {0} are linearly dependent")]
    ZeroDeterminant(String),
    #[error("verification failed: {0}")]
    VerificationFailed(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonHopfCertificate {
    pub m: BigInt,
    pub k: BigInt,
    pub l: BigInt,
    pub c: IntVector,
    pub d: IntVector,
    pub kernel_word: Word,
    pub transcript: Vec<(String, bool)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WiseCertificate {
    pub n: u32,
    pub m: BigInt,
    pub h: IntVector,
    pub index: BigInt,
}

fn criterion(spec: &GroupSpec) -> Result<(BigInt, BigInt), WitnessError> {
    match nonhopf_criterion(spec) {
        NonHopfVerdict::Holds { .. } if !spec.is_maximal() => {
            Err(WitnessError::Inapplicable("the endomorphism needs L' = Z^n ∩ A^-1 Z^n"))
        }
        NonHopfVerdict::Holds { m, k } => Ok((m, k)),
        NonHopfVerdict::Fails => Err(WitnessError::CriterionFails),
        NonHopfVerdict::Inapplicable(why) => Err(WitnessError::Inapplicable(why)),
    }
}

fn determinant(spec: &GroupSpec) -> BigInt {
    spec.matrix().det().expect("square").to_integer()
}

/// `φ`: every generator of `ℤⁿ` goes to its `m`-th power, `t` to `t`.
pub fn phi(w: &Word, m: &BigInt) -> Word {
    w.map_generators(|i, e| Word::generator_power(i, e * m))
}

fn surjectivity_word(c: usize, m: &BigInt, k: &BigInt, l: &BigInt) -> Word {
    Word::stable(1)
        .concat(&Word::generator_power(c, m.clone()))
        .concat(&Word::stable(-2))
        .concat(&Word::generator_power(c, m * l))
        .concat(&Word::stable(1))
        .concat(&Word::generator_power(c, -k))
}

/// Checks `t c^m t⁻² c^{ml} t = c^k` in `G` for the generator `c` and the
/// matrix identity `mA + ml·A⁻¹ = kI`.
pub fn verify_surjectivity_identity(spec: &GroupSpec, c: usize) -> Result<bool, WitnessError> {
    let (m, k) = criterion(spec)?;
    let l = determinant(spec);
    let mq = BigRational::from_integer(m.clone());
    let lq = BigRational::from_integer(l.clone());
    let kq = BigRational::from_integer(k.clone());
    let lhs = &spec.matrix().scale(&mq) + &spec.inverse_matrix().scale(&(&mq * &lq));
    let matrix_ok = lhs == RatMatrix::identity(spec.dim()).scale(&kq);
    Ok(matrix_ok && is_identity(spec, &surjectivity_word(c, &m, &k, &l)))
}

/// Standard basis vectors first, then vectors of increasing max-norm in
/// lexicographic order.
fn first_outside(lattice: &Lattice) -> IntVector {
    let n = lattice.dim();
    for i in 0..n {
        let mut e = alloc::vec![BigInt::zero(); n];
        e[i] = BigInt::from(1);
        if !lattice.contains(&e) {
            return e;
        }
    }
    for h in 1i64.. {
        let mut v = alloc::vec![-h; n];
        loop {
            if v.iter().any(|x| x.abs() == h) {
                let w: IntVector = v.iter().map(|&x| BigInt::from(x)).collect();
                if !lattice.contains(&w) {
                    return w;
                }
            }
            let Some(i) = (0..n).rev().find(|&i| v[i] < h) else {
                break;
            };
            v[i] += 1;
            for x in &mut v[i + 1..] {
                *x = -h;
            }
        }
    }
    unreachable!("a proper sublattice misses some vector")
}

/// Builds and verifies the endomorphism `φ` together with the kernel element
/// `[t c t⁻¹, d]`.
pub fn nonhopf_endomorphism_witness(spec: &GroupSpec) -> Result<NonHopfCertificate, WitnessError> {
    let (m, k) = criterion(spec)?;
    let l = determinant(spec);
    let c = first_outside(spec.lprime());
    let d = first_outside(spec.lsecond());
    let tct = Word::stable(1)
        .concat(&Word::from_vector(&c))
        .concat(&Word::stable(-1));
    let kernel_word = Word::commutator(&tct, &Word::from_vector(&d));
    let fmt = |v: &IntVector| crate::hnn::format_vector(v);

    let mut transcript = Vec::new();
    let nf = normalize(spec, &kernel_word);
    transcript.push((
        format!(
            "c = {} is not in L' and d = {} is not in L''",
            fmt(&c),
            fmt(&d)
        ),
        !spec.lprime().contains(&c) && !spec.lsecond().contains(&d),
    ));
    transcript.push((
        format!(
            "[t c t^-1, d] = {} is nontrivial (Britton form with {} stable letters)",
            spec.format_word(&kernel_word),
            nf.t_count()
        ),
        !nf.is_identity(),
    ));
    transcript.push((
        format!(
            "phi([t c t^-1, d]) = {} is trivial",
            spec.format_word(&phi(&kernel_word, &m))
        ),
        is_identity(spec, &phi(&kernel_word, &m)),
    ));
    for r in spec.relators() {
        transcript.push((
            format!("phi maps the relator {} to the identity", spec.format_word(&r)),
            is_identity(spec, &phi(&r, &m)),
        ));
    }
    for i in 0..spec.dim() {
        let w = surjectivity_word(i, &m, &k, &l);
        transcript.push((
            format!("{} is trivial, so {}^{k} lies in the image of phi", spec.format_word(&w), spec.names()[i]),
            verify_surjectivity_identity(spec, i)?,
        ));
    }
    if let Some((claim, _)) = transcript.iter().find(|(_, ok)| !ok) {
        return Err(WitnessError::VerificationFailed(claim.clone()));
    }
    Ok(NonHopfCertificate {
        m,
        k,
        l,
        c,
        d,
        kernel_word,
        transcript,
    })
}

/// `h = Aⁿ·(n·mⁿ·e₁)` with `m = |ℤ² : L'|`, and the index of `⟨n·e₁, h⟩`.
pub fn wise_witness(spec: &GroupSpec, n: u32) -> Result<WiseCertificate, WitnessError> {
    if spec.dim() != 2 {
        return Err(WitnessError::NotTwoDimensional(spec.dim()));
    }
    if n == 0 {
        return Err(WitnessError::ZeroPower);
    }
    let m = spec.lprime().index();
    let scale = BigInt::from(n) * num_traits::pow(m.clone(), n as usize);
    let start = alloc::vec![scale.clone(), BigInt::zero()];
    let power = ScaledMatrix::new(&spec.matrix().pow(u64::from(n)));
    let h = power.apply(&start).ok_or_else(|| {
        WitnessError::NonIntegral(crate::hnn::format_vector(&power.apply_rational(&start)))
    })?;
    let conj = Word::stable(i64::from(n))
        .concat(&Word::generator_power(0, scale))
        .concat(&Word::stable(-i64::from(n)));
    if normalize(spec, &conj).as_lattice_element() != Some(&h) {
        return Err(WitnessError::VerificationFailed(format!(
            "t^{n} a^(n m^n) t^-{n} does not normalize to {}",
            crate::hnn::format_vector(&h)
        )));
    }
    let cols = IntMatrix::from_columns(2, &[alloc::vec![BigInt::from(n), BigInt::zero()], h.clone()])
        .expect("2x2");
    let index = cols.det().expect("square").abs();
    if index.is_zero() {
        return Err(WitnessError::ZeroDeterminant(crate::hnn::format_vector(&h)));
    }
    Ok(WiseCertificate { n, m, h, index })
}
