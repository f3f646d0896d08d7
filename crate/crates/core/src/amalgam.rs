//! Index-two embeddings `G(A, L') ↪ K = H ∗_{L'} H'`.
//!
//! `H` is an extension of `ℤⁿ` by `C₂ = ⟨r⟩` with `r v r⁻¹ = R v`, and `H'`
//! an extension of `L'` by `⟨s⟩` with `s v s⁻¹ = R' v`, `R' = R A`. The
//! subgroup `⟨ℤⁿ, r s⟩` has index two and `t ↦ r s` identifies it with
//! `G(A, L')`.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::exactlin::{
    add_vectors, is_zero_vector, primitive_vector, scale_vector, sub_vectors,
    to_integer_vector, IntMatrix, IntVector, Lattice, RatMatrix, ScaledMatrix,
};
use crate::hnn::{GroupSpec, Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AmalgamError {
    #[error("R is not a valid reflection witness: {0}")]
    InvalidWitness(&'static str),
    #[error("not an orientation-reversing involution of the lattice")]
    NotInvolution,
    #[error("involution types are only defined in dimension 2, found {0}")]
    NotTwoDimensional(usize),
    #[error("a nonsplit extension needs a rectangular action")]
    NonsplitRhombic,
    #[error("cannot parse token {token:?}: {reason}")]
    Parse { token: String, reason: &'static str },
    #[error("verification failed: {0}")]
    VerificationFailed(String),
}

/// The two conjugacy classes of orientation-reversing involutions of `ℤ²`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InvolutionType {
    /// Some basis is swapped.
    Rhombic,
    /// Some basis consists of eigenvectors.
    Rectangular,
}

impl fmt::Display for InvolutionType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InvolutionType::Rhombic => "rhombic",
            InvolutionType::Rectangular => "rectangular",
        })
    }
}

/// Isomorphism type of an index-two overgroup of `ℤ²`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OvergroupType {
    WreathZC2,
    ZTimesDInfinity,
    KleinBottle,
}

impl fmt::Display for OvergroupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OvergroupType::WreathZC2 => "Z wr C2",
            OvergroupType::ZTimesDInfinity => "Z x D_inf",
            OvergroupType::KleinBottle => "BS(1,-1)",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReflectionWitness {
    pub r: IntMatrix,
    pub r_prime: RatMatrix,
    /// Type of `R` on `ℤ²`; `None` outside dimension 2.
    pub type_r: Option<InvolutionType>,
    /// Type of `R'` on `L'`.
    pub type_r_prime: Option<InvolutionType>,
}

fn check_conditions(spec: &GroupSpec, r: &IntMatrix) -> Result<RatMatrix, AmalgamError> {
    let n = spec.dim();
    if r.rows() != n || r.cols() != n {
        return Err(AmalgamError::InvalidWitness("wrong size"));
    }
    let rq = r.to_rational();
    if !(&rq * &rq).is_identity() {
        return Err(AmalgamError::InvalidWitness("R^2 != I"));
    }
    if &(&rq * spec.matrix()) * &rq != *spec.inverse_matrix() {
        return Err(AmalgamError::InvalidWitness("R A R != A^-1"));
    }
    if spec.lprime().image(&rq).ok().as_ref() != Some(spec.lsecond()) {
        return Err(AmalgamError::InvalidWitness("R L' != L''"));
    }
    Ok(&rq * spec.matrix())
}

/// Builds the witness for `R` after checking `R² = I`, `RAR = A⁻¹` and
/// `R·L' = L''`.
pub fn reflection_witness(spec: &GroupSpec, r: IntMatrix) -> Result<ReflectionWitness, AmalgamError> {
    let r_prime = check_conditions(spec, &r)?;
    let (type_r, type_r_prime) = if spec.dim() == 2 {
        (
            Some(classify_involution(&r.to_rational(), &Lattice::standard(2))?),
            Some(classify_involution(&r_prime, spec.lprime())?),
        )
    } else {
        (None, None)
    };
    Ok(ReflectionWitness {
        r,
        r_prime,
        type_r,
        type_r_prime,
    })
}

/// All integer `R` with entries in `[-bound, bound]` satisfying the three
/// conditions, in row-major lexicographic order.
pub fn find_reflections(spec: &GroupSpec, bound: u32) -> Vec<ReflectionWitness> {
    let n = spec.dim();
    let b = i64::from(bound);
    let mut entries = alloc::vec![-b; n * n];
    let mut out = Vec::new();
    loop {
        let r = IntMatrix::from_fn(n, n, |i, j| BigInt::from(entries[i * n + j]));
        if let Ok(w) = reflection_witness(spec, r) {
            out.push(w);
        }
        let Some(i) = (0..n * n).rev().find(|&i| entries[i] < b) else {
            return out;
        };
        entries[i] += 1;
        for x in &mut entries[i + 1..] {
            *x = -b;
        }
    }
}

/// `M` in the coordinates of the lattice basis, if integral.
fn in_lattice_coordinates(m: &RatMatrix, lattice: &Lattice) -> Option<IntMatrix> {
    let b = lattice.basis().to_rational();
    let b_inv = b.inverse().ok()?;
    (&(&b_inv * m) * &b).to_integer()
}

fn primitive_kernel_vector(m: &IntMatrix) -> Option<IntVector> {
    let ns = m.to_rational().nullspace();
    if ns.len() != 1 {
        return None;
    }
    let d = crate::exactlin::denominator_lcm(&ns[0]);
    let scaled: Vec<BigRational> = ns[0]
        .iter()
        .map(|x| x * BigRational::from_integer(d.clone()))
        .collect();
    primitive_vector(&to_integer_vector(&scaled)?).ok()
}

/// Rectangular iff the fixed and negated sublattices span the lattice;
/// rhombic iff they span a sublattice of index two.
pub fn classify_involution(r: &RatMatrix, lattice: &Lattice) -> Result<InvolutionType, AmalgamError> {
    if lattice.dim() != 2 {
        return Err(AmalgamError::NotTwoDimensional(lattice.dim()));
    }
    let m = in_lattice_coordinates(r, lattice).ok_or(AmalgamError::NotInvolution)?;
    if !(&m * &m).is_identity() || m.det().ok() != Some(-BigInt::one()) {
        return Err(AmalgamError::NotInvolution);
    }
    let id = IntMatrix::identity(2);
    let f = primitive_kernel_vector(&(&m - &id)).ok_or(AmalgamError::NotInvolution)?;
    let neg = primitive_kernel_vector(&(&m + &id)).ok_or(AmalgamError::NotInvolution)?;
    let index = IntMatrix::from_columns(2, &[f, neg])
        .expect("2x2")
        .det()
        .expect("square")
        .abs();
    if index.is_one() {
        Ok(InvolutionType::Rectangular)
    } else {
        debug_assert_eq!(index, BigInt::from(2));
        Ok(InvolutionType::Rhombic)
    }
}

/// A letter of a word in `K`: a power of a basis vector of `ℤⁿ`, of a basis
/// vector of `L'`, of `r`, or of `s`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum KLetter {
    L { index: usize, exp: BigInt },
    LPrime { index: usize, exp: BigInt },
    R(i64),
    S(i64),
}

impl KLetter {
    fn merge(&mut self, other: &KLetter) -> bool {
        match (self, other) {
            (KLetter::L { index: i, exp: e }, KLetter::L { index: j, exp: f })
            | (KLetter::LPrime { index: i, exp: e }, KLetter::LPrime { index: j, exp: f })
                if i == j =>
            {
                *e += f;
                true
            }
            (KLetter::R(e), KLetter::R(f)) | (KLetter::S(e), KLetter::S(f)) => {
                *e += f;
                true
            }
            _ => false,
        }
    }

    fn is_trivial(&self) -> bool {
        match self {
            KLetter::L { exp, .. } | KLetter::LPrime { exp, .. } => exp.is_zero(),
            KLetter::R(e) | KLetter::S(e) => *e == 0,
        }
    }

    fn inverse(&self) -> KLetter {
        match self {
            KLetter::L { index, exp } => KLetter::L {
                index: *index,
                exp: -exp,
            },
            KLetter::LPrime { index, exp } => KLetter::LPrime {
                index: *index,
                exp: -exp,
            },
            KLetter::R(e) => KLetter::R(-e),
            KLetter::S(e) => KLetter::S(-e),
        }
    }
}

/// Run-length encoded word over the generators of `K`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct KWord {
    letters: Vec<KLetter>,
}

impl KWord {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn new(letters: impl IntoIterator<Item = KLetter>) -> Self {
        let mut w = Self::identity();
        for l in letters {
            w.push(l);
        }
        w
    }

    pub fn letters(&self) -> &[KLetter] {
        &self.letters
    }

    pub fn push(&mut self, letter: KLetter) {
        if letter.is_trivial() {
            return;
        }
        if let Some(last) = self.letters.last_mut() {
            if last.merge(&letter) {
                if last.is_trivial() {
                    self.letters.pop();
                }
                return;
            }
        }
        self.letters.push(letter);
    }

    pub fn concat(&self, other: &KWord) -> KWord {
        let mut w = self.clone();
        for l in &other.letters {
            w.push(l.clone());
        }
        w
    }

    pub fn inverse(&self) -> KWord {
        KWord::new(self.letters.iter().rev().map(KLetter::inverse))
    }

    pub fn pow(&self, k: i64) -> KWord {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        (0..k.unsigned_abs()).fold(KWord::identity(), |w, _| w.concat(&base))
    }

    fn commutator(x: &KWord, y: &KWord) -> KWord {
        x.concat(y).concat(&x.inverse()).concat(&y.inverse())
    }

    fn from_l(v: &[BigInt]) -> KWord {
        KWord::new(v.iter().enumerate().map(|(index, e)| KLetter::L {
            index,
            exp: e.clone(),
        }))
    }

    fn from_lprime(coords: &[BigInt]) -> KWord {
        KWord::new(coords.iter().enumerate().map(|(index, e)| KLetter::LPrime {
            index,
            exp: e.clone(),
        }))
    }
}

/// A nontrivial right coset representative of `L'` in `H` or `H'`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Syllable {
    /// `v·r^ε` with `v` reduced modulo `L'`.
    H { v: IntVector, flip: bool },
    /// `s`.
    HPrime,
}

/// `ℓ·g₁⋯g_k` with `ℓ ∈ L'` and the `gᵢ` nontrivial coset representatives
/// alternating between `H` and `H'`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AmalgamNormalForm {
    pub lead: IntVector,
    pub syllables: Vec<Syllable>,
}

impl AmalgamNormalForm {
    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty() && is_zero_vector(&self.lead)
    }

    pub fn len(&self) -> usize {
        self.syllables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Factor {
    H,
    HPrime,
}

/// `v·x^ε` in one of the two factors.
#[derive(Clone, Debug)]
struct FactorElement {
    factor: Factor,
    v: IntVector,
    flip: bool,
}

/// `K = H ∗_{L'} H'` with its presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AmalgamSpec {
    pub base: GroupSpec,
    pub witness: ReflectionWitness,
    pub split_h: bool,
    pub split_h_prime: bool,
    /// `r²`, a vector of `ℤⁿ` fixed by `R`.
    pub z: IntVector,
    /// `s²`, a vector of `L'` fixed by `R'`.
    pub z_prime: IntVector,
    pub overgroup_h: Option<OvergroupType>,
    pub overgroup_h_prime: Option<OvergroupType>,
    r_prime_scaled: ScaledMatrix,
    names_l: Vec<String>,
    names_lprime: Vec<String>,
    name_r: String,
    name_s: String,
}

fn overgroup(t: Option<InvolutionType>, split: bool) -> Option<OvergroupType> {
    match (t?, split) {
        (InvolutionType::Rhombic, _) => Some(OvergroupType::WreathZC2),
        (InvolutionType::Rectangular, true) => Some(OvergroupType::ZTimesDInfinity),
        (InvolutionType::Rectangular, false) => Some(OvergroupType::KleinBottle),
    }
}

/// Primitive generator of the fixed lattice of `m` on `lattice`, in `ℤⁿ`
/// coordinates, with first nonzero entry positive.
fn fixed_generator(m: &RatMatrix, lattice: &Lattice) -> Result<IntVector, AmalgamError> {
    let local = in_lattice_coordinates(m, lattice).ok_or(AmalgamError::NotInvolution)?;
    let f = primitive_kernel_vector(&(&local - &IntMatrix::identity(lattice.dim())))
        .ok_or(AmalgamError::NotInvolution)?;
    let v = lattice.basis().mul_vec(&f);
    let negative = v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    Ok(if negative { v.iter().map(|x| -x).collect() } else { v })
}

fn fresh_name(base: &str, taken: &[String]) -> String {
    let mut name = base.to_string();
    while taken.contains(&name) {
        name.push('_');
    }
    name
}

/// Assembles `K` for a witness. Nonsplit extensions take `r²` (resp. `s²`)
/// to be the primitive fixed vector of `R` on `ℤⁿ` (resp. `R'` on `L'`).
pub fn build_amalgam(
    spec: &GroupSpec,
    witness: &ReflectionWitness,
    split_h: bool,
    split_h_prime: bool,
) -> Result<AmalgamSpec, AmalgamError> {
    let r_prime = check_conditions(spec, &witness.r)?;
    let n = spec.dim();
    let mut z = spec.zero_vector();
    let mut z_prime = spec.zero_vector();
    for (split, t, m, lattice, out) in [
        (split_h, witness.type_r, witness.r.to_rational(), Lattice::standard(n), &mut z),
        (split_h_prime, witness.type_r_prime, r_prime.clone(), spec.lprime().clone(), &mut z_prime),
    ] {
        if split {
            continue;
        }
        match t {
            Some(InvolutionType::Rectangular) => *out = fixed_generator(&m, &lattice)?,
            Some(InvolutionType::Rhombic) => return Err(AmalgamError::NonsplitRhombic),
            None => return Err(AmalgamError::NotTwoDimensional(n)),
        }
    }
    let mut taken: Vec<String> = spec.names().to_vec();
    taken.push(spec.stable_name().to_string());
    let name_r = fresh_name("r", &taken);
    taken.push(name_r.clone());
    let name_s = fresh_name("s", &taken);
    taken.push(name_s.clone());
    let names_lprime: Vec<String> = (1..=n)
        .map(|i| {
            let name = fresh_name(&format!("c{i}"), &taken);
            taken.push(name.clone());
            name
        })
        .collect();
    Ok(AmalgamSpec {
        base: spec.clone(),
        witness: witness.clone(),
        split_h,
        split_h_prime,
        z,
        z_prime,
        overgroup_h: overgroup(witness.type_r, split_h),
        overgroup_h_prime: overgroup(witness.type_r_prime, split_h_prime),
        r_prime_scaled: ScaledMatrix::new(&r_prime),
        names_l: spec.names().to_vec(),
        names_lprime,
        name_r,
        name_s,
    })
}

impl AmalgamSpec {
    pub fn generator_names(&self) -> Vec<String> {
        let mut out = self.names_l.clone();
        out.push(self.name_r.clone());
        out.extend(self.names_lprime.iter().cloned());
        out.push(self.name_s.clone());
        out
    }

    fn lprime_coords(&self, v: &[BigInt]) -> IntVector {
        self.base.lprime().coordinates(v).expect("vector of L'")
    }

    /// Commutators, the `R`- and `R'`-actions, `r²` and `s²`, and the
    /// identification of each basis vector of `L'` with its `ℤⁿ` spelling.
    pub fn relators(&self) -> Vec<KWord> {
        let n = self.base.dim();
        let mut out = Vec::new();
        let l = |i: usize| KWord::new([KLetter::L {
            index: i,
            exp: BigInt::one(),
        }]);
        let c = |i: usize| KWord::new([KLetter::LPrime {
            index: i,
            exp: BigInt::one(),
        }]);
        let r = KWord::new([KLetter::R(1)]);
        let s = KWord::new([KLetter::S(1)]);
        for i in 0..n {
            for j in i + 1..n {
                out.push(KWord::commutator(&l(i), &l(j)));
            }
        }
        for i in 0..n {
            let image = self.witness.r.column(i);
            out.push(r.concat(&l(i)).concat(&r.inverse()).concat(&KWord::from_l(&image).inverse()));
        }
        out.push(r.pow(2).concat(&KWord::from_l(&self.z).inverse()));
        for i in 0..n {
            for j in i + 1..n {
                out.push(KWord::commutator(&c(i), &c(j)));
            }
        }
        let basis = self.base.lprime().basis_vectors();
        for (i, b) in basis.iter().enumerate() {
            let image = self.r_prime_scaled.apply(b).expect("R' preserves L'");
            let coords = self.lprime_coords(&image);
            out.push(s.concat(&c(i)).concat(&s.inverse()).concat(&KWord::from_lprime(&coords).inverse()));
        }
        let zc = self.lprime_coords(&self.z_prime);
        out.push(s.pow(2).concat(&KWord::from_lprime(&zc).inverse()));
        for (i, b) in basis.iter().enumerate() {
            out.push(c(i).concat(&KWord::from_l(b).inverse()));
        }
        out
    }

    /// `ι`: `ℤⁿ` to itself and `t ↦ r·s`.
    pub fn iota(&self, w: &Word) -> KWord {
        let mut out = KWord::identity();
        let rs = KWord::new([KLetter::R(1), KLetter::S(1)]);
        for letter in w.letters() {
            match letter {
                Letter::Gen { index, exp } => out.push(KLetter::L {
                    index: *index,
                    exp: exp.clone(),
                }),
                Letter::Stable(e) => out = out.concat(&rs.pow(*e)),
            }
        }
        out
    }

    /// `η: K → ℤ/2`, `r, s ↦ 1`, `ℤⁿ ↦ 0`.
    pub fn eta(&self, w: &KWord) -> bool {
        w.letters()
            .iter()
            .map(|l| match l {
                KLetter::R(e) | KLetter::S(e) => e.rem_euclid(2) == 1,
                _ => false,
            })
            .fold(false, |acc, x| acc ^ x)
    }

    fn mul(&self, x: &FactorElement, y: &FactorElement) -> FactorElement {
        debug_assert_eq!(x.factor, y.factor);
        let (moved, z) = match x.factor {
            Factor::H if x.flip => (self.witness.r.mul_vec(&y.v), &self.z),
            Factor::HPrime if x.flip => (
                self.r_prime_scaled.apply(&y.v).expect("R' preserves L'"),
                &self.z_prime,
            ),
            _ => (y.v.clone(), &self.z),
        };
        let mut v = add_vectors(&x.v, &moved);
        if x.flip && y.flip {
            v = add_vectors(&v, z);
        }
        FactorElement {
            factor: x.factor,
            v,
            flip: x.flip ^ y.flip,
        }
    }

    /// `x^e` with `x² = z`: `x^{2q+ρ} = z^q·x^ρ`.
    fn power(&self, factor: Factor, e: i64) -> FactorElement {
        let z = match factor {
            Factor::H => &self.z,
            Factor::HPrime => &self.z_prime,
        };
        let (q, rho) = e.div_mod_floor(&2);
        FactorElement {
            factor,
            v: scale_vector(&BigInt::from(q), z),
            flip: rho == 1,
        }
    }

    fn letter_element(&self, letter: &KLetter) -> FactorElement {
        let n = self.base.dim();
        match letter {
            KLetter::L { index, exp } => {
                let mut v = alloc::vec![BigInt::zero(); n];
                v[*index] = exp.clone();
                FactorElement {
                    factor: Factor::H,
                    v,
                    flip: false,
                }
            }
            KLetter::LPrime { index, exp } => FactorElement {
                factor: Factor::HPrime,
                v: scale_vector(exp, &self.base.lprime().basis().column(*index)),
                flip: false,
            },
            KLetter::R(e) => self.power(Factor::H, *e),
            KLetter::S(e) => self.power(Factor::HPrime, *e),
        }
    }

    fn syllable_element(&self, s: &Syllable) -> FactorElement {
        match s {
            Syllable::H { v, flip } => FactorElement {
                factor: Factor::H,
                v: v.clone(),
                flip: *flip,
            },
            Syllable::HPrime => FactorElement {
                factor: Factor::HPrime,
                v: self.base.zero_vector(),
                flip: true,
            },
        }
    }

    /// Splits `y = ℓ·g` with `ℓ ∈ L'` and `g` a coset representative.
    fn split(&self, y: FactorElement) -> (IntVector, Option<Syllable>) {
        match y.factor {
            Factor::H => {
                let rep = self.base.lprime().coset_canonical(&y.v);
                let lead = sub_vectors(&y.v, &rep);
                let syl = (y.flip || !is_zero_vector(&rep)).then_some(Syllable::H { v: rep, flip: y.flip });
                (lead, syl)
            }
            Factor::HPrime => (y.v, y.flip.then_some(Syllable::HPrime)),
        }
    }

    fn prepend(&self, x: FactorElement, form: &mut AmalgamNormalForm) {
        let lead = FactorElement {
            factor: x.factor,
            v: core::mem::take(&mut form.lead),
            flip: false,
        };
        let mut y = self.mul(&x, &lead);
        let same_factor = match form.syllables.first() {
            Some(Syllable::H { .. }) => x.factor == Factor::H,
            Some(Syllable::HPrime) => x.factor == Factor::HPrime,
            None => false,
        };
        if same_factor {
            let first = form.syllables.remove(0);
            y = self.mul(&y, &self.syllable_element(&first));
        }
        let (lead, syl) = self.split(y);
        form.lead = lead;
        if let Some(s) = syl {
            form.syllables.insert(0, s);
        }
    }

    pub fn normalize(&self, w: &KWord) -> AmalgamNormalForm {
        let mut form = AmalgamNormalForm {
            lead: self.base.zero_vector(),
            syllables: Vec::new(),
        };
        for letter in w.letters().iter().rev() {
            self.prepend(self.letter_element(letter), &mut form);
        }
        form
    }

    pub fn is_identity(&self, w: &KWord) -> bool {
        self.normalize(w).is_identity()
    }

    pub fn format_word(&self, w: &KWord) -> String {
        let mut s = String::new();
        for l in w.letters() {
            if !s.is_empty() {
                s.push(' ');
            }
            let (name, exp) = match l {
                KLetter::L { index, exp } => (&self.names_l[*index], exp.clone()),
                KLetter::LPrime { index, exp } => (&self.names_lprime[*index], exp.clone()),
                KLetter::R(e) => (&self.name_r, BigInt::from(*e)),
                KLetter::S(e) => (&self.name_s, BigInt::from(*e)),
            };
            s.push_str(name);
            if !exp.is_one() {
                s.push_str(&format!("^{exp}"));
            }
        }
        s
    }

    pub fn parse_word(&self, text: &str) -> Result<KWord, AmalgamError> {
        let mut w = KWord::identity();
        for token in text.split_whitespace() {
            let (name, exp) = match token.split_once('^') {
                None => (token, BigInt::one()),
                Some((name, e)) => (
                    name,
                    e.parse::<BigInt>().map_err(|_| AmalgamError::Parse {
                        token: token.to_string(),
                        reason: "exponent is not an integer",
                    })?,
                ),
            };
            let small = || {
                exp.to_i64().ok_or(AmalgamError::Parse {
                    token: token.to_string(),
                    reason: "exponent out of range",
                })
            };
            let letter = if name == self.name_r {
                KLetter::R(small()?)
            } else if name == self.name_s {
                KLetter::S(small()?)
            } else if let Some(index) = self.names_l.iter().position(|x| x == name) {
                KLetter::L {
                    index,
                    exp: exp.clone(),
                }
            } else if let Some(index) = self.names_lprime.iter().position(|x| x == name) {
                KLetter::LPrime {
                    index,
                    exp: exp.clone(),
                }
            } else {
                return Err(AmalgamError::Parse {
                    token: token.to_string(),
                    reason: "unknown generator",
                });
            };
            w.push(letter);
        }
        Ok(w)
    }

    /// Presentation as text: a generator line and one relator per line.
    pub fn presentation_text(&self) -> String {
        let mut s = format!("generators: {}\n", self.generator_names().join(", "));
        for r in self.relators() {
            s.push_str(&format!("  {}\n", self.format_word(&r)));
        }
        s
    }
}

/// Checks that `ι` maps every relator of `G(A, L')` to the identity, that
/// `η` is well defined, kills `ι(G)` and is onto.
pub fn verify_embedding(aspec: &AmalgamSpec) -> Result<Vec<(String, bool)>, AmalgamError> {
    let mut transcript = Vec::new();
    for r in aspec.relators() {
        transcript.push((
            format!("relator {} is trivial in K", aspec.format_word(&r)),
            aspec.is_identity(&r),
        ));
        transcript.push((
            format!("eta({}) = 0", aspec.format_word(&r)),
            !aspec.eta(&r),
        ));
    }
    for r in aspec.base.relators() {
        let image = aspec.iota(&r);
        transcript.push((
            format!(
                "iota({}) = {} is trivial in K",
                aspec.base.format_word(&r),
                aspec.format_word(&image)
            ),
            aspec.is_identity(&image),
        ));
    }
    let n = aspec.base.dim();
    for i in 0..n {
        let gen = aspec.iota(&Word::generator(i, 1));
        transcript.push((format!("eta({}) = 0", aspec.format_word(&gen)), !aspec.eta(&gen)));
    }
    let t = aspec.iota(&Word::stable(1));
    transcript.push((format!("eta({}) = 0", aspec.format_word(&t)), !aspec.eta(&t)));
    let r = KWord::new([KLetter::R(1)]);
    transcript.push((
        format!("eta({}) = 1, so eta is onto Z/2", aspec.format_word(&r)),
        aspec.eta(&r),
    ));
    if let Some((claim, _)) = transcript.iter().find(|(_, ok)| !ok) {
        return Err(AmalgamError::VerificationFailed(claim.clone()));
    }
    Ok(transcript)
}
