use alloc::vec::Vec;

use num_bigint::BigInt;

use super::{GroupSpec, Letter, Word};
use crate::exactlin::{
    add_vectors, is_zero_vector, lattice_from_generators, sub_vectors, to_integer_vector,
    to_rational_vector, IntVector, RatMatrix, Span,
};

/// `c₀ t^{ε₁} c₁ ⋯ t^{ε_k} c_k`, Britton-reduced, with every `c_i` (`i < k`)
/// the canonical coset representative modulo `L''` (before `t`) or `L'`
/// (before `t⁻¹`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NormalForm {
    pieces: Vec<IntVector>,
    signs: Vec<i8>,
}

impl NormalForm {
    pub fn pieces(&self) -> &[IntVector] {
        &self.pieces
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn t_count(&self) -> usize {
        self.signs.len()
    }

    pub fn is_identity(&self) -> bool {
        self.signs.is_empty() && is_zero_vector(&self.pieces[0])
    }

    /// The element of `ℤⁿ` represented by a form without stable letters.
    pub fn as_lattice_element(&self) -> Option<&IntVector> {
        self.signs.is_empty().then(|| &self.pieces[0])
    }

    pub fn to_word(&self) -> Word {
        let mut w = Word::from_vector(&self.pieces[0]);
        for (s, c) in self.signs.iter().zip(&self.pieces[1..]) {
            w.push(Letter::Stable(i64::from(*s)));
            w = w.concat(&Word::from_vector(c));
        }
        w
    }
}

/// Whether `t^{s}·c·t^{-s}` collapses into `ℤⁿ`, and to what.
fn pinch(spec: &GroupSpec, s: i8, c: &[BigInt]) -> Option<IntVector> {
    if s > 0 {
        spec.lprime().contains(c).then(|| spec.forward(c).expect("c ∈ L'"))
    } else {
        spec.lsecond().contains(c).then(|| spec.backward(c).expect("c ∈ L''"))
    }
}

/// Stack-based Britton reduction without choosing coset representatives.
pub fn britton_reduce(spec: &GroupSpec, w: &Word) -> (Vec<IntVector>, Vec<i8>) {
    let mut pieces = alloc::vec![spec.zero_vector()];
    let mut signs: Vec<i8> = Vec::new();
    for letter in w.letters() {
        match letter {
            Letter::Gen { index, exp } => {
                let last = pieces.last_mut().expect("nonempty");
                last[*index] += exp;
            }
            Letter::Stable(e) => {
                let s: i8 = if *e > 0 { 1 } else { -1 };
                for _ in 0..e.unsigned_abs() {
                    let top = signs.last().copied();
                    let collapsed = match top {
                        Some(prev) if prev == -s => pinch(spec, prev, pieces.last().expect("nonempty")),
                        _ => None,
                    };
                    match collapsed {
                        Some(image) => {
                            pieces.pop();
                            signs.pop();
                            let last = pieces.last_mut().expect("nonempty");
                            *last = add_vectors(last, &image);
                        }
                        None => {
                            signs.push(s);
                            pieces.push(spec.zero_vector());
                        }
                    }
                }
            }
        }
    }
    (pieces, signs)
}

/// Pushes lattice remainders to the right so each `c_i` before a stable
/// letter is a canonical coset representative. Membership of every `c_i` in
/// `L'`/`L''` is unchanged, so one pass suffices.
fn canonicalize(spec: &GroupSpec, mut pieces: Vec<IntVector>, signs: Vec<i8>) -> NormalForm {
    for (i, &s) in signs.iter().enumerate() {
        let c = &pieces[i];
        let (rep, carry) = if s > 0 {
            let rep = spec.lsecond().coset_canonical(c);
            let carry = spec.backward(&sub_vectors(c, &rep)).expect("c - rep ∈ L''");
            (rep, carry)
        } else {
            let rep = spec.lprime().coset_canonical(c);
            let carry = spec.forward(&sub_vectors(c, &rep)).expect("c - rep ∈ L'");
            (rep, carry)
        };
        pieces[i] = rep;
        pieces[i + 1] = add_vectors(&pieces[i + 1], &carry);
    }
    NormalForm { pieces, signs }
}

pub fn normalize(spec: &GroupSpec, w: &Word) -> NormalForm {
    let (pieces, signs) = britton_reduce(spec, w);
    canonicalize(spec, pieces, signs)
}

pub fn is_identity(spec: &GroupSpec, w: &Word) -> bool {
    normalize(spec, w).is_identity()
}

/// A conjugate of `nf` with no pinch across the wrap-around junction.
pub fn cyclic_reduce(spec: &GroupSpec, nf: &NormalForm) -> NormalForm {
    if nf.signs.is_empty() {
        return nf.clone();
    }
    // Cyclic word t^{s₁} v₁ ⋯ t^{s_k} v_k, obtained by conjugating by c₀.
    let mut signs = nf.signs.clone();
    let mut vs: Vec<IntVector> = nf.pieces[1..].to_vec();
    let last = vs.len() - 1;
    vs[last] = add_vectors(&vs[last], &nf.pieces[0]);
    let mut head = spec.zero_vector();
    loop {
        let k = signs.len();
        if k < 2 || signs[k - 1] != -signs[0] {
            break;
        }
        let Some(image) = pinch(spec, signs[k - 1], &vs[k - 1]) else {
            break;
        };
        // t^{s_k} v_k t^{s₁} v₁ ⋯ collapses to (image + v₁) t^{s₂} ⋯ t^{s_{k-1}} v_{k-1}.
        let lead = add_vectors(&image, &vs[0]);
        signs = signs[1..k - 1].to_vec();
        vs = vs[1..k - 1].to_vec();
        match vs.last_mut() {
            Some(v) => *v = add_vectors(v, &lead),
            None => head = lead,
        }
    }
    if let [s] = signs[..] {
        vs[0] = reduce_single_syllable(spec, s, &vs[0]);
    }
    let mut pieces = Vec::with_capacity(vs.len() + 1);
    pieces.push(head);
    pieces.extend(vs);
    canonicalize(spec, pieces, signs)
}

/// Conjugating `t^s x` by `y ∈ ℤⁿ` gives `t^s (x + (A^{-s} − I) y)` for `y` in
/// `L''` (`s = 1`) or `L'` (`s = -1`). When that lattice of shifts has full
/// rank, `x` is replaced by its canonical representative.
fn reduce_single_syllable(spec: &GroupSpec, s: i8, x: &[BigInt]) -> IntVector {
    let (domain, shift) = if s > 0 {
        (spec.lsecond(), spec.inverse_matrix())
    } else {
        (spec.lprime(), spec.matrix())
    };
    let shift = shift - &RatMatrix::identity(spec.dim());
    let generators: Option<Vec<IntVector>> = domain
        .basis_vectors()
        .iter()
        .map(|y| to_integer_vector(&shift.mul_vec(&to_rational_vector(y))))
        .collect();
    let generators = generators.expect("shifts of lattice vectors are integral");
    match lattice_from_generators(&generators, spec.dim()) {
        Ok(Span::Full(m)) => m.coset_canonical(x),
        _ => x.to_vec(),
    }
}

/// Translation length of `w` on the Bass–Serre tree.
pub fn tree_translation_length(spec: &GroupSpec, w: &Word) -> usize {
    cyclic_reduce(spec, &normalize(spec, w)).t_count()
}
