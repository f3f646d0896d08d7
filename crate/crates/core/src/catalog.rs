//! The standard example matrices and groups.

use alloc::vec::Vec;

use crate::exactlin::{int_vector, Lattice, RatMatrix};
use crate::hnn::{GroupSpec, Word};

/// The rotation `[[3/5, -4/5], [4/5, 3/5]]`.
pub fn a_p() -> RatMatrix {
    RatMatrix::from_fractions(&[&[(3, 5), (-4, 5)], &[(4, 5), (3, 5)]])
}

/// `A_{k/m} = [[0, -1], [1, k/m]]`.
pub fn a_frac(k: i64, m: i64) -> RatMatrix {
    RatMatrix::from_fractions(&[&[(0, 1), (-1, 1)], &[(1, 1), (k, m)]])
}

/// `G_P = G(A_P)`, with `L' = ⟨(2,-1), (1,2)⟩` of index five.
pub fn g_p() -> GroupSpec {
    GroupSpec::maximal(a_p()).expect("A_P is invertible")
}

/// `G'_P = G(A_P, (5ℤ)²)`.
pub fn g_p_prime() -> GroupSpec {
    GroupSpec::new(a_p(), Lattice::scaled_standard(2, 5), None, None).expect("valid spec")
}

/// `G_{k,m} = G(A_{k/m}, ⟨(1,0), (0,m)⟩)`.
pub fn g_km(k: i64, m: i64) -> GroupSpec {
    let l = Lattice::from_columns(2, &[int_vector(&[1, 0]), int_vector(&[0, m])])
        .expect("full rank");
    GroupSpec::new(a_frac(k, m), l, None, None).expect("valid spec")
}

/// The relators of the usual two-generator presentations of `G_P`, `G'_P`
/// and `G_{k,m}`, as words in `a, b, t`.
pub fn g_p_relators() -> Vec<Word> {
    let spec = g_p();
    ["a b a^-1 b^-1", "t a^2 b^-1 t^-1 b^-1 a^-2", "t a b^2 t^-1 b^-2 a"]
        .iter()
        .map(|s| spec.parse_word(s).expect("valid word"))
        .collect()
}

pub fn g_p_prime_relators() -> Vec<Word> {
    let spec = g_p_prime();
    ["a b a^-1 b^-1", "t a^5 t^-1 b^-4 a^-3", "t b^5 t^-1 b^-3 a^4"]
        .iter()
        .map(|s| spec.parse_word(s).expect("valid word"))
        .collect()
}

pub fn g_km_relators(k: i64, m: i64) -> Vec<Word> {
    let (a, b, t) = (Word::generator(0, 1), Word::generator(1, 1), Word::stable(1));
    let lhs = t.concat(&b.pow(m)).concat(&t.inverse());
    let rhs = a.pow(-m).concat(&b.pow(k));
    alloc::vec![
        Word::commutator(&a, &b),
        t.concat(&a).concat(&t.inverse()).concat(&b.inverse()),
        lhs.concat(&rhs.inverse()),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hnn::is_identity;

    #[test]
    fn presentations_hold() {
        let gp = g_p();
        assert!(g_p_relators().iter().all(|r| is_identity(&gp, r)));
        let gpp = g_p_prime();
        assert!(g_p_prime_relators().iter().all(|r| is_identity(&gpp, r)));
        for k in -3..=3 {
            for m in 1..=4 {
                let g = g_km(k, m);
                assert!(g_km_relators(k, m).iter().all(|r| is_identity(&g, r)), "k={k} m={m}");
            }
        }
    }

    #[test]
    fn gp_lattices() {
        let gp = g_p();
        let lp = Lattice::from_columns(2, &[int_vector(&[2, -1]), int_vector(&[1, 2])]).unwrap();
        let ls = Lattice::from_columns(2, &[int_vector(&[2, 1]), int_vector(&[-1, 2])]).unwrap();
        assert_eq!(gp.lprime(), &lp);
        assert_eq!(gp.lsecond(), &ls);
    }
}
