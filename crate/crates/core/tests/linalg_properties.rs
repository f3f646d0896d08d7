use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use comhnn::exactlin::{
    char_poly, hnf, lattice_from_generators, min_poly, rational_preimage_lattice, snf, sturm_count,
    IntMatrix, Lattice, Polynomial, RatMatrix, Span,
};

fn int_matrix(max_dim: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(move |(r, c)| {
        prop::collection::vec(-bound..=bound, r * c)
            .prop_map(move |e| IntMatrix::from_fn(r, c, |i, j| BigInt::from(e[i * c + j])))
    })
}

fn square_nonsingular(max_dim: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max_dim)
        .prop_flat_map(move |n| {
            prop::collection::vec(-bound..=bound, n * n)
                .prop_map(move |e| IntMatrix::from_fn(n, n, |i, j| BigInt::from(e[i * n + j])))
        })
        .prop_filter("nonsingular", |m| !m.det().unwrap().is_zero())
}

fn unimodular(u: &IntMatrix) -> bool {
    u.det().map(|d| d.abs().is_one()).unwrap_or(false)
}

fn vector(n: usize) -> impl Strategy<Value = Vec<BigInt>> {
    prop::collection::vec((-60i64..=60).prop_map(BigInt::from), n)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 500, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn hnf_factorization(m in int_matrix(4, 20)) {
        let h = hnf(&m, true).unwrap();
        prop_assert_eq!(&(&m * &h.u), &h.h);
        prop_assert!(unimodular(&h.u));
        for (j, &row) in h.pivot_rows.iter().enumerate() {
            prop_assert!(h.h[(row, j)] > BigInt::zero());
            for i in 0..row {
                prop_assert!(h.h[(i, j)].is_zero());
            }
            for k in 0..j {
                prop_assert!(h.h[(row, k)] >= BigInt::zero() && h.h[(row, k)] < h.h[(row, j)]);
            }
        }
        for j in h.rank..h.h.cols() {
            prop_assert!(h.h.column(j).iter().all(Zero::is_zero));
        }
        prop_assert_eq!(h.rank, m.to_rational().rank());
    }

    #[test]
    fn snf_factorization(m in int_matrix(4, 20)) {
        let s = snf(&m);
        prop_assert_eq!(&(&(&s.u * &m) * &s.v), &s.s);
        prop_assert!(unimodular(&s.u) && unimodular(&s.v));
        let f = s.invariant_factors();
        prop_assert!(f.iter().all(|d| d.is_positive()));
        prop_assert!(f.windows(2).all(|w| (&w[1] % &w[0]).is_zero()));
        prop_assert_eq!(f.len(), m.to_rational().rank());
    }

    #[test]
    fn lattice_index_and_cosets(m in square_nonsingular(4, 20), v in vector(4), w in vector(4)) {
        let n = m.rows();
        let l = Lattice::from_columns(n, &m.columns()).unwrap();
        let det = m.det().unwrap().abs();
        prop_assert_eq!(l.index(), det.clone());
        prop_assert_eq!(snf(&m).invariant_factors().iter().product::<BigInt>(), det);
        let v = &v[..n];
        let c = l.coset_canonical(v);
        prop_assert_eq!(l.coset_canonical(&c), c.clone());
        let diff: Vec<BigInt> = v.iter().zip(&c).map(|(a, b)| a - b).collect();
        prop_assert!(l.contains(&diff));
        // translating by a lattice vector keeps the representative
        let shift: Vec<BigInt> = m.mul_vec(&w[..n]);
        let moved: Vec<BigInt> = v.iter().zip(&shift).map(|(a, b)| a + b).collect();
        prop_assert_eq!(l.coset_canonical(&moved), c);
        for col in m.columns() {
            prop_assert!(l.contains(&col));
        }
        prop_assert_eq!(lattice_from_generators(&m.columns(), n).unwrap(), Span::Full(l));
    }

    #[test]
    fn preimage_lattice(m in square_nonsingular(3, 6), num in square_nonsingular(3, 6), d in 1i64..=6, v in vector(3)) {
        let n = m.rows();
        if num.rows() != n {
            return Ok(());
        }
        let l = Lattice::from_columns(n, &m.columns()).unwrap();
        let a = num.to_rational().scale(&BigRational::new(1.into(), d.into()));
        let pre = rational_preimage_lattice(&a, &l).unwrap();
        let image = |x: &[BigInt]| -> Option<Vec<BigInt>> {
            let q: Vec<BigRational> = x.iter().map(|e| BigRational::from_integer(e.clone())).collect();
            a.mul_vec(&q).iter().map(|e| e.is_integer().then(|| e.to_integer())).collect()
        };
        let v = &v[..n];
        let inside = image(v).is_some_and(|y| l.contains(&y));
        prop_assert_eq!(pre.contains(v), inside);
        for b in pre.basis_vectors() {
            prop_assert!(image(&b).is_some_and(|y| l.contains(&y)));
        }
    }

    #[test]
    fn cayley_hamilton(m in square_nonsingular(4, 5), d in 1i64..=4) {
        let a = m.to_rational().scale(&BigRational::new(1.into(), d.into()));
        let p = char_poly(&a).unwrap();
        prop_assert!(p.eval_matrix(&a).is_zero());
        let q = min_poly(&a).unwrap();
        prop_assert!(q.eval_matrix(&a).is_zero());
        prop_assert!(q.divides(&p));
        prop_assert_eq!(p.coeff(p.degree().unwrap() - 1), -a.trace());
    }

    #[test]
    fn sturm_counts_distinct_roots(roots in prop::collection::btree_set(-12i64..=12, 1..6), den in 1i64..=4) {
        let mut p = Polynomial::constant(BigRational::one());
        for &r in &roots {
            p = p.mul(&Polynomial::linear_root(&BigRational::new(r.into(), den.into())));
        }
        let lo = BigRational::from_integer((-2).into());
        let hi = BigRational::from_integer(2.into());
        let count = sturm_count(&p, &lo, &hi).unwrap();
        let inside = roots.iter().filter(|&&r| -2 * den < r && r < 2 * den).count();
        prop_assert_eq!(count.interior, inside);
        prop_assert_eq!(count.at_lower, roots.contains(&(-2 * den)));
        prop_assert_eq!(count.at_upper, roots.contains(&(2 * den)));
    }
}

#[test]
fn rational_identity_has_trivial_preimage() {
    let l = Lattice::scaled_standard(2, 5);
    let pre = rational_preimage_lattice(&RatMatrix::identity(2), &l).unwrap();
    assert_eq!(pre, l);
}
