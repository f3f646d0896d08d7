//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line with
//! its running time; the test fails if any criterion fails or runs over its
//! time limit.

use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

use comhnn::amalgam::{
    build_amalgam, classify_involution, find_reflections, reflection_witness, verify_embedding,
    InvolutionType,
};
use comhnn::autbound::{
    boundary_points, check_fellow_traveller, cycle_label_generators, generated_index,
    hausdorff_profile, shortlex_structure, simple_boundary_sequences, AutError, GeneratedIndex,
    LabeledFsa,
};
use comhnn::catalog::{a_frac, a_p, g_km, g_km_relators, g_p, g_p_prime, g_p_prime_relators, g_p_relators};
use comhnn::criteria::{
    analyze, invariant_form, is_biautomatic, is_cat0, is_residually_finite, NonHopfVerdict,
};
use comhnn::exactlin::{hnf, snf, IntMatrix, Lattice};
use comhnn::hnn::{euclidean_translation_length_sq, is_identity, normalize, tree_translation_length};
use comhnn::witness::{nonhopf_endomorphism_witness, phi, verify_surjectivity_identity, wise_witness};
use comhnn::{GroupSpec, RatMatrix, Word};

type Check = Result<(), String>;
type Criterion = (&'static str, u64, fn() -> Check);

fn ensure(cond: bool, what: impl Into<String>) -> Check {
    if cond {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn runner(cases: u32) -> TestRunner {
    TestRunner::new_with_rng(
        Config {
            cases,
            failure_persistence: None,
            ..Config::default()
        },
        TestRng::deterministic_rng(RngAlgorithm::ChaCha),
    )
}

/// 2x2 rational product, written out independently of the library.
fn mul2(a: &[[BigRational; 2]; 2], b: &[[BigRational; 2]; 2]) -> [[BigRational; 2]; 2] {
    let e = |i: usize, j: usize| &a[i][0] * &b[0][j] + &a[i][1] * &b[1][j];
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

fn theorem_table() -> Check {
    for k in -5i64..=5 {
        let g = g_km(k, 2);
        // A = [[0,-1],[1,k/2]]: det 1, trace k/2
        let a = [[q(0, 1), q(-1, 1)], [q(1, 1), q(k, 2)]];
        let mut p = a.clone();
        for _ in 1..12 {
            p = mul2(&p, &a);
        }
        let finite = p == [[q(1, 1), q(0, 1)], [q(0, 1), q(1, 1)]];
        // L' = <(1,0),(0,2)>, A·L' = <(0,1),(-2,k)> has index 2, so only
        // condition (ii) can hold, and conjugation preserves the trace k/2.
        let rf = k % 2 == 0;
        ensure(is_cat0(&g) == (k.abs() <= 3), format!("CAT(0) for k = {k}"))?;
        ensure(is_biautomatic(&g) == [-2, 0, 2].contains(&k), format!("biautomatic for k = {k}"))?;
        ensure(is_biautomatic(&g) == finite, format!("finite order oracle for k = {k}"))?;
        ensure(is_residually_finite(&g) == rf, format!("residually finite for k = {k}"))?;
    }
    Ok(())
}

fn gp_verdicts() -> Check {
    for (name, g) in [("G_P", g_p()), ("G'_P", g_p_prime())] {
        let r = analyze(&g).map_err(|e| e.to_string())?;
        ensure(r.cat0, format!("{name} CAT(0)"))?;
        ensure(!r.biautomatic, format!("{name} biautomatic"))?;
        ensure(!r.virtually_biautomatic, format!("{name} virtually biautomatic"))?;
        ensure(!r.residually_finite, format!("{name} residually finite"))?;
        ensure(
            r.nonhopf
                == NonHopfVerdict::Holds {
                    m: 5.into(),
                    k: 6.into(),
                },
            format!("{name} non-Hopf criterion"),
        )?;
    }
    Ok(())
}

fn random_word(max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0u8..3, prop_oneof![Just(-1i64), Just(1i64)]), 0..=max_len).prop_map(|letters| {
        letters.into_iter().fold(Word::identity(), |w, (l, e)| {
            let x = if l == 2 { Word::stable(e) } else { Word::generator(l as usize, e) };
            w.concat(&x)
        })
    })
}

fn word_problem() -> Check {
    let mut groups: Vec<(GroupSpec, Vec<Word>)> = vec![(g_p(), g_p_relators()), (g_p_prime(), g_p_prime_relators())];
    for k in -3..=3 {
        groups.push((g_km(k, 2), g_km_relators(k, 2)));
    }
    for (g, extra) in &groups {
        for r in g.relators().iter().chain(extra) {
            ensure(is_identity(g, r), format!("relator {} is not trivial", g.format_word(r)))?;
        }
    }
    let specs = [g_p(), g_p_prime(), g_km(1, 2)];
    runner(1000)
        .run(&(0..specs.len(), random_word(30)), |(i, w)| {
            let g = &specs[i];
            prop_assert!(is_identity(g, &w.concat(&w.inverse())));
            let nf = normalize(g, &w);
            prop_assert_eq!(normalize(g, &nf.to_word()), nf);
            Ok(())
        })
        .map_err(|e| e.to_string())
}

fn nonhopf_certificates() -> Check {
    for g in [g_p(), g_km(1, 2)] {
        let cert = nonhopf_endomorphism_witness(&g).map_err(|e| e.to_string())?;
        for c in 0..g.dim() {
            ensure(
                verify_surjectivity_identity(&g, c).map_err(|e| e.to_string())?,
                "surjectivity identity",
            )?;
            let (m, k, l) = (&cert.m, &cert.k, &cert.l);
            let w = Word::stable(1)
                .concat(&Word::generator_power(c, m.clone()))
                .concat(&Word::stable(-2))
                .concat(&Word::generator_power(c, m * l))
                .concat(&Word::stable(1));
            ensure(
                is_identity(&g, &w.concat(&Word::generator_power(c, -k.clone()))),
                "t c^m t^-2 c^ml t = c^k",
            )?;
        }
        ensure(!is_identity(&g, &cert.kernel_word), "kernel word is nontrivial")?;
        ensure(is_identity(&g, &phi(&cert.kernel_word, &cert.m)), "phi(kernel word) is trivial")?;
    }
    Ok(())
}

fn invariant_forms() -> Check {
    let cases = [
        (a_p(), [q(1, 1), q(0, 1), q(1, 1)]),
        (a_frac(1, 2), [q(1, 1), q(1, 4), q(1, 1)]),
        (a_frac(2, 2), [q(1, 1), q(1, 2), q(1, 1)]),
        (a_frac(3, 2), [q(1, 1), q(3, 4), q(1, 1)]),
    ];
    for (a, [g11, g12, g22]) in cases {
        let g = invariant_form(&a).map_err(|e| e.to_string())?;
        let expected = RatMatrix::from_rows(vec![vec![g11, g12.clone()], vec![g12, g22]]).unwrap();
        ensure(g == expected, format!("form {g:?}"))?;
        ensure(&(&a.transpose() * &g) * &a == g, "A^T G A = G")?;
        ensure(g.is_positive_definite(), "positive definite")?;
        // S -> A^T S A - S on (s11, s12, s22)
        let e = |i: usize, j: usize| a[(i, j)].clone();
        let coeffs = |i: usize, j: usize| {
            let mut row = vec![
                e(0, i) * e(0, j),
                e(0, i) * e(1, j) + e(1, i) * e(0, j),
                e(1, i) * e(1, j),
            ];
            let k = if i == j { 2 * i } else { 1 };
            row[k] -= BigRational::one();
            row
        };
        let system = RatMatrix::from_rows(vec![coeffs(0, 0), coeffs(0, 1), coeffs(1, 1)]).unwrap();
        ensure(3 - system.rank() == 1, "one-dimensional solution space")?;
        let ae1 = a.column(0);
        let inner = &g[(0, 0)] * &ae1[0] + &g[(0, 1)] * &ae1[1];
        ensure(inner / &g[(0, 0)] == a.trace() / q(2, 1), "<e1, A e1> / <e1, e1> = tr(A) / 2")?;
    }
    Ok(())
}

fn boundaries() -> Check {
    for n in 1..=3 {
        let fsa = shortlex_structure(n);
        let points = boundary_points(&fsa).map_err(|e| e.to_string())?;
        ensure(points.len() == 2 * n, format!("{} boundary points for n = {n}", points.len()))?;
        let d = cycle_label_generators(&fsa).map_err(|e| e.to_string())?;
        ensure(generated_index(&d, n) == GeneratedIndex::Finite(BigInt::one()), "index of D")?;
    }
    let letters = vec![
        ("a".to_string(), vec![1], "A".to_string()),
        ("A".to_string(), vec![-1], "a".to_string()),
    ];
    let pumped = LabeledFsa::new(1, &letters, 2, 0, &[1], &[(0, "a".into(), 1), (1, "A".into(), 0)]).unwrap();
    ensure(matches!(boundary_points(&pumped), Err(AutError::ZeroCycle(_))), "zero cycle rejected")?;
    let both = LabeledFsa::new(1, &letters, 1, 0, &[0], &[(0, "a".into(), 0), (0, "A".into(), 0)]).unwrap();
    ensure(matches!(boundary_points(&both), Err(AutError::ZeroCycle(_))), "opposite loops rejected")?;

    let fsa = shortlex_structure(2);
    let seqs = simple_boundary_sequences(&fsa).map_err(|e| e.to_string())?;
    for s in &seqs {
        for t in &seqs {
            let p = hausdorff_profile(&fsa, s, t, 30);
            if s.direction == t.direction {
                ensure(p[19] == p[29], "same direction plateaus")?;
            } else {
                ensure(p[19] < p[29], "distinct directions diverge")?;
            }
        }
    }
    Ok(())
}

fn fellow_traveller() -> Check {
    let r = check_fellow_traveller(&shortlex_structure(2), 8, false);
    ensure(r.zeta == 2, format!("zeta = {}", r.zeta))
}

fn amalgams() -> Check {
    let gp = g_p();
    ensure(find_reflections(&gp, 1).len() == 4, "four reflections for G_P")?;
    ensure(find_reflections(&g_p_prime(), 1).is_empty(), "none for G'_P")?;
    let z2 = Lattice::standard(2);
    let swap = IntMatrix::from_i64_rows(&[&[0, 1], &[1, 0]]);
    let diag = RatMatrix::from_i64_rows(&[&[1, 0], &[0, -1]]);
    ensure(
        classify_involution(&swap.to_rational(), &z2) == Ok(InvolutionType::Rhombic),
        "swap is rhombic",
    )?;
    ensure(classify_involution(&diag, &z2) == Ok(InvolutionType::Rectangular), "diag is rectangular")?;
    for w in find_reflections(&gp, 1) {
        let k = build_amalgam(&gp, &w, true, true).map_err(|e| e.to_string())?;
        verify_embedding(&k).map_err(|e| e.to_string())?;
    }
    let g12 = g_km(1, 2);
    let w = reflection_witness(&g12, swap).map_err(|e| e.to_string())?;
    verify_embedding(&build_amalgam(&g12, &w, true, true).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    let w = reflection_witness(&gp, IntMatrix::from_i64_rows(&[&[-1, 0], &[0, 1]])).map_err(|e| e.to_string())?;
    let k = build_amalgam(&gp, &w, false, false).map_err(|e| e.to_string())?;
    for r in k.relators() {
        ensure(k.is_identity(&r), format!("relator {}", k.format_word(&r)))?;
    }
    for text in ["r a r^-1 a", "s a^2 b^-1 s^-1 a^2 b^-1", "a^2 r^-2 b a^-2", "a r^4 s^-2"] {
        let r = k.parse_word(text).map_err(|e| e.to_string())?;
        ensure(k.is_identity(&r), text)?;
    }
    Ok(())
}

fn wise() -> Check {
    let gp = g_p();
    // A_P^n (n·5^n, 0) by repeated multiplication; index = |det[(n,0) h]| = n·|h_2|
    let a = [[q(3, 5), q(-4, 5)], [q(4, 5), q(3, 5)]];
    for (n, expected) in [(1u32, Some((3, 4, 4))), (2, Some((-14, 48, 96))), (3, None)] {
        let mut v = [BigRational::from_integer(BigInt::from(n) * BigInt::from(5).pow(n)), q(0, 1)];
        for _ in 0..n {
            v = [&a[0][0] * &v[0] + &a[0][1] * &v[1], &a[1][0] * &v[0] + &a[1][1] * &v[1]];
        }
        let index = (BigRational::from_integer(n.into()) * &v[1]).abs();
        let cert = wise_witness(&gp, n).map_err(|e| e.to_string())?;
        ensure(cert.h.iter().zip(&v).all(|(x, y)| BigRational::from_integer(x.clone()) == *y), "h")?;
        ensure(BigRational::from_integer(cert.index.clone()) == index, "index")?;
        ensure(!cert.index.is_zero(), "finite index")?;
        if let Some((h1, h2, idx)) = expected {
            ensure(cert.h == vec![BigInt::from(h1), BigInt::from(h2)], format!("h for n = {n}"))?;
            ensure(cert.index == BigInt::from(idx), format!("index for n = {n}"))?;
        }
    }
    Ok(())
}

fn int_matrix() -> impl Strategy<Value = IntMatrix> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| {
        prop::collection::vec(-20i64..=20, r * c).prop_map(move |e| {
            IntMatrix::from_fn(r, c, |i, j| BigInt::from(e[i * c + j]))
        })
    })
}

fn unimodular(u: &IntMatrix) -> bool {
    u.det().map(|d| d.abs().is_one()).unwrap_or(false)
}

fn linear_algebra() -> Check {
    let strategy = (int_matrix(), prop::collection::vec(-50i64..=50, 4));
    runner(500)
        .run(&strategy, |(m, v)| {
            let h = hnf(&m, true).unwrap();
            prop_assert_eq!(&(&m * &h.u), &h.h);
            prop_assert!(unimodular(&h.u));
            let s = snf(&m);
            prop_assert_eq!(&(&(&s.u * &m) * &s.v), &s.s);
            prop_assert!(unimodular(&s.u) && unimodular(&s.v));
            let f = s.invariant_factors();
            prop_assert!(f.windows(2).all(|w| (&w[1] % &w[0]).is_zero()));
            for i in 0..s.s.rows() {
                for j in 0..s.s.cols() {
                    prop_assert!(i == j || s.s[(i, j)].is_zero());
                }
            }
            if m.is_square() && !m.det().unwrap().is_zero() {
                let n = m.rows();
                let l = Lattice::from_columns(n, &m.columns()).unwrap();
                let det = m.det().unwrap().abs();
                prop_assert_eq!(l.index(), det.clone());
                prop_assert_eq!(f.iter().product::<BigInt>(), det);
                let v: Vec<BigInt> = v[..n].iter().map(|&x| x.into()).collect();
                let c = l.coset_canonical(&v);
                prop_assert_eq!(l.coset_canonical(&c), c.clone());
                let diff: Vec<BigInt> = v.iter().zip(&c).map(|(a, b)| a - b).collect();
                prop_assert!(l.contains(&diff));
            }
            Ok(())
        })
        .map_err(|e| e.to_string())
}

fn translation_lengths() -> Check {
    let gp = g_p();
    let w = |s: &str| gp.parse_word(s).unwrap();
    ensure(tree_translation_length(&gp, &w("t")) == 1, "l_T(t)")?;
    ensure(tree_translation_length(&gp, &w("a")) == 0, "l_T(a)")?;
    ensure(tree_translation_length(&gp, &w("t a t^-1 a t a^-1 t^-1 a^-1")) == 4, "l_T([tat^-1,a])")?;
    let id = RatMatrix::identity(2);
    let e = |s: &str| euclidean_translation_length_sq(&gp, &w(s), &id).unwrap();
    ensure(e("a") == q(1, 1), "l_E^2(a)")?;
    ensure(e("t") == q(0, 1), "l_E^2(t)")?;
    Ok(())
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 11] = [
        ("G_{k,2} classification table, k in -5..5", 1, theorem_table),
        ("G_P and G'_P verdicts", 1, gp_verdicts),
        ("word problem: relators and 1000 random words", 10, word_problem),
        ("non-Hopf certificates for G_P and G_{1,2}", 1, nonhopf_certificates),
        ("invariant forms", 1, invariant_forms),
        ("boundary finiteness and Hausdorff profiles", 10, boundaries),
        ("fellow traveller constant of shortlex on Z^2", 30, fellow_traveller),
        ("amalgams", 5, amalgams),
        ("Wise witnesses for G_P", 1, wise),
        ("HNF/SNF/lattice suite on 500 random matrices", 30, linear_algebra),
        ("translation lengths in G_P", 1, translation_lengths),
    ];
    let mut failed = Vec::new();
    for (i, (name, limit, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|()| {
            ensure(
                elapsed <= Duration::from_secs(limit),
                format!("over the {limit} s limit"),
            )
        });
        let status = if outcome.is_ok() { "PASS" } else { "FAIL" };
        let detail = outcome.as_ref().err().map(|e| format!(": {e}")).unwrap_or_default();
        // written to the handle directly so the line survives output capture
        let _ = writeln!(
            std::io::stdout().lock(),
            "criterion {:>2} {status} [{:.3} s / {limit} s] {name}{detail}",
            i + 1,
            elapsed.as_secs_f64()
        );
        if outcome.is_err() {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
