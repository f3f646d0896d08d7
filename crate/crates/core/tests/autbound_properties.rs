use std::collections::BTreeSet;

use proptest::prelude::*;

use comhnn::autbound::{
    boundary_points, check_fellow_traveller, has_zero_cycle, hausdorff_profile, shortlex_structure,
    simple_boundary_sequences, simple_cycles, LabeledFsa,
};

const LETTERS: [&str; 4] = ["x", "X", "y", "Y"];

fn alphabet() -> Vec<(String, Vec<i64>, String)> {
    vec![
        ("x".into(), vec![1, 0], "X".into()),
        ("X".into(), vec![-1, 0], "x".into()),
        ("y".into(), vec![0, 1], "Y".into()),
        ("Y".into(), vec![0, -1], "y".into()),
    ]
}

/// Random deterministic automata over `x, X, y, Y`, trimmed.
fn automaton() -> impl Strategy<Value = LabeledFsa> {
    (1usize..=4).prop_flat_map(|states| {
        (
            prop::collection::vec(prop::option::weighted(0.45, 0..states), states * 4),
            prop::collection::vec(any::<bool>(), states),
        )
            .prop_filter_map("empty language", move |(table, accept)| {
                let transitions: Vec<(usize, String, usize)> = table
                    .iter()
                    .enumerate()
                    .filter_map(|(i, t)| t.map(|t| (i / 4, LETTERS[i % 4].to_string(), t)))
                    .collect();
                let accepting: Vec<usize> = (0..states).filter(|&s| accept[s]).collect();
                LabeledFsa::new(2, &alphabet(), states, 0, &accepting, &transitions)
                    .unwrap()
                    .trim()
                    .ok()
            })
    })
}

fn sup(v: &[i64]) -> i64 {
    v.iter().map(|x| x.abs()).max().unwrap_or(0)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 300, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn cycles_are_simple_and_distinct(fsa in automaton()) {
        let e = simple_cycles(&fsa, 10_000);
        prop_assert!(!e.overflow);
        let mut seen = BTreeSet::new();
        for c in &e.cycles {
            let distinct: BTreeSet<_> = c.states.iter().collect();
            prop_assert_eq!(distinct.len(), c.states.len());
            prop_assert_eq!(c.base(), *c.states.iter().min().unwrap());
            for (i, &l) in c.letters.iter().enumerate() {
                let next = c.states[(i + 1) % c.states.len()];
                prop_assert_eq!(fsa.step(c.states[i], l), Some(next));
            }
            prop_assert!(seen.insert((c.states.clone(), c.letters.clone())));
        }
    }

    #[test]
    fn zero_cycle_witnesses_are_cycles(fsa in automaton()) {
        if let Some(z) = has_zero_cycle(&fsa) {
            let mut s = z.base;
            for &l in &z.letters {
                s = fsa.step(s, l).unwrap();
            }
            prop_assert_eq!(s, z.base);
            prop_assert!(!z.letters.is_empty());
            prop_assert_eq!(fsa.evaluate(&z.letters), vec![0, 0]);
        }
    }

    #[test]
    fn boundary_sequences_pump(fsa in automaton()) {
        let Ok(points) = boundary_points(&fsa) else {
            prop_assert!(has_zero_cycle(&fsa).is_some());
            return Ok(());
        };
        let seqs = simple_boundary_sequences(&fsa).unwrap();
        let dirs: BTreeSet<Vec<i64>> = seqs.iter().map(|s| s.direction.clone()).collect();
        prop_assert_eq!(&dirs, &points);
        for s in &seqs {
            let g = s.direction.iter().fold(0i64, |g, &x| num_integer::gcd(g, x));
            prop_assert_eq!(g, 1);
            for i in 0..=5 {
                prop_assert!(fsa.accepts(&s.word(i)));
            }
            let offset = sup(&fsa.evaluate(&s.s)) + sup(&fsa.evaluate(&s.t));
            let start = offset as usize + 2;
            let norms: Vec<i64> = (start..start + 4).map(|i| sup(&fsa.evaluate(&s.word(i)))).collect();
            prop_assert!(norms.windows(2).all(|w| w[0] < w[1]));
        }
        for a in seqs.iter().take(4) {
            for b in seqs.iter().take(4) {
                let p = hausdorff_profile(&fsa, a, b, 30);
                if a.direction == b.direction {
                    prop_assert_eq!(&p[19], &p[29]);
                } else {
                    prop_assert!(p[19] < p[29]);
                }
            }
        }
    }

    #[test]
    fn fellow_constant_is_monotone(fsa in automaton()) {
        let z: Vec<u32> = (0..=4).map(|l| check_fellow_traveller(&fsa, l, false).zeta).collect();
        prop_assert!(z.windows(2).all(|w| w[0] <= w[1]));
        let two: Vec<u32> = (0..=3).map(|l| check_fellow_traveller(&fsa, l, true).zeta).collect();
        prop_assert!(two.windows(2).all(|w| w[0] <= w[1]));
        prop_assert!(two.iter().zip(&z).all(|(t, o)| t >= o));
    }
}

#[test]
fn shortlex_invariants() {
    for n in 1..=4 {
        let fsa = shortlex_structure(n);
        assert_eq!(boundary_points(&fsa).unwrap().len(), 2 * n);
        assert!(has_zero_cycle(&fsa).is_none());
        for s in simple_boundary_sequences(&fsa).unwrap() {
            let norms: Vec<i64> = (2..8).map(|i| sup(&fsa.evaluate(&s.word(i)))).collect();
            assert!(norms.windows(2).all(|w| w[0] < w[1]));
        }
    }
    let fsa = shortlex_structure(2);
    let z: Vec<u32> = (0..=8).map(|l| check_fellow_traveller(&fsa, l, false).zeta).collect();
    assert!(z.windows(2).all(|w| w[0] <= w[1]));
}
