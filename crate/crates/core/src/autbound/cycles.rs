use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;

use super::fsa::LabeledFsa;
use super::AutError;
use crate::exactlin::lattice_from_generators;

/// A simple cycle: `states[i]` is left by `letters[i]`, and the last letter
/// returns to `states[0]`, the base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cycle {
    pub states: Vec<usize>,
    pub letters: Vec<usize>,
}

impl Cycle {
    pub fn base(&self) -> usize {
        self.states[0]
    }

    /// The same cycle read from the position of `state`.
    pub fn rotated_to(&self, state: usize) -> Option<Cycle> {
        let p = self.states.iter().position(|&s| s == state)?;
        let rot = |v: &[usize]| v[p..].iter().chain(&v[..p]).copied().collect();
        Some(Cycle {
            states: rot(&self.states),
            letters: rot(&self.letters),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleEnumeration {
    pub cycles: Vec<Cycle>,
    pub overflow: bool,
}

/// Every simple cycle once, based at its smallest state. Parallel edges give
/// distinct cycles.
pub fn simple_cycles(fsa: &LabeledFsa, max_count: usize) -> CycleEnumeration {
    struct Search<'a> {
        fsa: &'a LabeledFsa,
        base: usize,
        on_path: Vec<bool>,
        states: Vec<usize>,
        letters: Vec<usize>,
        out: Vec<Cycle>,
        max: usize,
        overflow: bool,
    }

    impl Search<'_> {
        fn visit(&mut self, v: usize) {
            for (l, w) in self.fsa.edges(v) {
                if self.overflow {
                    return;
                }
                if w == self.base {
                    if self.out.len() == self.max {
                        self.overflow = true;
                        return;
                    }
                    let mut letters = self.letters.clone();
                    letters.push(l);
                    self.out.push(Cycle {
                        states: self.states.clone(),
                        letters,
                    });
                } else if w > self.base && !self.on_path[w] {
                    self.on_path[w] = true;
                    self.states.push(w);
                    self.letters.push(l);
                    self.visit(w);
                    self.letters.pop();
                    self.states.pop();
                    self.on_path[w] = false;
                }
            }
        }
    }

    let mut search = Search {
        fsa,
        base: 0,
        on_path: alloc::vec![false; fsa.states()],
        states: Vec::new(),
        letters: Vec::new(),
        out: Vec::new(),
        max: max_count,
        overflow: false,
    };
    for base in 0..fsa.states() {
        search.base = base;
        search.states = alloc::vec![base];
        search.visit(base);
        if search.overflow {
            break;
        }
    }
    CycleEnumeration {
        cycles: search.out,
        overflow: search.overflow,
    }
}

pub(crate) fn primitive(v: &[i64]) -> Vec<i64> {
    let g = v.iter().fold(0i64, |g, x| g.gcd(x));
    if g == 0 {
        v.to_vec()
    } else {
        v.iter().map(|x| x / g).collect()
    }
}

/// A cycle (not necessarily simple) at `base` whose labels sum to zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroCycle {
    pub base: usize,
    pub letters: Vec<usize>,
}

fn negatively_proportional(u: &[i64], v: &[i64]) -> Option<(i64, i64)> {
    let pu = primitive(u);
    let pv = primitive(v);
    if pu.iter().zip(&pv).any(|(a, b)| *a != -*b) {
        return None;
    }
    let i = pu.iter().position(|x| *x != 0)?;
    Some((u[i] / pu[i], v[i] / pv[i]))
}

/// Reports a zero-sum simple cycle, or two simple cycles through a common
/// state whose sums point in opposite directions. Finding nothing does not
/// prove the structure finite-to-one.
pub fn has_zero_cycle(fsa: &LabeledFsa) -> Option<ZeroCycle> {
    let cycles = simple_cycles(fsa, super::DEFAULT_CYCLE_LIMIT).cycles;
    let sums: Vec<Vec<i64>> = cycles.iter().map(|c| fsa.evaluate(&c.letters)).collect();
    for (c, s) in cycles.iter().zip(&sums) {
        if s.iter().all(|x| *x == 0) {
            return Some(ZeroCycle {
                base: c.base(),
                letters: c.letters.clone(),
            });
        }
    }
    for i in 0..cycles.len() {
        for j in i + 1..cycles.len() {
            let Some((p, q)) = negatively_proportional(&sums[i], &sums[j]) else {
                continue;
            };
            let Some(&x) = cycles[i].states.iter().find(|s| cycles[j].states.contains(s)) else {
                continue;
            };
            let a = cycles[i].rotated_to(x).expect("shared state");
            let b = cycles[j].rotated_to(x).expect("shared state");
            let mut letters = Vec::new();
            for _ in 0..q {
                letters.extend_from_slice(&a.letters);
            }
            for _ in 0..p {
                letters.extend_from_slice(&b.letters);
            }
            return Some(ZeroCycle { base: x, letters });
        }
    }
    None
}

/// The distinct labels `μ(W)` of simple cycles, in lexicographic order.
pub fn cycle_label_generators(fsa: &LabeledFsa) -> Result<Vec<Vec<i64>>, AutError> {
    let e = simple_cycles(fsa, super::DEFAULT_CYCLE_LIMIT);
    if e.overflow {
        return Err(AutError::Overflow(super::DEFAULT_CYCLE_LIMIT));
    }
    let set: BTreeSet<Vec<i64>> = e.cycles.iter().map(|c| fsa.evaluate(&c.letters)).collect();
    Ok(set.into_iter().collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeneratedIndex {
    Finite(BigInt),
    Infinite,
}

/// The index of the subgroup of `ℤⁿ` generated by `vectors`.
pub fn generated_index(vectors: &[Vec<i64>], n: usize) -> GeneratedIndex {
    let big: Vec<Vec<BigInt>> = vectors
        .iter()
        .map(|v| v.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    match lattice_from_generators(&big, n).ok().and_then(|s| s.full()) {
        Some(l) => GeneratedIndex::Finite(l.index()),
        None => GeneratedIndex::Infinite,
    }
}

#[cfg(test)]
mod tests {
    use super::super::fsa::shortlex_structure;
    use super::*;
    use alloc::string::{String, ToString};

    fn alphabet(letters: &[(&str, &[i64], &str)]) -> Vec<(String, Vec<i64>, String)> {
        letters
            .iter()
            .map(|(a, v, b)| (a.to_string(), v.to_vec(), b.to_string()))
            .collect()
    }

    fn edges(t: &[(usize, &str, usize)]) -> Vec<(usize, String, usize)> {
        t.iter().map(|(a, l, b)| (*a, l.to_string(), *b)).collect()
    }

    fn c_star_a_star() -> LabeledFsa {
        let letters = alphabet(&[
            ("c", &[1, 1], "C"),
            ("C", &[-1, -1], "c"),
            ("a", &[1, 0], "A"),
            ("A", &[-1, 0], "a"),
        ]);
        let t = edges(&[(0, "c", 0), (0, "a", 1), (1, "a", 1)]);
        LabeledFsa::new(2, &letters, 2, 0, &[0, 1], &t).unwrap()
    }

    #[test]
    fn shortlex_cycles() {
        let fsa = shortlex_structure(2);
        let e = simple_cycles(&fsa, 100);
        assert!(!e.overflow);
        assert_eq!(e.cycles.len(), 4);
        assert!(e.cycles.iter().all(|c| c.letters.len() == 1));
        assert_eq!(
            cycle_label_generators(&fsa).unwrap(),
            alloc::vec![alloc::vec![-1, 0], alloc::vec![0, -1], alloc::vec![0, 1], alloc::vec![1, 0]]
        );
        assert_eq!(has_zero_cycle(&fsa), None);
        assert!(simple_cycles(&fsa, 3).overflow);
        let one = shortlex_structure(1);
        assert_eq!(
            cycle_label_generators(&one).unwrap(),
            alloc::vec![alloc::vec![-1], alloc::vec![1]]
        );
    }

    #[test]
    fn accept_all_loops() {
        let letters = alphabet(&[("a", &[1], "A"), ("A", &[-1], "a")]);
        let fsa = LabeledFsa::new(1, &letters, 1, 0, &[0], &edges(&[(0, "a", 0), (0, "A", 0)])).unwrap();
        assert_eq!(simple_cycles(&fsa, 10).cycles.len(), 2);
        let z = has_zero_cycle(&fsa).unwrap();
        assert_eq!(fsa.evaluate(&z.letters), alloc::vec![0]);
    }

    #[test]
    fn acyclic_and_c_star_a_star() {
        let letters = alphabet(&[("a", &[1], "A"), ("A", &[-1], "a")]);
        let fsa = LabeledFsa::new(1, &letters, 2, 0, &[1], &edges(&[(0, "a", 1)])).unwrap();
        assert!(simple_cycles(&fsa, 10).cycles.is_empty());
        let ca = c_star_a_star();
        assert_eq!(
            cycle_label_generators(&ca).unwrap(),
            alloc::vec![alloc::vec![1, 0], alloc::vec![1, 1]]
        );
        assert_eq!(has_zero_cycle(&ca), None);
    }

    #[test]
    fn zero_cycles() {
        let letters = alphabet(&[("a", &[1], "A"), ("A", &[-1], "a")]);
        let fsa = LabeledFsa::new(1, &letters, 2, 0, &[1], &edges(&[(0, "a", 1), (1, "A", 0)])).unwrap();
        let z = has_zero_cycle(&fsa).unwrap();
        assert_eq!(fsa.format_word(&z.letters), "a A");

        let letters = alphabet(&[
            ("u", &[2, 0], "U"),
            ("U", &[-2, 0], "u"),
            ("v", &[-1, 0], "V"),
            ("V", &[1, 0], "v"),
        ]);
        let fsa = LabeledFsa::new(2, &letters, 1, 0, &[0], &edges(&[(0, "u", 0), (0, "v", 0)])).unwrap();
        let z = has_zero_cycle(&fsa).unwrap();
        assert_eq!(fsa.format_word(&z.letters), "u v v");
        assert_eq!(fsa.evaluate(&z.letters), alloc::vec![0, 0]);
    }

    #[test]
    fn indices() {
        let v = |rows: &[&[i64]]| rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>();
        assert_eq!(generated_index(&v(&[&[1, 0], &[0, 1]]), 2), GeneratedIndex::Finite(1.into()));
        assert_eq!(generated_index(&v(&[&[1, 2], &[0, 5]]), 2), GeneratedIndex::Finite(5.into()));
        assert_eq!(generated_index(&v(&[&[1, 0]]), 2), GeneratedIndex::Infinite);
        assert_eq!(generated_index(&[], 2), GeneratedIndex::Infinite);
    }
}
