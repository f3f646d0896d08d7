use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::cycles::{has_zero_cycle, primitive, simple_cycles};
use super::fsa::LabeledFsa;
use super::{AutError, DEFAULT_CYCLE_LIMIT};

/// `S·Wⁱ·T` for `i ≥ 0`: `S` a simple path from the initial state to `base`,
/// `W` a simple cycle at `base`, `T` a simple path from `base` to an
/// accepting state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleBoundarySequence {
    pub s: Vec<usize>,
    pub w: Vec<usize>,
    pub t: Vec<usize>,
    pub base: usize,
    pub direction: Vec<i64>,
}

impl SimpleBoundarySequence {
    /// The word `S·Wⁱ·T`.
    pub fn word(&self, i: usize) -> Vec<usize> {
        let mut out = self.s.clone();
        for _ in 0..i {
            out.extend_from_slice(&self.w);
        }
        out.extend_from_slice(&self.t);
        out
    }
}

fn cycles_checked(fsa: &LabeledFsa) -> Result<Vec<super::Cycle>, AutError> {
    if let Some(z) = has_zero_cycle(fsa) {
        return Err(AutError::ZeroCycle(z));
    }
    let e = simple_cycles(fsa, DEFAULT_CYCLE_LIMIT);
    if e.overflow {
        return Err(AutError::Overflow(DEFAULT_CYCLE_LIMIT));
    }
    Ok(e.cycles)
}

/// The primitive directions of the labels of simple cycles.
pub fn boundary_points(fsa: &LabeledFsa) -> Result<BTreeSet<Vec<i64>>, AutError> {
    Ok(cycles_checked(fsa)?
        .iter()
        .map(|c| primitive(&fsa.evaluate(&c.letters)))
        .collect())
}

/// Labels of simple paths from `from`. With `to = Some(x)` only paths ending
/// at `x`, otherwise paths ending at accepting states.
fn simple_paths(fsa: &LabeledFsa, from: usize, to: Option<usize>, out: &mut Vec<Vec<usize>>, limit: usize) -> bool {
    fn go(
        fsa: &LabeledFsa,
        v: usize,
        to: Option<usize>,
        seen: &mut Vec<bool>,
        word: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        limit: usize,
    ) -> bool {
        let done = match to {
            Some(x) => v == x,
            None => fsa.is_accepting(v),
        };
        if done {
            if out.len() == limit {
                return false;
            }
            out.push(word.clone());
            if to.is_some() {
                return true;
            }
        }
        for (l, w) in fsa.edges(v) {
            if !seen[w] {
                seen[w] = true;
                word.push(l);
                let ok = go(fsa, w, to, seen, word, out, limit);
                word.pop();
                seen[w] = false;
                if !ok {
                    return false;
                }
            }
        }
        true
    }
    let mut seen = alloc::vec![false; fsa.states()];
    seen[from] = true;
    go(fsa, from, to, &mut seen, &mut Vec::new(), out, limit)
}

/// All simple boundary sequences, ordered by direction.
pub fn simple_boundary_sequences(fsa: &LabeledFsa) -> Result<Vec<SimpleBoundarySequence>, AutError> {
    let overflow = || AutError::Overflow(DEFAULT_CYCLE_LIMIT);
    let mut out = Vec::new();
    for cycle in cycles_checked(fsa)? {
        let direction = primitive(&fsa.evaluate(&cycle.letters));
        for &x in &cycle.states {
            let w = cycle.rotated_to(x).expect("state on cycle").letters;
            let mut heads = Vec::new();
            let mut tails = Vec::new();
            if !simple_paths(fsa, fsa.initial(), Some(x), &mut heads, DEFAULT_CYCLE_LIMIT)
                || !simple_paths(fsa, x, None, &mut tails, DEFAULT_CYCLE_LIMIT)
            {
                return Err(overflow());
            }
            for s in &heads {
                for t in &tails {
                    if out.len() == DEFAULT_CYCLE_LIMIT {
                        return Err(overflow());
                    }
                    out.push(SimpleBoundarySequence {
                        s: s.clone(),
                        w: w.clone(),
                        t: t.clone(),
                        base: x,
                        direction: direction.clone(),
                    });
                }
            }
        }
    }
    out.sort_by(|a, b| a.direction.cmp(&b.direction));
    Ok(out)
}

fn add_path_vertices(fsa: &LabeledFsa, word: &[usize], set: &mut BTreeSet<Vec<i64>>) {
    let mut v = alloc::vec![0i64; fsa.rank()];
    set.insert(v.clone());
    for &l in word {
        for (x, d) in v.iter_mut().zip(&fsa.alphabet()[l].vec) {
            *x += d;
        }
        set.insert(v.clone());
    }
}

fn sup_norm(v: &[i64]) -> i64 {
    v.iter().map(|x| x.abs()).max().unwrap_or(0)
}

fn distance_to(u: &[i64], set: &BTreeSet<Vec<i64>>) -> i64 {
    set.iter()
        .map(|v| u.iter().zip(v).map(|(x, y)| (x - y).abs()).max().unwrap_or(0))
        .min()
        .unwrap_or(i64::MAX)
}

/// Vertices of `S·Wʲ·T` for `j < count`.
fn vertices(fsa: &LabeledFsa, seq: &SimpleBoundarySequence, count: usize) -> Vec<BTreeSet<Vec<i64>>> {
    (0..count)
        .map(|j| {
            let mut set = BTreeSet::new();
            add_path_vertices(fsa, &seq.word(j), &mut set);
            set
        })
        .collect()
}

/// Enough pumps of `seq` for its last vertex to pass sup norm `radius`.
fn covering_count(fsa: &LabeledFsa, seq: &SimpleBoundarySequence, radius: i64, horizon: usize) -> usize {
    let speed = sup_norm(&fsa.evaluate(&seq.w));
    if speed == 0 {
        return horizon;
    }
    let offset = sup_norm(&fsa.evaluate(&seq.s)) + sup_norm(&fsa.evaluate(&seq.t));
    let needed = usize::try_from((radius + offset) / speed + 2).unwrap_or(usize::MAX);
    needed.max(horizon)
}

/// Entry `i - 1` is the Hausdorff distance between the vertices of the paths
/// `S·Wʲ·T`, `j < i`, of one sequence and the paths of the other, in the sup
/// norm divided by the largest sup norm of a letter. The other sequence is
/// pumped until it reaches past every compared vertex, so sequences with the
/// same direction but different speeds stay at bounded distance.
pub fn hausdorff_profile(
    fsa: &LabeledFsa,
    first: &SimpleBoundarySequence,
    second: &SimpleBoundarySequence,
    horizon: usize,
) -> Vec<BigRational> {
    let scale = fsa
        .alphabet()
        .iter()
        .flat_map(|l| l.vec.iter().map(|x| x.abs()))
        .max()
        .unwrap_or(0)
        .max(1);
    let a = vertices(fsa, first, horizon);
    let b = vertices(fsa, second, horizon);
    let radius = |sets: &[BTreeSet<Vec<i64>>]| sets.iter().flatten().map(|v| sup_norm(v)).max().unwrap_or(0);
    let union = |sets: Vec<BTreeSet<Vec<i64>>>| sets.into_iter().flatten().collect::<BTreeSet<_>>();
    let a_cover = union(vertices(fsa, first, covering_count(fsa, first, radius(&b), horizon)));
    let b_cover = union(vertices(fsa, second, covering_count(fsa, second, radius(&a), horizon)));
    let mut seen_a = BTreeSet::new();
    let mut seen_b = BTreeSet::new();
    let mut d = 0;
    (0..horizon)
        .map(|j| {
            for u in &a[j] {
                if seen_a.insert(u.clone()) {
                    d = d.max(distance_to(u, &b_cover));
                }
            }
            for u in &b[j] {
                if seen_b.insert(u.clone()) {
                    d = d.max(distance_to(u, &a_cover));
                }
            }
            BigRational::new(BigInt::from(d), BigInt::from(scale))
        })
        .collect()
}
