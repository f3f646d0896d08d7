use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec::Vec;

use super::fsa::LabeledFsa;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FellowPair {
    pub p: Vec<usize>,
    pub q: Vec<usize>,
    /// Letter `a` such that `q` is read starting from `μ(a)`.
    pub offset: Option<usize>,
    pub distance: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FellowReport {
    /// The least `ζ` such that every checked pair `ζ`-fellow travels.
    pub zeta: u32,
    pub worst: Option<FellowPair>,
    pub pairs: usize,
}

/// Word-metric distances from the origin over the alphabet vectors, up to
/// `radius` steps.
struct Ball {
    dist: BTreeMap<Vec<i64>, u32>,
}

impl Ball {
    fn new(fsa: &LabeledFsa, radius: u32) -> Self {
        let origin = alloc::vec![0i64; fsa.rank()];
        let mut dist = BTreeMap::new();
        dist.insert(origin.clone(), 0);
        let mut queue = VecDeque::from([origin]);
        while let Some(v) = queue.pop_front() {
            let d = dist[&v];
            if d == radius {
                continue;
            }
            for l in fsa.alphabet() {
                let w: Vec<i64> = v.iter().zip(&l.vec).map(|(a, b)| a + b).collect();
                if !dist.contains_key(&w) {
                    dist.insert(w.clone(), d + 1);
                    queue.push_back(w);
                }
            }
        }
        Self { dist }
    }

    fn between(&self, u: &[i64], v: &[i64]) -> u32 {
        let diff: Vec<i64> = u.iter().zip(v).map(|(a, b)| b - a).collect();
        self.dist.get(&diff).copied().unwrap_or(u32::MAX)
    }
}

fn accepted_words(fsa: &LabeledFsa, maxlen: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut stack = alloc::vec![(fsa.initial(), Vec::new())];
    while let Some((s, w)) = stack.pop() {
        if fsa.is_accepting(s) {
            out.push(w.clone());
        }
        if w.len() < maxlen {
            for (l, t) in fsa.edges(s) {
                let mut v = w.clone();
                v.push(l);
                stack.push((t, v));
            }
        }
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

fn path_points(fsa: &LabeledFsa, word: &[usize], start: &[i64]) -> Vec<Vec<i64>> {
    let mut v = start.to_vec();
    let mut out = alloc::vec![v.clone()];
    for &l in word {
        for (x, d) in v.iter_mut().zip(&fsa.alphabet()[l].vec) {
            *x += d;
        }
        out.push(v.clone());
    }
    out
}

/// Checks all pairs of accepted words of length at most `maxlen` whose
/// endpoints are at distance at most one (and, when `two_sided`, whose start
/// points differ by at most one letter). Paths are compared under the ray
/// parametrization. Only a bounded check.
pub fn check_fellow_traveller(fsa: &LabeledFsa, maxlen: usize, two_sided: bool) -> FellowReport {
    let words = accepted_words(fsa, maxlen);
    let ball = Ball::new(fsa, 2 * maxlen as u32 + 2);
    let origin = alloc::vec![0i64; fsa.rank()];
    let paths: Vec<Vec<Vec<i64>>> = words.iter().map(|w| path_points(fsa, w, &origin)).collect();
    let mut by_end: BTreeMap<&[i64], Vec<usize>> = BTreeMap::new();
    for (i, p) in paths.iter().enumerate() {
        by_end.entry(p.last().expect("nonempty").as_slice()).or_default().push(i);
    }

    let mut offsets: Vec<Option<usize>> = alloc::vec![None];
    if two_sided {
        offsets.extend((0..fsa.alphabet().len()).map(Some));
    }
    let mut steps: Vec<Vec<i64>> = alloc::vec![origin.clone()];
    steps.extend(fsa.alphabet().iter().map(|l| l.vec.clone()));

    let mut report = FellowReport {
        zeta: 0,
        worst: None,
        pairs: 0,
    };
    for (i, p) in paths.iter().enumerate() {
        let end = p.last().expect("nonempty");
        for &offset in &offsets {
            let shift = offset.map_or(origin.clone(), |l| fsa.alphabet()[l].vec.clone());
            let mut partners: Vec<usize> = Vec::new();
            for step in &steps {
                let target: Vec<i64> = end
                    .iter()
                    .zip(step)
                    .zip(&shift)
                    .map(|((e, s), o)| e + s - o)
                    .collect();
                if let Some(js) = by_end.get(target.as_slice()) {
                    partners.extend(js);
                }
            }
            partners.sort_unstable();
            partners.dedup();
            for j in partners {
                let q = &paths[j];
                let len = p.len().max(q.len());
                let d = (0..len)
                    .map(|t| {
                        let a = &p[t.min(p.len() - 1)];
                        let b: Vec<i64> = q[t.min(q.len() - 1)].iter().zip(&shift).map(|(x, o)| x + o).collect();
                        ball.between(a, &b)
                    })
                    .max()
                    .unwrap_or(0);
                report.pairs += 1;
                if report.worst.is_none() || d > report.zeta {
                    report.zeta = report.zeta.max(d);
                    report.worst = Some(FellowPair {
                        p: words[i].clone(),
                        q: words[j].clone(),
                        offset,
                        distance: d,
                    });
                }
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::super::fsa::shortlex_structure;
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn shortlex_zeta() {
        let two = shortlex_structure(2);
        let r = check_fellow_traveller(&two, 8, false);
        assert_eq!(r.zeta, 2);
        let w = r.worst.unwrap();
        assert_eq!(w.distance, 2);
        let one = shortlex_structure(1);
        assert_eq!(check_fellow_traveller(&one, 8, false).zeta, 1);
        assert_eq!(check_fellow_traveller(&one, 8, true).zeta, 1);
        // y against Y x y y: (0,1) and (1,-1) after one letter
        let r = check_fellow_traveller(&two, 6, true);
        assert_eq!(r.zeta, 3);
    }

    #[test]
    fn empty_word_only() {
        let letters = [("a", 1i64, "A"), ("A", -1, "a")]
            .iter()
            .map(|(a, v, b)| (a.to_string(), alloc::vec![*v], b.to_string()))
            .collect::<Vec<_>>();
        let fsa = LabeledFsa::new(1, &letters, 1, 0, &[0], &[]).unwrap();
        let r = check_fellow_traveller(&fsa, 8, false);
        assert_eq!((r.zeta, r.pairs), (0, 1));
    }

    #[test]
    fn monotone_in_length() {
        let two = shortlex_structure(2);
        let z: Vec<u32> = (0..=6).map(|l| check_fellow_traveller(&two, l, false).zeta).collect();
        assert!(z.windows(2).all(|w| w[0] <= w[1]));
        assert_eq!(z[0], 0);
    }
}
