use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

/// A letter of the alphabet together with the vector of `ℤⁿ` it represents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphabetLetter {
    pub name: String,
    pub vec: Vec<i64>,
    pub inverse: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FsaError {
    #[error("alphabet letter {0:?} is declared twice")]
    DuplicateLetter(String),
    #[error("letter {letter:?} has a vector of length {found}, expected {expected}")]
    VectorLength {
        letter: String,
        expected: usize,
        found: usize,
    },
    #[error("inverse {inverse:?} of letter {letter:?} is not in the alphabet")]
    UnknownInverse { letter: String, inverse: String },
    #[error("letter {letter:?} and its inverse {inverse:?} are not mutually inverse with negated vectors")]
    InverseMismatch { letter: String, inverse: String },
    #[error("{context}: state {state} is out of range (the automaton has {states} states)")]
    StateOutOfRange {
        context: String,
        state: usize,
        states: usize,
    },
    #[error("transition {index}: unknown letter {name:?}")]
    UnknownLetter { index: usize, name: String },
    #[error("transition {index}: state {state} already has a transition on {letter:?}")]
    Nondeterministic {
        index: usize,
        state: usize,
        letter: String,
    },
    #[error("the automaton accepts no word")]
    EmptyLanguage,
    #[error("unknown letter {0:?} in word")]
    UnknownWordLetter(String),
}

/// A deterministic automaton over an inverse-closed alphabet of vectors in
/// `ℤⁿ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledFsa {
    n: usize,
    alphabet: Vec<AlphabetLetter>,
    initial: usize,
    accepting: Vec<bool>,
    delta: Vec<Vec<Option<usize>>>,
}

impl LabeledFsa {
    /// Validates and builds an automaton. Letters are `(name, vector,
    /// inverse name)`, transitions `(from, letter name, to)`.
    pub fn new(
        n: usize,
        alphabet: &[(String, Vec<i64>, String)],
        states: usize,
        initial: usize,
        accepting: &[usize],
        transitions: &[(usize, String, usize)],
    ) -> Result<Self, FsaError> {
        let mut index = BTreeMap::new();
        for (i, (name, vec, _)) in alphabet.iter().enumerate() {
            if index.insert(name.as_str(), i).is_some() {
                return Err(FsaError::DuplicateLetter(name.clone()));
            }
            if vec.len() != n {
                return Err(FsaError::VectorLength {
                    letter: name.clone(),
                    expected: n,
                    found: vec.len(),
                });
            }
        }
        let mut letters = Vec::with_capacity(alphabet.len());
        for (name, vec, inv) in alphabet {
            let inverse = *index.get(inv.as_str()).ok_or_else(|| FsaError::UnknownInverse {
                letter: name.clone(),
                inverse: inv.clone(),
            })?;
            let (other_name, other_vec, other_inv) = &alphabet[inverse];
            let negated = vec.iter().zip(other_vec).all(|(a, b)| *a == -*b);
            if other_inv != name || !negated {
                return Err(FsaError::InverseMismatch {
                    letter: name.clone(),
                    inverse: other_name.clone(),
                });
            }
            letters.push(AlphabetLetter {
                name: name.clone(),
                vec: vec.clone(),
                inverse,
            });
        }
        let check = |context: String, state: usize| {
            if state < states {
                Ok(())
            } else {
                Err(FsaError::StateOutOfRange {
                    context,
                    state,
                    states,
                })
            }
        };
        check("initial state".to_string(), initial)?;
        let mut accept = alloc::vec![false; states];
        for &s in accepting {
            check("accepting states".to_string(), s)?;
            accept[s] = true;
        }
        let mut delta = alloc::vec![alloc::vec![None; letters.len()]; states];
        for (i, (from, name, to)) in transitions.iter().enumerate() {
            check(format!("transition {i}"), *from)?;
            check(format!("transition {i}"), *to)?;
            let l = *index.get(name.as_str()).ok_or_else(|| FsaError::UnknownLetter {
                index: i,
                name: name.clone(),
            })?;
            if delta[*from][l].is_some() {
                return Err(FsaError::Nondeterministic {
                    index: i,
                    state: *from,
                    letter: name.clone(),
                });
            }
            delta[*from][l] = Some(*to);
        }
        Ok(Self {
            n,
            alphabet: letters,
            initial,
            accepting: accept,
            delta,
        })
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn alphabet(&self) -> &[AlphabetLetter] {
        &self.alphabet
    }

    pub fn states(&self) -> usize {
        self.delta.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn is_accepting(&self, state: usize) -> bool {
        self.accepting[state]
    }

    pub fn accepting_states(&self) -> Vec<usize> {
        (0..self.states()).filter(|&s| self.accepting[s]).collect()
    }

    pub fn step(&self, state: usize, letter: usize) -> Option<usize> {
        self.delta[state][letter]
    }

    /// `(letter, target)` pairs leaving `state`, in alphabet order.
    pub fn edges(&self, state: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.delta[state]
            .iter()
            .enumerate()
            .filter_map(|(l, t)| t.map(|t| (l, t)))
    }

    /// All transitions as `(from, letter, to)`.
    pub fn transitions(&self) -> Vec<(usize, usize, usize)> {
        (0..self.states())
            .flat_map(|s| self.edges(s).map(move |(l, t)| (s, l, t)))
            .collect()
    }

    pub fn run(&self, word: &[usize]) -> Option<usize> {
        word.iter().try_fold(self.initial, |s, &l| self.step(s, l))
    }

    pub fn accepts(&self, word: &[usize]) -> bool {
        self.run(word).is_some_and(|s| self.accepting[s])
    }

    /// The vector `μ(w)` of a word.
    pub fn evaluate(&self, word: &[usize]) -> Vec<i64> {
        let mut v = alloc::vec![0; self.n];
        for &l in word {
            for (x, d) in v.iter_mut().zip(&self.alphabet[l].vec) {
                *x += d;
            }
        }
        v
    }

    pub fn parse_word(&self, text: &str) -> Result<Vec<usize>, FsaError> {
        text.split_whitespace()
            .map(|t| {
                self.alphabet
                    .iter()
                    .position(|l| l.name == t)
                    .ok_or_else(|| FsaError::UnknownWordLetter(t.to_string()))
            })
            .collect()
    }

    pub fn format_word(&self, word: &[usize]) -> String {
        let names: Vec<&str> = word.iter().map(|&l| self.alphabet[l].name.as_str()).collect();
        names.join(" ")
    }

    fn closure(&self, start: &[usize], forward: bool) -> Vec<bool> {
        let mut seen = alloc::vec![false; self.states()];
        let mut stack: Vec<usize> = start.to_vec();
        for &s in start {
            seen[s] = true;
        }
        let transitions = self.transitions();
        while let Some(s) = stack.pop() {
            for &(from, _, to) in &transitions {
                let (a, b) = if forward { (from, to) } else { (to, from) };
                if a == s && !seen[b] {
                    seen[b] = true;
                    stack.push(b);
                }
            }
        }
        seen
    }

    /// Restricts to states reachable from the initial state and from which an
    /// accepting state is reachable. State order is preserved.
    pub fn trim(&self) -> Result<LabeledFsa, FsaError> {
        let reach = self.closure(&[self.initial], true);
        let coreach = self.closure(&self.accepting_states(), false);
        if !coreach[self.initial] {
            return Err(FsaError::EmptyLanguage);
        }
        let keep: Vec<usize> = (0..self.states()).filter(|&s| reach[s] && coreach[s]).collect();
        let mut renumber = alloc::vec![None; self.states()];
        for (new, &old) in keep.iter().enumerate() {
            renumber[old] = Some(new);
        }
        let delta = keep
            .iter()
            .map(|&old| {
                self.delta[old]
                    .iter()
                    .map(|t| t.and_then(|t| renumber[t]))
                    .collect()
            })
            .collect();
        Ok(LabeledFsa {
            n: self.n,
            alphabet: self.alphabet.clone(),
            initial: renumber[self.initial].expect("initial state is kept"),
            accepting: keep.iter().map(|&s| self.accepting[s]).collect(),
            delta,
        })
    }
}

fn generator_names(n: usize) -> Vec<String> {
    match n {
        1 => alloc::vec!["a".into()],
        2 => alloc::vec!["x".into(), "y".into()],
        3 => alloc::vec!["x".into(), "y".into(), "z".into()],
        _ => (1..=n).map(|i| format!("x{i}")).collect(),
    }
}

/// The shortlex automaton for `ℤⁿ` accepting `x₁^{±k₁} ⋯ xₙ^{±kₙ}`. Inverse
/// letters are upper case; the alphabet is ordered `x, X, y, Y, …`.
pub fn shortlex_structure(n: usize) -> LabeledFsa {
    assert!(n >= 1, "rank must be positive");
    let mut alphabet = Vec::new();
    for (j, name) in generator_names(n).into_iter().enumerate() {
        let upper = name.to_uppercase();
        let mut e = alloc::vec![0; n];
        e[j] = 1;
        let neg: Vec<i64> = e.iter().map(|x| -x).collect();
        alphabet.push((name.clone(), e, upper.clone()));
        alphabet.push((upper, neg, name));
    }
    let mut transitions = Vec::new();
    for (l, (name, _, _)) in alphabet.iter().enumerate() {
        transitions.push((0, name.clone(), l + 1));
    }
    for l in 0..2 * n {
        let state = l + 1;
        transitions.push((state, alphabet[l].0.clone(), state));
        for (m, (name, _, _)) in alphabet.iter().enumerate().skip(2 * (l / 2 + 1)) {
            transitions.push((state, name.clone(), m + 1));
        }
    }
    let accepting: Vec<usize> = (0..=2 * n).collect();
    LabeledFsa::new(n, &alphabet, 2 * n + 1, 0, &accepting, &transitions)
        .expect("shortlex automaton is well formed")
}
