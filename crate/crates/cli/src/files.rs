//! JSON formats for groups and automata.

use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use comhnn::autbound::LabeledFsa;
use comhnn::exactlin::{lattice_from_generators, rational_preimage_lattice, Span};
use comhnn::{GroupSpec, Lattice, RatMatrix};

#[derive(Debug, thiserror::Error)]
pub enum FileError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{location}: {message}")]
    Entry { location: String, message: String },
    #[error("invalid group: {0}")]
    Group(#[from] comhnn::hnn::HnnError),
    #[error("invalid automaton: {0}")]
    Fsa(#[from] comhnn::autbound::FsaError),
}

fn entry_error(location: impl Into<String>, message: impl Into<String>) -> FileError {
    FileError::Entry {
        location: location.into(),
        message: message.into(),
    }
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(untagged)]
pub enum Scalar {
    Int(i64),
    Text(String),
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(untagged)]
pub enum LprimeEntry {
    Keyword(String),
    Columns(Vec<Vec<Scalar>>),
}

/// On-disk form of a group `G(A, L')`.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct GroupFile {
    pub n: usize,
    #[serde(rename = "A")]
    pub a: Vec<Vec<Scalar>>,
    #[serde(rename = "Lprime")]
    pub lprime: LprimeEntry,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stable: Option<String>,
}

fn parse_rational(s: &Scalar, location: &str) -> Result<BigRational, FileError> {
    match s {
        Scalar::Int(i) => Ok(BigRational::from_integer((*i).into())),
        Scalar::Text(t) => {
            let t = t.trim();
            let parsed = match t.split_once('/') {
                Some((p, q)) => match (p.trim().parse::<BigInt>(), q.trim().parse::<BigInt>()) {
                    (Ok(p), Ok(q)) if !q.is_zero() => Some(BigRational::new(p, q)),
                    _ => None,
                },
                None => t.parse::<BigInt>().ok().map(BigRational::from_integer),
            };
            parsed.ok_or_else(|| entry_error(location, format!("cannot read {t:?} as a rational \"p/q\"")))
        }
    }
}

fn parse_integer(s: &Scalar, location: &str) -> Result<BigInt, FileError> {
    let q = parse_rational(s, location)?;
    if q.is_integer() {
        Ok(q.to_integer())
    } else {
        Err(entry_error(location, format!("expected an integer, found {q}")))
    }
}

/// Integers that fit in an `i64` become JSON numbers, everything else a
/// `"p/q"` string.
pub fn rational_json(q: &BigRational) -> Value {
    match (q.is_integer(), q.to_integer().to_i64()) {
        (true, Some(i)) => json!(i),
        _ => json!(q.to_string()),
    }
}

pub fn integer_json(x: &BigInt) -> Value {
    x.to_i64().map_or_else(|| json!(x.to_string()), |i| json!(i))
}

fn scalar(q: &BigRational) -> Scalar {
    match (q.is_integer(), q.to_integer().to_i64()) {
        (true, Some(i)) => Scalar::Int(i),
        _ => Scalar::Text(q.to_string()),
    }
}

impl GroupFile {
    pub fn to_spec(&self) -> Result<GroupSpec, FileError> {
        let n = self.n;
        if n == 0 {
            return Err(entry_error("n", "must be positive"));
        }
        if self.a.len() != n {
            return Err(entry_error("A", format!("expected {n} rows, found {}", self.a.len())));
        }
        let mut rows = Vec::with_capacity(n);
        for (i, row) in self.a.iter().enumerate() {
            if row.len() != n {
                return Err(entry_error(format!("A[{i}]"), format!("expected {n} entries, found {}", row.len())));
            }
            let row = row
                .iter()
                .enumerate()
                .map(|(j, e)| parse_rational(e, &format!("A[{i}][{j}]")))
                .collect::<Result<Vec<_>, _>>()?;
            rows.push(row);
        }
        let a = RatMatrix::from_rows(rows).map_err(|e| entry_error("A", e.to_string()))?;
        if a.det().map_or(true, |d| d.is_zero()) {
            return Err(entry_error("A", "matrix is singular"));
        }
        let lprime = match &self.lprime {
            LprimeEntry::Keyword(k) if k == "maximal" => rational_preimage_lattice(&a, &Lattice::standard(n))
                .map_err(|e| entry_error("Lprime", e.to_string()))?,
            LprimeEntry::Keyword(k) => {
                return Err(entry_error("Lprime", format!("expected \"maximal\" or a list of columns, found {k:?}")))
            }
            LprimeEntry::Columns(cols) => {
                let mut vectors = Vec::with_capacity(cols.len());
                for (j, col) in cols.iter().enumerate() {
                    if col.len() != n {
                        return Err(entry_error(
                            format!("Lprime[{j}]"),
                            format!("expected {n} entries, found {}", col.len()),
                        ));
                    }
                    let v = col
                        .iter()
                        .enumerate()
                        .map(|(i, e)| parse_integer(e, &format!("Lprime[{j}][{i}]")))
                        .collect::<Result<Vec<_>, _>>()?;
                    vectors.push(v);
                }
                match lattice_from_generators(&vectors, n).map_err(|e| entry_error("Lprime", e.to_string()))? {
                    Span::Full(l) => l,
                    Span::Deficient { rank } => {
                        return Err(entry_error("Lprime", format!("columns span a rank {rank} subgroup, need rank {n}")))
                    }
                }
            }
        };
        Ok(GroupSpec::new(a, lprime, self.names.clone(), self.stable.clone())?)
    }

    /// `L'` is written out as its Hermite basis.
    pub fn from_spec(spec: &GroupSpec) -> Self {
        let a = spec.matrix();
        GroupFile {
            n: spec.dim(),
            a: (0..spec.dim()).map(|i| a.row(i).iter().map(scalar).collect()).collect(),
            lprime: LprimeEntry::Columns(
                spec.lprime()
                    .basis_vectors()
                    .iter()
                    .map(|v| v.iter().map(|x| scalar(&BigRational::from_integer(x.clone()))).collect())
                    .collect(),
            ),
            names: Some(spec.names().to_vec()),
            stable: Some(spec.stable_name().to_string()),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable") + "\n"
    }
}

pub fn parse_group(text: &str) -> Result<GroupSpec, FileError> {
    serde_json::from_str::<GroupFile>(text)?.to_spec()
}

fn read(path: &Path) -> Result<String, FileError> {
    std::fs::read_to_string(path).map_err(|source| FileError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn read_group(path: &Path) -> Result<GroupSpec, FileError> {
    parse_group(&read(path)?)
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct LetterEntry {
    pub name: String,
    pub vec: Vec<i64>,
    pub inverse: String,
}

/// On-disk form of a labelled automaton.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct FsaFile {
    pub n: usize,
    pub alphabet: Vec<LetterEntry>,
    pub states: usize,
    pub initial: usize,
    pub accepting: Vec<usize>,
    pub transitions: Vec<(usize, String, usize)>,
}

impl FsaFile {
    pub fn to_fsa(&self) -> Result<LabeledFsa, FileError> {
        let alphabet: Vec<(String, Vec<i64>, String)> = self
            .alphabet
            .iter()
            .map(|l| (l.name.clone(), l.vec.clone(), l.inverse.clone()))
            .collect();
        Ok(LabeledFsa::new(
            self.n,
            &alphabet,
            self.states,
            self.initial,
            &self.accepting,
            &self.transitions,
        )?)
    }

    pub fn from_fsa(fsa: &LabeledFsa) -> Self {
        let alphabet = fsa.alphabet();
        FsaFile {
            n: fsa.rank(),
            alphabet: alphabet
                .iter()
                .map(|l| LetterEntry {
                    name: l.name.clone(),
                    vec: l.vec.clone(),
                    inverse: alphabet[l.inverse].name.clone(),
                })
                .collect(),
            states: fsa.states(),
            initial: fsa.initial(),
            accepting: fsa.accepting_states(),
            transitions: fsa
                .transitions()
                .into_iter()
                .map(|(s, l, t)| (s, alphabet[l].name.clone(), t))
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable") + "\n"
    }
}

pub fn parse_fsa(text: &str) -> Result<LabeledFsa, FileError> {
    serde_json::from_str::<FsaFile>(text)?.to_fsa()
}

pub fn read_fsa(path: &Path) -> Result<LabeledFsa, FileError> {
    parse_fsa(&read(path)?)
}
