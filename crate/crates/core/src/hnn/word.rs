use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::HnnError;

/// One run of a word: a generator of `ℤⁿ` or the stable letter, raised to a
/// nonzero power.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Letter {
    Gen { index: usize, exp: BigInt },
    Stable(i64),
}

/// A run-length encoded word over the generators and the stable letter.
///
/// Adjacent runs of the same letter are merged and zero exponents dropped,
/// so `a^1000000 a^-1000000` is the empty word.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn new(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut w = Self::identity();
        for l in letters {
            w.push(l);
        }
        w
    }

    pub fn generator(index: usize, exp: i64) -> Self {
        Self::new([Letter::Gen {
            index,
            exp: BigInt::from(exp),
        }])
    }

    pub fn generator_power(index: usize, exp: BigInt) -> Self {
        Self::new([Letter::Gen { index, exp }])
    }

    pub fn stable(exp: i64) -> Self {
        Self::new([Letter::Stable(exp)])
    }

    /// `a₁^{v₁} a₂^{v₂} ⋯` for an integer vector `v`.
    pub fn from_vector(v: &[BigInt]) -> Self {
        Self::new(v.iter().enumerate().map(|(index, exp)| Letter::Gen {
            index,
            exp: exp.clone(),
        }))
    }

    /// `[x, y] = x y x⁻¹ y⁻¹`.
    pub fn commutator(x: &Word, y: &Word) -> Self {
        x.concat(y).concat(&x.inverse()).concat(&y.inverse())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn push(&mut self, letter: Letter) {
        match (self.letters.last_mut(), letter) {
            (_, Letter::Gen { exp, .. }) if exp.is_zero() => {}
            (_, Letter::Stable(0)) => {}
            (Some(Letter::Gen { index: i, exp: e }), Letter::Gen { index, exp }) if *i == index => {
                *e += exp;
                if e.is_zero() {
                    self.letters.pop();
                }
            }
            (Some(Letter::Stable(e)), Letter::Stable(f)) => {
                *e += f;
                if *e == 0 {
                    self.letters.pop();
                }
            }
            (_, l) => self.letters.push(l),
        }
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut w = self.clone();
        for l in &other.letters {
            w.push(l.clone());
        }
        w
    }

    pub fn inverse(&self) -> Word {
        Word::new(self.letters.iter().rev().map(|l| match l {
            Letter::Gen { index, exp } => Letter::Gen {
                index: *index,
                exp: -exp,
            },
            Letter::Stable(e) => Letter::Stable(-e),
        }))
    }

    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut w = Word::identity();
        for _ in 0..k.unsigned_abs() {
            w = w.concat(&base);
        }
        w
    }

    /// Number of stable letters counted with multiplicity.
    pub fn stable_count(&self) -> u64 {
        self.letters
            .iter()
            .map(|l| match l {
                Letter::Stable(e) => e.unsigned_abs(),
                Letter::Gen { .. } => 0,
            })
            .sum()
    }

    pub fn stable_exponent_sum(&self) -> i64 {
        self.letters
            .iter()
            .map(|l| match l {
                Letter::Stable(e) => *e,
                Letter::Gen { .. } => 0,
            })
            .sum()
    }

    /// Letter count with multiplicity.
    pub fn length(&self) -> BigInt {
        self.letters
            .iter()
            .map(|l| match l {
                Letter::Gen { exp, .. } => exp.abs(),
                Letter::Stable(e) => BigInt::from(e.unsigned_abs()),
            })
            .sum()
    }

    /// Applies `f` to every generator exponent, leaving stable letters alone.
    pub fn map_generators(&self, mut f: impl FnMut(usize, &BigInt) -> Word) -> Word {
        let mut out = Word::identity();
        for l in &self.letters {
            match l {
                Letter::Gen { index, exp } => out = out.concat(&f(*index, exp)),
                Letter::Stable(e) => out.push(Letter::Stable(*e)),
            }
        }
        out
    }

    /// Parses whitespace-separated tokens `name` or `name^k`.
    pub fn parse(text: &str, names: &[String], stable: &str) -> Result<Word, HnnError> {
        let mut w = Word::identity();
        for token in text.split_whitespace() {
            let (name, exp) = match token.split_once('^') {
                None => (token, BigInt::one()),
                Some((name, e)) => {
                    let exp = e.parse::<BigInt>().map_err(|_| HnnError::Parse {
                        token: token.to_string(),
                        reason: "exponent is not an integer",
                    })?;
                    (name, exp)
                }
            };
            if name == stable {
                let e = exp.to_i64().ok_or(HnnError::Parse {
                    token: token.to_string(),
                    reason: "stable letter exponent out of range",
                })?;
                w.push(Letter::Stable(e));
            } else if let Some(index) = names.iter().position(|n| n == name) {
                w.push(Letter::Gen { index, exp });
            } else {
                return Err(HnnError::Parse {
                    token: token.to_string(),
                    reason: "unknown generator",
                });
            }
        }
        Ok(w)
    }

    pub fn to_text(&self, names: &[String], stable: &str) -> String {
        let mut s = String::new();
        for l in &self.letters {
            if !s.is_empty() {
                s.push(' ');
            }
            let (name, exp) = match l {
                Letter::Gen { index, exp } => (names[*index].as_str(), exp.clone()),
                Letter::Stable(e) => (stable, BigInt::from(*e)),
            };
            s.push_str(name);
            if !exp.is_one() {
                let _ = write!(s, "^{exp}");
            }
        }
        s
    }
}
