//! Hermite and Smith normal forms over ℤ.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{ext_gcd, IntMatrix, LinAlgError};

/// Column Hermite normal form `H = M·U`.
///
/// `H` is in column echelon form: the pivot of column `j` sits in row
/// `pivot_rows[j]`, every entry above it is zero, the pivot is positive, and
/// the entries to the left of a pivot in its row lie in `[0, pivot)`. Columns
/// past `rank` are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hnf {
    pub h: IntMatrix,
    pub u: IntMatrix,
    pub rank: usize,
    pub pivot_rows: alloc::vec::Vec<usize>,
}

/// Smith normal form `S = U·M·V` with `d₁ | d₂ | …` on the diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Snf {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl Snf {
    pub fn invariant_factors(&self) -> alloc::vec::Vec<BigInt> {
        (0..self.s.rows().min(self.s.cols()))
            .map(|i| self.s[(i, i)].clone())
            .filter(|d| !d.is_zero())
            .collect()
    }
}

fn col_axpy(m: &mut IntMatrix, dst: usize, k: &BigInt, src: usize) {
    for i in 0..m.rows() {
        let v = &m[(i, dst)] + k * &m[(i, src)];
        m[(i, dst)] = v;
    }
}

fn row_axpy(m: &mut IntMatrix, dst: usize, k: &BigInt, src: usize) {
    for j in 0..m.cols() {
        let v = &m[(dst, j)] + k * &m[(src, j)];
        m[(dst, j)] = v;
    }
}

fn negate_col(m: &mut IntMatrix, j: usize) {
    for i in 0..m.rows() {
        let v = -&m[(i, j)];
        m[(i, j)] = v;
    }
}

fn negate_row(m: &mut IntMatrix, i: usize) {
    for j in 0..m.cols() {
        let v = -&m[(i, j)];
        m[(i, j)] = v;
    }
}

/// Replaces columns `(k, j)` by `(x·ck + y·cj, -(b/g)·ck + (a/g)·cj)`, a
/// determinant-one transform that zeroes row `i` of column `j`.
fn gcd_combine(m: &mut IntMatrix, k: usize, j: usize, coeffs: &[BigInt; 4]) {
    let [x, y, p, q] = coeffs;
    for i in 0..m.rows() {
        let ck = m[(i, k)].clone();
        let cj = m[(i, j)].clone();
        m[(i, k)] = x * &ck + y * &cj;
        m[(i, j)] = p * &ck + q * &cj;
    }
}

/// Column HNF of `m`. Unless `allow_rank_deficient` is set, a matrix without
/// full column rank is rejected.
pub fn hnf(m: &IntMatrix, allow_rank_deficient: bool) -> Result<Hnf, LinAlgError> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut h = m.clone();
    let mut u = IntMatrix::identity(cols);
    let mut k = 0;
    let mut pivot_rows = alloc::vec::Vec::new();
    for i in 0..rows {
        if k == cols {
            break;
        }
        for j in k + 1..cols {
            if h[(i, j)].is_zero() {
                continue;
            }
            let a = h[(i, k)].clone();
            let b = h[(i, j)].clone();
            let (g, x, y) = ext_gcd(&a, &b);
            let coeffs = [x, y, -(&b / &g), &a / &g];
            gcd_combine(&mut h, k, j, &coeffs);
            gcd_combine(&mut u, k, j, &coeffs);
        }
        if h[(i, k)].is_zero() {
            continue;
        }
        if h[(i, k)].is_negative() {
            negate_col(&mut h, k);
            negate_col(&mut u, k);
        }
        let pivot = h[(i, k)].clone();
        for j in 0..k {
            let q = h[(i, j)].div_floor(&pivot);
            if !q.is_zero() {
                let nq = -q;
                col_axpy(&mut h, j, &nq, k);
                col_axpy(&mut u, j, &nq, k);
            }
        }
        pivot_rows.push(i);
        k += 1;
    }
    if k < cols && !allow_rank_deficient {
        return Err(LinAlgError::RankDeficient { rank: k });
    }
    Ok(Hnf {
        h,
        u,
        rank: k,
        pivot_rows,
    })
}

/// Smith normal form by alternating row and column gcd reduction.
pub fn snf(m: &IntMatrix) -> Snf {
    let (rows, cols) = (m.rows(), m.cols());
    let mut s = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    for t in 0..rows.min(cols) {
        // Smallest nonzero entry of the trailing block becomes the pivot.
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !s[(i, j)].is_zero()
                    && best.is_none_or(|(bi, bj)| s[(i, j)].abs() < s[(bi, bj)].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        s.swap_rows(t, bi);
        u.swap_rows(t, bi);
        s.swap_cols(t, bj);
        v.swap_cols(t, bj);

        loop {
            // Move the smallest entry of row t / column t to the pivot.
            let mut pos = (t, t);
            for i in t + 1..rows {
                if !s[(i, t)].is_zero() && s[(i, t)].abs() < s[pos].abs() {
                    pos = (i, t);
                }
            }
            for j in t + 1..cols {
                if !s[(t, j)].is_zero() && s[(t, j)].abs() < s[pos].abs() {
                    pos = (t, j);
                }
            }
            if pos.0 != t {
                s.swap_rows(t, pos.0);
                u.swap_rows(t, pos.0);
            } else if pos.1 != t {
                s.swap_cols(t, pos.1);
                v.swap_cols(t, pos.1);
            }
            let pivot = s[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..rows {
                let q = s[(i, t)].div_floor(&pivot);
                if !q.is_zero() {
                    let nq = -q;
                    row_axpy(&mut s, i, &nq, t);
                    row_axpy(&mut u, i, &nq, t);
                }
                clean &= s[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                let q = s[(t, j)].div_floor(&pivot);
                if !q.is_zero() {
                    let nq = -q;
                    col_axpy(&mut s, j, &nq, t);
                    col_axpy(&mut v, j, &nq, t);
                }
                clean &= s[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            // Enforce divisibility of the remaining block by the pivot.
            let bad = (t + 1..rows).find(|&i| {
                (t + 1..cols).any(|j| !s[(i, j)].is_multiple_of(&pivot))
            });
            match bad {
                Some(i) => {
                    let one = BigInt::one();
                    row_axpy(&mut s, t, &one, i);
                    row_axpy(&mut u, t, &one, i);
                }
                None => break,
            }
        }
        if s[(t, t)].is_negative() {
            negate_row(&mut s, t);
            negate_row(&mut u, t);
        }
    }
    Snf { s, u, v }
}
