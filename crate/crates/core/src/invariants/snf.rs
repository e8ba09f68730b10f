//! Smith normal form over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type IntMatrix = Vec<Vec<BigInt>>;

/// `u * m * v == d` with `u`, `v` unimodular and `d` diagonal, `d_1 | d_2 | ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Snf {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl Snf {
    /// Diagonal entries, `min(rows, cols)` of them.
    pub fn diagonal(&self) -> Vec<BigInt> {
        let k = self.d.len().min(self.d.first().map_or(0, Vec::len));
        (0..k).map(|i| self.d[i][i].clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }

    /// Re-multiplies the factors and checks every stated property exactly.
    pub fn verify(&self, m: &IntMatrix) -> bool {
        let rows = m.len();
        let cols = m.first().map_or(0, Vec::len);
        if mul(&mul(&self.u, m, cols), &self.v, cols) != self.d {
            return false;
        }
        let unit = |x: BigInt| x.abs().is_one();
        if !unit(determinant(&self.u)) || !unit(determinant(&self.v)) {
            return false;
        }
        for i in 0..rows {
            for j in 0..cols {
                if i != j && !self.d[i][j].is_zero() {
                    return false;
                }
            }
        }
        let diag = self.diagonal();
        diag.iter().all(|x| !x.is_negative())
            && diag.windows(2).all(|w| if w[0].is_zero() { w[1].is_zero() } else { w[1].is_multiple_of(&w[0]) })
    }
}

pub fn identity(n: usize) -> IntMatrix {
    (0..n).map(|i| (0..n).map(|j| BigInt::from((i == j) as u8)).collect()).collect()
}

fn mul(a: &IntMatrix, b: &IntMatrix, b_cols: usize) -> IntMatrix {
    let cols = b.first().map_or(b_cols, Vec::len);
    a.iter().map(|row| (0..cols).map(|j| row.iter().zip(b).map(|(x, brow)| x * &brow[j]).sum()).collect()).collect()
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn determinant(m: &IntMatrix) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Smith normal form, pivoting on entries of least absolute value.
pub fn smith_normal_form(m: &IntMatrix) -> Snf {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut d = m.clone();
    let mut u = identity(rows);
    let mut v = identity(cols);
    for t in 0..rows.min(cols) {
        let Some((pi, pj)) = min_entry(&d, t) else { break };
        d.swap(t, pi);
        u.swap(t, pi);
        swap_cols(&mut d, t, pj);
        swap_cols(&mut v, t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if d[i][t].is_zero() {
                    continue;
                }
                let q = d[i][t].div_floor(&d[t][t]);
                row_sub(&mut d, i, t, &q);
                row_sub(&mut u, i, t, &q);
                if !d[i][t].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if d[t][j].is_zero() {
                    continue;
                }
                let q = d[t][j].div_floor(&d[t][t]);
                col_sub(&mut d, j, t, &q);
                col_sub(&mut v, j, t, &q);
                if !d[t][j].is_zero() {
                    dirty = true;
                }
            }
            if !dirty {
                // the pivot must divide the remaining block
                let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !d[i][j].is_multiple_of(&d[t][t])));
                match bad {
                    Some(i) => {
                        row_sub(&mut d, t, i, &-BigInt::one());
                        row_sub(&mut u, t, i, &-BigInt::one());
                    }
                    None => break,
                }
            }
            // move the smallest nonzero entry of row t / column t to the pivot
            let (mut bi, mut bj) = (t, t);
            for i in t..rows {
                if !d[i][t].is_zero() && d[i][t].abs() < d[bi][bj].abs() {
                    (bi, bj) = (i, t);
                }
            }
            for j in t..cols {
                if !d[t][j].is_zero() && d[t][j].abs() < d[bi][bj].abs() {
                    (bi, bj) = (t, j);
                }
            }
            d.swap(t, bi);
            u.swap(t, bi);
            swap_cols(&mut d, t, bj);
            swap_cols(&mut v, t, bj);
        }
        if d[t][t].is_negative() {
            negate_row(&mut d, t);
            negate_row(&mut u, t);
        }
    }
    Snf { u, d, v }
}

fn min_entry(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in d.iter().enumerate().skip(t) {
        for (j, x) in row.iter().enumerate().skip(t) {
            if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < d[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

/// `row_i -= q * row_k`
fn row_sub(m: &mut IntMatrix, i: usize, k: usize, q: &BigInt) {
    let src = m[k].clone();
    for (x, y) in m[i].iter_mut().zip(&src) {
        *x -= q * y;
    }
}

/// `col_j -= q * col_k`
fn col_sub(m: &mut IntMatrix, j: usize, k: usize, q: &BigInt) {
    for row in m.iter_mut() {
        let y = row[k].clone();
        row[j] -= q * y;
    }
}

fn swap_cols(m: &mut IntMatrix, a: usize, b: usize) {
    if a != b {
        for row in m.iter_mut() {
            row.swap(a, b);
        }
    }
}

fn negate_row(m: &mut IntMatrix, i: usize) {
    for x in m[i].iter_mut() {
        *x = -x.clone();
    }
}
