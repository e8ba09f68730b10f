//! Normal forms in the (Markov-)Dyck inverse monoid.
//!
//! Symbols `0..n` are the openers `a_i`, `n..2n` the closers `b_i`, and for
//! Motzkin words `2n` is the unit. A closer `b_i` acts as the isometry `S_i`
//! and an opener `a_i` as its adjoint on one-sided paths of the Markov shift.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::subshift::Sym;

/// Shape of a Dyck-type monoid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidKind {
    n: usize,
    matrix: Vec<Vec<bool>>,
    unit: bool,
}

/// Nonzero monomial `S_plus P_range S_minus^*` or zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Reduced {
    Zero,
    NonZero {
        /// Closer indices, in word order.
        plus: Vec<usize>,
        /// Input prefix stripped by the opener part (first stripped first).
        minus: Vec<usize>,
        /// Allowed first symbols of the remaining path.
        range: Vec<bool>,
    },
}

impl Reduced {
    pub fn is_zero(&self) -> bool {
        matches!(self, Reduced::Zero)
    }
}

impl MonoidKind {
    pub fn dyck(n: usize) -> Self {
        MonoidKind { n, matrix: vec![vec![true; n]; n], unit: false }
    }

    pub fn motzkin(n: usize) -> Self {
        MonoidKind { n, matrix: vec![vec![true; n]; n], unit: true }
    }

    pub fn markov(a: &[Vec<u8>]) -> Result<Self> {
        let n = a.len();
        if n == 0 || a.iter().any(|r| r.len() != n) {
            return Err(Error::BadMatrix("matrix must be square and nonempty".into()));
        }
        if a.iter().flatten().any(|&x| x > 1) {
            return Err(Error::BadMatrix("entries must be 0 or 1".into()));
        }
        let matrix = a.iter().map(|r| r.iter().map(|&x| x == 1).collect()).collect();
        Ok(MonoidKind { n, matrix, unit: false })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn alphabet_size(&self) -> usize {
        2 * self.n + usize::from(self.unit)
    }

    pub fn matrix(&self) -> &[Vec<bool>] {
        &self.matrix
    }

    pub fn symbol_names(&self) -> Vec<String> {
        let mut v: Vec<String> = (1..=self.n).map(|i| format!("a{i}")).collect();
        v.extend((1..=self.n).map(|i| format!("b{i}")));
        if self.unit {
            v.push("1".into());
        }
        v
    }

    pub fn opener(&self, i: usize) -> Sym {
        i as Sym
    }

    pub fn closer(&self, i: usize) -> Sym {
        (self.n + i) as Sym
    }

    pub fn unit(&self) -> Option<Sym> {
        self.unit.then_some((2 * self.n) as Sym)
    }

    pub fn identity(&self) -> Reduced {
        Reduced::NonZero { plus: Vec::new(), minus: Vec::new(), range: vec![true; self.n] }
    }

    /// Right-multiplies a normal form by one symbol.
    pub fn push(&self, r: Reduced, s: Sym) -> Reduced {
        let (mut plus, mut minus, mut range) = match r {
            Reduced::Zero => return Reduced::Zero,
            Reduced::NonZero { plus, minus, range } => (plus, minus, range),
        };
        let s = s as usize;
        let n = self.n;
        if s < n {
            let i = s;
            if let Some(&first) = minus.first() {
                if !self.matrix[i][first] {
                    return Reduced::Zero;
                }
            } else {
                for (c, ok) in range.iter_mut().enumerate() {
                    *ok &= self.matrix[i][c];
                }
            }
            minus.insert(0, i);
        } else if s < 2 * n {
            let i = s - n;
            if minus.is_empty() {
                if !range[i] {
                    return Reduced::Zero;
                }
                plus.push(i);
                range = self.matrix[i].clone();
            } else {
                if minus[0] != i {
                    return Reduced::Zero;
                }
                minus.remove(0);
            }
        } else if !(self.unit && s == 2 * n) {
            return Reduced::Zero;
        }
        if range.iter().any(|&b| b) {
            Reduced::NonZero { plus, minus, range }
        } else {
            Reduced::Zero
        }
    }

    pub fn reduce(&self, w: &[Sym]) -> Reduced {
        w.iter().fold(self.identity(), |r, &s| self.push(r, s))
    }

    /// The normal form written back as a word: closers, then openers.
    pub fn reduced_word(&self, r: &Reduced) -> Option<Vec<Sym>> {
        match r {
            Reduced::Zero => None,
            Reduced::NonZero { plus, minus, .. } => {
                let mut w: Vec<Sym> = plus.iter().map(|&i| self.closer(i)).collect();
                w.extend(minus.iter().rev().map(|&i| self.opener(i)));
                Some(w)
            }
        }
    }

    /// Word `eta` with `mu eta nu` nonzero: closers cancelling the opener part
    /// of `mu`, a connecting closer path, then openers cancelling the closer
    /// part of `nu`. Each candidate is verified by reduction.
    pub fn bridge(&self, mu: &[Sym], nu: &[Sym]) -> Option<Vec<Sym>> {
        let (Reduced::NonZero { minus, .. }, Reduced::NonZero { plus, .. }) = (self.reduce(mu), self.reduce(nu)) else {
            return None;
        };
        let head: Vec<Sym> = minus.iter().map(|&i| self.closer(i)).collect();
        let tail: Vec<Sym> = plus.iter().rev().map(|&i| self.opener(i)).collect();
        let mut layer: Vec<Vec<usize>> = vec![Vec::new()];
        for _ in 0..=self.n + 1 {
            for g in &layer {
                let mut eta = head.clone();
                eta.extend(g.iter().map(|&i| self.closer(i)));
                eta.extend(&tail);
                let mut w = mu.to_vec();
                w.extend(&eta);
                w.extend_from_slice(nu);
                if !self.reduce(&w).is_zero() {
                    return Some(eta);
                }
            }
            layer = layer
                .iter()
                .flat_map(|g| {
                    (0..self.n).filter(move |&x| g.last().is_none_or(|&l| self.matrix[l][x])).map(move |x| {
                        let mut h = g.clone();
                        h.push(x);
                        h
                    })
                })
                .collect();
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // a1=0 a2=1 b1=2 b2=3
    #[test]
    fn dyck_basic_relations() {
        let m = MonoidKind::dyck(2);
        assert!(!m.reduce(&[0, 2]).is_zero());
        assert_eq!(m.reduced_word(&m.reduce(&[0, 2])).unwrap(), Vec::<Sym>::new());
        assert!(m.reduce(&[0, 3]).is_zero());
        assert!(m.reduce(&[1, 2]).is_zero());
        assert_eq!(m.reduced_word(&m.reduce(&[2, 0, 1])).unwrap(), vec![2, 0, 1]);
        assert_eq!(m.reduced_word(&m.reduce(&[0, 1, 3, 2])).unwrap(), Vec::<Sym>::new());
    }

    #[test]
    fn markov_dyck_respects_matrix() {
        // A = [[1,1],[1,0]]: b2 b2 is zero
        let m = MonoidKind::markov(&[vec![1, 1], vec![1, 0]]).unwrap();
        assert!(m.reduce(&[3, 3]).is_zero());
        assert!(!m.reduce(&[3, 2]).is_zero());
        // a2 b2 = S_2^* S_2 = projection onto paths starting with 1
        assert!(!m.reduce(&[1, 3]).is_zero());
        assert!(m.reduce(&[1, 3, 3]).is_zero());
        assert!(!m.reduce(&[1, 3, 2]).is_zero());
    }

    #[test]
    fn motzkin_unit_is_neutral() {
        let m = MonoidKind::motzkin(2);
        assert_eq!(m.reduce(&[0, 4, 2]), m.reduce(&[0, 2]));
    }

    #[test]
    fn bridge_links_forms() {
        let m = MonoidKind::markov(&[vec![1, 1], vec![1, 0]]).unwrap();
        let eta = m.bridge(&[3], &[3]).unwrap();
        let mut w = vec![3];
        w.extend(&eta);
        w.push(3);
        assert!(!m.reduce(&w).is_zero());
    }
}
