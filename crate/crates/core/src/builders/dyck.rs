//! Cantor horizon lambda-graph systems of Dyck, Markov-Dyck and Motzkin shifts.
//!
//! Level `l` holds the closer words `b_{m1}...b_{ml}` with `m` admissible in
//! the Markov shift of `A`, in lexicographic order of `m`.

use std::collections::HashMap;

use super::monoid::MonoidKind;
use crate::error::Result;
use crate::lambda_graph::{LambdaGraphTruncation, LgEdge};
use crate::limits;
use crate::subshift::{check_markov_matrix, Alphabet};

pub fn dyck_lgs(n: usize, depth: usize) -> Result<LambdaGraphTruncation> {
    build(&MonoidKind::dyck(n), depth)
}

pub fn markov_dyck_lgs(a: &[Vec<u8>], depth: usize) -> Result<LambdaGraphTruncation> {
    check_markov_matrix(a)?;
    build(&MonoidKind::markov(a)?, depth)
}

/// The Dyck system plus a unit-labeled edge from `w` to each `w b_j`.
pub fn motzkin_lgs(n: usize, depth: usize) -> Result<LambdaGraphTruncation> {
    build(&MonoidKind::motzkin(n), depth)
}

fn build(m: &MonoidKind, depth: usize) -> Result<LambdaGraphTruncation> {
    let n = m.n();
    let a = m.matrix();
    let mut levels: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new()]];
    for l in 1..=depth {
        let mut next = Vec::new();
        for w in &levels[l - 1] {
            for j in 0..n {
                if w.last().is_none_or(|&k| a[k][j]) {
                    let mut v = w.clone();
                    v.push(j);
                    next.push(v);
                }
            }
        }
        limits::check(next.len())?;
        levels.push(next);
    }
    let index: Vec<HashMap<&[usize], usize>> =
        levels.iter().map(|lv| lv.iter().enumerate().map(|(i, w)| (w.as_slice(), i)).collect()).collect();
    let sizes: Vec<usize> = levels.iter().map(Vec::len).collect();
    let mut iota = vec![Vec::new()];
    for l in 1..=depth {
        iota.push(levels[l].iter().map(|w| index[l - 1][&w[..l - 1]]).collect());
    }
    let mut edges = Vec::with_capacity(depth);
    for l in 0..depth {
        let mut es = Vec::new();
        for (i, w) in levels[l].iter().enumerate() {
            // a_j: w -> b_j w
            for j in 0..n {
                let mut t = vec![j];
                t.extend_from_slice(w);
                if let Some(&dst) = index[l + 1].get(t.as_slice()) {
                    es.push(LgEdge { src: i, dst, label: m.opener(j) });
                }
            }
            // b_j: b_j u -> u x y for every admissible continuation
            let (j, tail): (Option<usize>, &[usize]) = match w.split_first() {
                Some((&j, rest)) => (Some(j), rest),
                None => (None, &[]),
            };
            for (dst, t) in levels[l + 1].iter().enumerate() {
                if t[..l.saturating_sub(1)] != *tail {
                    continue;
                }
                for k in 0..n {
                    if j.is_some_and(|j| j != k) || !a[k][t[0]] {
                        continue;
                    }
                    es.push(LgEdge { src: i, dst, label: m.closer(k) });
                }
            }
            if let Some(u) = m.unit() {
                for (dst, t) in levels[l + 1].iter().enumerate() {
                    if t[..l] == w[..] {
                        es.push(LgEdge { src: i, dst, label: u });
                    }
                }
            }
        }
        edges.push(es);
    }
    let names = m.symbol_names();
    let annotations = levels
        .iter()
        .map(|lv| {
            lv.iter().map(|w| w.iter().map(|&j| names[m.closer(j) as usize].as_str()).collect::<String>()).collect()
        })
        .collect();
    LambdaGraphTruncation::new(Alphabet::new(names.clone())?, &sizes, iota, edges)?.with_annotations(annotations)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dyck_counts() {
        let g = dyck_lgs(2, 3).unwrap();
        assert_eq!(g.sizes(), &[1, 2, 4, 8]);
        assert_eq!(g.edges(1).len(), 12);
        assert!(g.validate().all_ok());
    }

    #[test]
    fn markov_dyck_all_ones_is_dyck() {
        let g = markov_dyck_lgs(&[vec![1, 1], vec![1, 1]], 3).unwrap();
        let d = dyck_lgs(2, 3).unwrap();
        assert_eq!(g.edges(2), d.edges(2));
        assert_eq!(g.sizes(), d.sizes());
    }

    #[test]
    fn markov_dyck_golden_matrix() {
        let g = markov_dyck_lgs(&[vec![1, 1], vec![1, 0]], 4).unwrap();
        assert_eq!(&g.sizes()[1..3], &[2, 3]);
        let r = g.validate();
        assert!(r.all_ok(), "{:?}", r.failures);
    }

    #[test]
    fn motzkin_counts() {
        let g = motzkin_lgs(2, 2).unwrap();
        assert_eq!(g.alphabet().len(), 5);
        assert_eq!(g.edges(1).len(), 16);
        assert!(g.validate().all_ok());
    }

    #[test]
    fn permutation_matrix_rejected() {
        assert!(markov_dyck_lgs(&[vec![0, 1], vec![1, 0]], 2).is_err());
    }
}
