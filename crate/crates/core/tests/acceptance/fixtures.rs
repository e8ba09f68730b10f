//! Shared systems and independent oracles.

use lamgraph::builders::{beta_lgs, dyck_lgs, markov_dyck_lgs, motzkin_lgs, Beta};
use lamgraph::conjugacy::{higher_block_codes, BlockMap, BlockWordMap, EventualConjugacyData};
use lamgraph::subshift::golden_mean;
use lamgraph::{Alphabet, LabeledGraph, LambdaGraphTruncation, SubshiftSpec, Sym, Word};

pub const A0: [[u64; 3]; 3] = [[0, 1, 1], [1, 0, 0], [0, 1, 1]];
pub const A1: [[u64; 3]; 3] = [[0, 1, 1], [1, 0, 0], [1, 0, 0]];
pub const MARKOV_A: [[u8; 2]; 2] = [[1, 1], [1, 0]];

pub fn rows<const N: usize, T: Copy>(m: &[[T; N]; N]) -> Vec<Vec<T>> {
    m.iter().map(|r| r.to_vec()).collect()
}

pub fn markov_a() -> Vec<Vec<u8>> {
    rows(&MARKOV_A)
}

/// Every builder output at level `level`, named.
pub fn builder_systems(level: usize) -> Vec<(String, LambdaGraphTruncation)> {
    let mut out = vec![
        ("dyck 2".to_string(), dyck_lgs(2, level).unwrap()),
        ("dyck 3".to_string(), dyck_lgs(3, level).unwrap()),
        ("markov-dyck [[1,1],[1,0]]".to_string(), markov_dyck_lgs(&markov_a(), level).unwrap()),
        ("motzkin 2".to_string(), motzkin_lgs(2, level).unwrap()),
    ];
    for b in ["2", "golden", "3/2"] {
        out.push((format!("beta {b}"), beta_lgs(&Beta::parse(b).unwrap(), level).unwrap()));
    }
    out
}

pub fn single_loop(depth: usize) -> LambdaGraphTruncation {
    let g = LabeledGraph::from_triples(Alphabet::numbered(1), &["a"], &[("a", "0", "a")]).unwrap();
    LambdaGraphTruncation::from_graph(&g, depth).unwrap()
}

pub fn two_loops(depth: usize) -> LambdaGraphTruncation {
    let g =
        LabeledGraph::from_triples(Alphabet::numbered(2), &["a", "b"], &[("a", "0", "a"), ("b", "1", "b")]).unwrap();
    LambdaGraphTruncation::from_graph(&g, depth).unwrap()
}

/// Partial action of a word of `S_i` (closers) and `S_i^*` (openers) on paths
/// of the Markov shift of `a`; the word is nonzero iff it acts on some path.
/// Paths of length `|w| + 1` suffice since at most `|w|` symbols are stripped.
pub fn acts_on_some_path(a: &[Vec<u8>], unit: Option<Sym>, w: &[Sym]) -> bool {
    let n = a.len();
    let paths = markov_paths(a, w.len() + 1);
    paths.iter().any(|x| {
        let mut x: Vec<usize> = x.clone();
        for &s in w.iter().rev() {
            let s = s as usize;
            if Some(s as Sym) == unit {
                continue;
            }
            if s < n {
                if x.first() != Some(&s) {
                    return false;
                }
                x.remove(0);
            } else if s < 2 * n {
                let i = s - n;
                if a[i][x[0]] == 0 {
                    return false;
                }
                x.insert(0, i);
            } else {
                return false;
            }
        }
        true
    })
}

fn markov_paths(a: &[Vec<u8>], len: usize) -> Vec<Vec<usize>> {
    let n = a.len();
    let mut paths: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
    for _ in 1..len {
        paths = paths
            .into_iter()
            .flat_map(|p| {
                let last = *p.last().unwrap();
                (0..n).filter(move |&j| a[last][j] == 1).map(move |j| {
                    let mut q = p.clone();
                    q.push(j);
                    q
                })
            })
            .collect();
    }
    paths
}

/// Dyck rewriting `a_i b_i -> 1`, `a_i b_j -> 0`; `None` is zero.
pub fn dyck_rewrite(n: usize, w: &[Sym]) -> Option<Vec<Sym>> {
    let mut stack: Vec<Sym> = Vec::new();
    for &s in w {
        let s_us = s as usize;
        if s_us >= n && s_us < 2 * n {
            if let Some(&top) = stack.last() {
                if (top as usize) < n {
                    if top as usize + n != s_us {
                        return None;
                    }
                    stack.pop();
                    continue;
                }
            }
        }
        stack.push(s);
    }
    Some(stack)
}

/// Every word of length `len` over `k` letters.
pub fn words(k: usize, len: usize) -> Vec<Vec<Sym>> {
    (0..len).fold(vec![Vec::new()], |acc, _| {
        acc.into_iter()
            .flat_map(|w| {
                (0..k as Sym).map(move |s| {
                    let mut v = w.clone();
                    v.push(s);
                    v
                })
            })
            .collect()
    })
}

/// Golden mean shift against its 2-block presentation with an artificial lag 1:
/// `h(x) = x^[2]` split as head `[x1 x2]` and tail `[x_{i+1} x_{i+2}]`.
pub fn eventual_fixture() -> (SubshiftSpec, SubshiftSpec, EventualConjugacyData) {
    let s1 = golden_mean();
    let (s2, fwd, _) = higher_block_codes(&s1, 2).unwrap();
    let blocks = s1.admissible_words(2).unwrap();
    let code = |w: &[Sym]| fwd.table[&Word(w.to_vec())];
    let phi1 = BlockWordMap::from_fn(&s1, 2, |w| Word(vec![code(w)])).unwrap();
    let h1 = BlockMap::from_fn(&s1, 3, |w| code(&w[1..])).unwrap();
    let first = |y: Sym| blocks[y as usize][0];
    let phi2 = BlockWordMap::from_fn(&s2, 2, |w| Word(vec![first(w[0])])).unwrap();
    let h2 = BlockMap::from_fn(&s2, 2, |w| first(w[1])).unwrap();
    let data = EventualConjugacyData::new(1, phi1, h1, phi2, h2).unwrap();
    (s1, s2, data)
}
