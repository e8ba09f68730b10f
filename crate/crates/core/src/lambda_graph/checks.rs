//! Structural checks certified to the depth of a truncation.

use std::collections::BTreeSet;

use super::LambdaGraphTruncation;
use crate::error::{Error, Result};
use crate::subshift::{SubshiftSpec, Word};
use crate::verdict::{CheckReport, Verdict};

type Lgs = LambdaGraphTruncation;

fn id(l: usize, i: usize) -> String {
    Lgs::vertex_id(l, i)
}

// (label word, end vertex) of all paths of length 1..=bound leaving v_u^l
fn paths_from(g: &Lgs, l: usize, u: usize, bound: usize) -> Vec<(Word, usize)> {
    let mut out = Vec::new();
    let mut layer: BTreeSet<(Word, usize)> = BTreeSet::from([(Word::empty(), u)]);
    for k in 0..bound {
        let mut next = BTreeSet::new();
        for (w, v) in &layer {
            for e in g.edges(l + k).iter().filter(|e| e.src == *v) {
                next.insert((w.concat(&[e.label]), e.dst));
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// `reach[n][w]`: `w` in `V_{l+n}` is reached from `v_v^l` by a path of length `n`.
fn reach_sets(g: &Lgs, l: usize, v: usize, bound: usize) -> Vec<Vec<bool>> {
    let mut cur = vec![false; g.level_size(l)];
    cur[v] = true;
    let mut out = vec![cur.clone()];
    for k in 0..bound {
        cur = g.step_any(l + k, &cur);
        out.push(cur.clone());
    }
    out
}

fn follow(g: &Lgs, l: usize, start: usize, w: &[u16]) -> Vec<bool> {
    let mut set = vec![false; g.level_size(l)];
    set[start] = true;
    for (k, &s) in w.iter().enumerate() {
        set = g.step(l + k, &set, s);
    }
    set
}

fn refute_or_unknown(g: &Lgs, witness: String) -> CheckReport {
    let lang = presented_language_irreducible(g);
    if lang.verdict == Verdict::No {
        CheckReport::refuted(g.depth(), witness).with_note("presented language is reducible")
    } else {
        CheckReport::unknown(g.depth()).with_witness(witness)
    }
}

/// Irreducibility in the iota sense: for `u, v` in `V_l` and every path `gamma`
/// from `u` of length at most `bound`, some path from `v` of length `n <= bound`
/// ends above `u` and continues along `lambda(gamma)` to a vertex above `t(gamma)`.
/// Checks every level `l` with `l + 2*bound <= L`.
pub fn check_iota_irreducible(g: &Lgs, bound: usize) -> Result<CheckReport> {
    let depth = g.depth();
    if bound == 0 || 2 * bound > depth {
        return Err(Error::DepthExceeded { requested: 2 * bound.max(1), certified: depth });
    }
    for l in 0..=depth - 2 * bound {
        let size = g.level_size(l);
        let reach: Vec<Vec<Vec<bool>>> = (0..size).map(|v| reach_sets(g, l, v, bound)).collect();
        for u in 0..size {
            let gammas = paths_from(g, l, u, bound);
            for v in 0..size {
                if u == v {
                    continue;
                }
                for (w, t) in &gammas {
                    let ok = (1..=bound).any(|n| {
                        let level = l + n;
                        (0..g.level_size(level)).any(|x| {
                            reach[v][n][x]
                                && g.iota_pow(level, x, n) == u
                                && follow(g, level, x, w)
                                    .iter()
                                    .enumerate()
                                    .any(|(z, &hit)| hit && g.iota_pow(level + w.len(), z, n) == *t)
                        })
                    });
                    if !ok {
                        let witness = format!(
                            "u={} v={} path {} to {}",
                            id(l, u),
                            id(l, v),
                            g.alphabet().format_word(w),
                            id(l + w.len(), *t)
                        );
                        return Ok(refute_or_unknown(g, witness));
                    }
                }
            }
        }
    }
    Ok(CheckReport::yes(depth))
}

/// Irreducibility in the lambda sense on levels `0..=max_level`: for `u, v` in
/// `V_l` some `n <= bound` has every `w` with `iota^n(w) = u` reachable from `v`
/// in `n` steps.
pub fn check_lambda_irreducible(g: &Lgs, max_level: usize, bound: usize) -> Result<CheckReport> {
    let depth = g.depth();
    if max_level >= depth {
        return Err(Error::DepthExceeded { requested: max_level + 1, certified: depth });
    }
    for l in 0..=max_level {
        let size = g.level_size(l);
        let top = bound.min(depth - l);
        for v in 0..size {
            let reach = reach_sets(g, l, v, top);
            for u in 0..size {
                let ok = (0..=top)
                    .filter(|&n| n > 0 || u == v)
                    .any(|n| (0..g.level_size(l + n)).all(|w| g.iota_pow(l + n, w, n) != u || reach[n][w]));
                if !ok {
                    return Ok(refute_or_unknown(g, format!("u={} v={}", id(l, u), id(l, v))));
                }
            }
        }
    }
    Ok(CheckReport::yes(depth))
}

// label words of length d leaving v, capped at two
fn distinct_labels(g: &Lgs, l: usize, v: usize, d: usize) -> usize {
    let mut sets: Vec<Vec<Word>> = vec![Vec::new(); g.level_size(l)];
    sets[v].push(Word::empty());
    for k in 0..d {
        let mut next: Vec<Vec<Word>> = vec![Vec::new(); g.level_size(l + k + 1)];
        for e in g.edges(l + k) {
            for w in &sets[e.src] {
                let x = w.concat(&[e.label]);
                let slot = &mut next[e.dst];
                if slot.len() < 2 && !slot.contains(&x) {
                    slot.push(x);
                }
            }
        }
        sets = next;
    }
    let mut all: Vec<&Word> = sets.iter().flatten().collect();
    all.sort();
    all.dedup();
    all.len().min(2)
}

/// Condition (I): every vertex on a level `l <= L - d` has at least two label
/// paths of length `d`. A vertex with a single one refutes it.
pub fn check_condition_i(g: &Lgs, d: usize) -> Result<CheckReport> {
    let depth = g.depth();
    if d == 0 || d > depth {
        return Err(Error::DepthExceeded { requested: d.max(1), certified: depth });
    }
    for l in 0..=depth - d {
        for v in 0..g.level_size(l) {
            if distinct_labels(g, l, v, d) < 2 {
                return Ok(CheckReport::refuted(depth, id(l, v)).with_note("unique label continuation"));
            }
        }
    }
    Ok(CheckReport::yes(depth))
}

/// Lambda-condition (I): every vertex on a level `l <= L - bound` has two paths
/// of equal length `<= bound` with different labels and a common end vertex.
pub fn check_lambda_condition_i(g: &Lgs, bound: usize) -> Result<CheckReport> {
    let depth = g.depth();
    if bound == 0 || bound > depth {
        return Err(Error::DepthExceeded { requested: bound.max(1), certified: depth });
    }
    for l in 0..=depth - bound {
        for v in 0..g.level_size(l) {
            let mut sets: Vec<Vec<Word>> = vec![Vec::new(); g.level_size(l)];
            sets[v].push(Word::empty());
            let mut found = false;
            for k in 0..bound {
                let mut next: Vec<Vec<Word>> = vec![Vec::new(); g.level_size(l + k + 1)];
                for e in g.edges(l + k) {
                    for w in &sets[e.src] {
                        let x = w.concat(&[e.label]);
                        let slot = &mut next[e.dst];
                        if slot.len() < 2 && !slot.contains(&x) {
                            slot.push(x);
                        }
                    }
                }
                sets = next;
                if sets.iter().any(|s| s.len() >= 2) {
                    found = true;
                    break;
                }
            }
            if !found {
                if distinct_labels(g, l, v, bound) < 2 {
                    return Ok(CheckReport::refuted(depth, id(l, v)).with_note("unique label continuation"));
                }
                return Ok(CheckReport::unknown(depth).with_witness(id(l, v)));
            }
        }
    }
    Ok(CheckReport::yes(depth))
}

/// Irreducibility of the presented language, decided exactly when the
/// truncation ends in a repeating block of levels.
pub fn presented_language_irreducible(g: &Lgs) -> CheckReport {
    match g.stationary_tail() {
        Some((_, graph)) => match SubshiftSpec::sofic(graph) {
            Ok(spec) => {
                let mut r = spec.is_irreducible(0).unwrap_or_else(|_| CheckReport::unknown(g.depth()));
                r.certified_depth = g.depth();
                r.with_note("decided on the repeating tail")
            }
            Err(_) => CheckReport::unknown(g.depth()),
        },
        None => CheckReport::unknown(g.depth()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lambda_graph::tests::full2;
    use crate::subshift::{Alphabet, LabeledGraph};

    fn two_loops(depth: usize) -> Lgs {
        let g = LabeledGraph::from_triples(Alphabet::numbered(2), &["a", "b"], &[("a", "0", "a"), ("b", "1", "b")])
            .unwrap();
        Lgs::from_graph(&g, depth).unwrap()
    }

    fn single_loop(depth: usize) -> Lgs {
        let g = LabeledGraph::from_triples(Alphabet::numbered(1), &["a"], &[("a", "0", "a")]).unwrap();
        Lgs::from_graph(&g, depth).unwrap()
    }

    #[test]
    fn full_shift_passes_everything() {
        let g = full2(6);
        assert_eq!(check_iota_irreducible(&g, 2).unwrap().verdict, Verdict::Yes);
        assert_eq!(check_lambda_irreducible(&g, 3, 2).unwrap().verdict, Verdict::Yes);
        assert_eq!(check_condition_i(&g, 1).unwrap().verdict, Verdict::Yes);
        assert_eq!(check_lambda_condition_i(&g, 2).unwrap().verdict, Verdict::Yes);
    }

    #[test]
    fn disjoint_components_are_refuted() {
        let g = two_loops(5);
        let r = check_iota_irreducible(&g, 2).unwrap();
        assert_eq!(r.verdict, Verdict::No, "{r:?}");
        assert_eq!(presented_language_irreducible(&g).verdict, Verdict::No);
    }

    #[test]
    fn single_loop_fails_condition_i() {
        let g = single_loop(4);
        assert_eq!(check_condition_i(&g, 2).unwrap().verdict, Verdict::No);
        assert_eq!(check_lambda_condition_i(&g, 2).unwrap().verdict, Verdict::No);
    }

    #[test]
    fn depth_errors() {
        let g = full2(2);
        assert!(check_iota_irreducible(&g, 2).is_err());
        assert!(check_condition_i(&g, 3).is_err());
    }
}
