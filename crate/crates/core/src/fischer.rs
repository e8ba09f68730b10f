//! Left Fischer covers, their lambda-graph systems and the matrix over symbol-vertex pairs.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::lambda_graph::{LambdaGraphTruncation, LgEdge};
use crate::limits;
use crate::subshift::graph::scc;
use crate::subshift::{GraphEdge, LabeledGraph, SubshiftSpec, Sym, Word};

/// Reverse subset construction: states are initial-vertex sets `I(w)` of words.
#[derive(Clone, Debug)]
pub struct SubsetPresentation {
    /// Edge `I(a w) -> I(w)` labeled `a`; left-resolving by construction.
    pub graph: LabeledGraph,
    /// Shortlex-least word reaching each state.
    pub words: Vec<Word>,
    pub sets: Vec<Vec<bool>>,
}

/// Builds the reverse subset automaton of `g`, states ordered by their least word.
pub fn subset_presentation(g: &LabeledGraph) -> Result<SubsetPresentation> {
    let k = g.alphabet().len();
    let full = vec![true; g.num_vertices()];
    let mut index: HashMap<Vec<bool>, usize> = HashMap::from([(full.clone(), 0)]);
    let mut sets = vec![full];
    let mut words = vec![Word::empty()];
    let mut layer = vec![0usize];
    while !layer.is_empty() {
        // least word per newly found state: `a . rep(parent)` over the previous layer
        let mut found: BTreeMap<Vec<bool>, Word> = BTreeMap::new();
        for &p in &layer {
            for a in 0..k as Sym {
                let q = g.step_backward(&sets[p], a);
                if !q.iter().any(|&b| b) || index.contains_key(&q) {
                    continue;
                }
                let mut w = vec![a];
                w.extend_from_slice(&words[p]);
                let w = Word(w);
                found
                    .entry(q)
                    .and_modify(|old| {
                        if w < *old {
                            *old = w.clone();
                        }
                    })
                    .or_insert(w);
            }
        }
        let mut fresh: Vec<(Vec<bool>, Word)> = found.into_iter().collect();
        fresh.sort_by(|a, b| a.1.cmp(&b.1));
        layer.clear();
        for (set, w) in fresh {
            index.insert(set.clone(), sets.len());
            layer.push(sets.len());
            sets.push(set);
            words.push(w);
            limits::check(sets.len())?;
        }
    }
    let mut edges = Vec::new();
    for (p, set) in sets.iter().enumerate() {
        for a in 0..k as Sym {
            let q = g.step_backward(set, a);
            if let Some(&qi) = index.get(&q) {
                edges.push(GraphEdge { src: qi, dst: p, label: a });
            }
        }
    }
    let names = words.iter().map(|w| format!("[{}]", g.alphabet().format_word(w))).collect();
    let graph = LabeledGraph::new(g.alphabet().clone(), names, edges)?;
    Ok(SubsetPresentation { graph, words, sets })
}

/// Merges vertices with equal predecessor languages.
pub fn predecessor_separate(g: &LabeledGraph) -> Result<LabeledGraph> {
    if !g.is_left_resolving() {
        return Err(Error::NotLeftResolving);
    }
    let (block, count) = predecessor_partition(g, usize::MAX).pop().expect("at least one level");
    quotient(g, &block, count)
}

/// Partitions `P_0, P_1, ...` by `l`-step predecessor sets, up to `max_level` or the fixpoint.
fn predecessor_partition(g: &LabeledGraph, max_level: usize) -> Vec<(Vec<usize>, usize)> {
    let n = g.num_vertices();
    let mut levels = vec![(vec![0usize; n], usize::from(n > 0))];
    while levels.len() <= max_level {
        let (prev, prev_count) = levels.last().expect("nonempty");
        let mut sig: Vec<BTreeSet<(Sym, usize)>> = vec![BTreeSet::new(); n];
        for e in g.edges() {
            sig[e.dst].insert((e.label, prev[e.src]));
        }
        // blocks numbered in order of their least vertex
        let mut ids: HashMap<&BTreeSet<(Sym, usize)>, usize> = HashMap::new();
        let next: Vec<usize> = (0..n)
            .map(|v| {
                let fresh = ids.len();
                *ids.entry(&sig[v]).or_insert(fresh)
            })
            .collect();
        let count = ids.len();
        let stable = count == *prev_count;
        levels.push((next, count));
        if stable {
            levels.pop();
            break;
        }
    }
    levels
}

fn quotient(g: &LabeledGraph, block: &[usize], count: usize) -> Result<LabeledGraph> {
    let mut names = vec![String::new(); count];
    for (v, &b) in block.iter().enumerate().rev() {
        names[b] = g.vertices()[v].clone();
    }
    let edges: BTreeSet<(usize, usize, Sym)> =
        g.edges().iter().map(|e| (block[e.src], block[e.dst], e.label)).collect();
    let edges = edges.into_iter().map(|(src, dst, label)| GraphEdge { src, dst, label }).collect();
    LabeledGraph::new(g.alphabet().clone(), names, edges)
}

/// Left Fischer cover of an irreducible sofic shift; vertices `v1, v2, ...`.
pub fn fischer_cover(spec: &SubshiftSpec) -> Result<LabeledGraph> {
    let g = spec.presentation().ok_or_else(|| Error::NotSofic("the backend has no finite presentation".into()))?;
    let report = spec.is_irreducible(0)?;
    if !report.verdict.is_yes() {
        return Err(Error::NotIrreducible(report.witness.unwrap_or_default()));
    }
    let h = subset_presentation(g)?.graph.essential_part();
    let succ = h.successors();
    let comps = scc(&succ);
    let mut comp_of = vec![0usize; h.num_vertices()];
    for (c, vs) in comps.iter().enumerate() {
        for &v in vs {
            comp_of[v] = c;
        }
    }
    let mut has_input = vec![false; comps.len()];
    for e in h.edges() {
        if comp_of[e.src] != comp_of[e.dst] {
            has_input[comp_of[e.dst]] = true;
        }
    }
    let sources: Vec<usize> = (0..comps.len()).filter(|&c| !has_input[c]).collect();
    if sources.len() != 1 {
        return Err(Error::NotIrreducible(format!("{} synchronizing components", sources.len())));
    }
    let keep: Vec<bool> = (0..h.num_vertices()).map(|v| comp_of[v] == sources[0]).collect();
    let cover = predecessor_separate(&h.induced(&keep))?;
    let names = (1..=cover.num_vertices()).map(|i| format!("v{i}")).collect();
    cover.with_vertex_names(names)
}

/// The lambda-graph system of a Fischer cover with its stabilization level.
#[derive(Clone, Debug)]
pub struct FischerLgs {
    pub lgs: LambdaGraphTruncation,
    /// First level whose vertices are exactly those of the cover.
    pub stabilization: usize,
}

/// Levels identify cover vertices with equal `l`-step predecessor sets.
pub fn min_lgs_from_fischer(g: &LabeledGraph, depth: usize) -> Result<FischerLgs> {
    if !g.is_left_resolving() {
        return Err(Error::NotLeftResolving);
    }
    if !g.is_essential() {
        return Err(Error::invalid("graph is not essential"));
    }
    let n = g.num_vertices();
    let fix = predecessor_partition(g, usize::MAX);
    if fix.last().expect("nonempty").1 != n {
        return Err(Error::invalid("graph is not predecessor-separated"));
    }
    let stabilization = fix.len() - 1;
    let mut parts = predecessor_partition(g, depth);
    while parts.len() <= depth {
        parts.push(parts.last().expect("nonempty").clone());
    }
    let sizes: Vec<usize> = parts.iter().map(|p| p.1).collect();
    let mut iota = vec![Vec::new()];
    for l in 1..=depth {
        let mut up = vec![0usize; sizes[l]];
        for v in 0..n {
            up[parts[l].0[v]] = parts[l - 1].0[v];
        }
        iota.push(up);
    }
    let mut edges = Vec::with_capacity(depth);
    for l in 0..depth {
        let set: BTreeSet<(usize, usize, Sym)> =
            g.edges().iter().map(|e| (parts[l].0[e.src], parts[l + 1].0[e.dst], e.label)).collect();
        edges.push(set.into_iter().map(|(src, dst, label)| LgEdge { src, dst, label }).collect());
    }
    let annotations = parts
        .iter()
        .map(|(block, count)| {
            (0..*count)
                .map(|b| {
                    let members: Vec<&str> =
                        (0..n).filter(|&v| block[v] == b).map(|v| g.vertices()[v].as_str()).collect();
                    format!("{{{}}}", members.join(","))
                })
                .collect()
        })
        .collect();
    let lgs = LambdaGraphTruncation::new(g.alphabet().clone(), &sizes, iota, edges)?.with_annotations(annotations)?;
    Ok(FischerLgs { lgs, stabilization })
}

/// Square 0/1 matrix over the pairs `(a, v)` such that some `a`-edge enters `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CKMatrix {
    pub index: Vec<(Sym, usize)>,
    pub labels: Vec<String>,
    pub entries: Vec<Vec<u64>>,
}

impl CKMatrix {
    pub fn len(&self) -> usize {
        self.index.len()
    }

    pub fn is_empty(&self) -> bool {
        self.index.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({ "index": self.labels, "matrix": self.entries })
    }

    /// Edge shift of the matrix over the alphabet of pair labels.
    pub fn edge_shift(&self) -> Result<SubshiftSpec> {
        SubshiftSpec::from_transition_matrix(&self.entries, Some(self.labels.clone()))
    }
}

impl fmt::Display for CKMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(u64::to_string).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// `A((a,i),(b,j)) = 1` iff `(a,i)` is an index and there is an edge `i -b-> j`.
pub fn ck_matrix(g: &LabeledGraph) -> Result<CKMatrix> {
    if !g.is_left_resolving() {
        return Err(Error::NotLeftResolving);
    }
    let pairs: BTreeSet<(Sym, usize)> = g.edges().iter().map(|e| (e.label, e.dst)).collect();
    let index: Vec<(Sym, usize)> = pairs.into_iter().collect();
    let pos: HashMap<(Sym, usize), usize> = index.iter().enumerate().map(|(k, &p)| (p, k)).collect();
    let mut entries = vec![vec![0u64; index.len()]; index.len()];
    for (r, &(_, i)) in index.iter().enumerate() {
        for e in g.edges().iter().filter(|e| e.src == i) {
            entries[r][pos[&(e.label, e.dst)]] = 1;
        }
    }
    let labels = index.iter().map(|&(a, v)| format!("({},{})", g.alphabet().name(a), g.vertices()[v])).collect();
    Ok(CKMatrix { index, labels, entries })
}

/// Labeled-graph isomorphism by backtracking; meant for small graphs.
pub fn graphs_isomorphic(a: &LabeledGraph, b: &LabeledGraph) -> bool {
    let n = a.num_vertices();
    if n != b.num_vertices() || a.edges().len() != b.edges().len() || a.alphabet().names() != b.alphabet().names() {
        return false;
    }
    let count = |g: &LabeledGraph| {
        let mut m: HashMap<(usize, usize, Sym), usize> = HashMap::new();
        for e in g.edges() {
            *m.entry((e.src, e.dst, e.label)).or_default() += 1;
        }
        m
    };
    let (ca, cb) = (count(a), count(b));
    let degree = |g: &LabeledGraph, v: usize| {
        let mut d: Vec<(bool, Sym)> = g
            .edges()
            .iter()
            .flat_map(|e| [(e.src == v).then_some((true, e.label)), (e.dst == v).then_some((false, e.label))])
            .flatten()
            .collect();
        d.sort();
        d
    };
    let da: Vec<_> = (0..n).map(|v| degree(a, v)).collect();
    let db: Vec<_> = (0..n).map(|v| degree(b, v)).collect();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn extend(
        v: usize,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        ok: &dyn Fn(usize, usize) -> bool,
        consistent: &dyn Fn(&[usize], usize) -> bool,
    ) -> bool {
        let n = map.len();
        if v == n {
            return true;
        }
        for w in 0..n {
            if used[w] || !ok(v, w) {
                continue;
            }
            map[v] = w;
            used[w] = true;
            if consistent(map, v) && extend(v + 1, map, used, ok, consistent) {
                return true;
            }
            used[w] = false;
            map[v] = usize::MAX;
        }
        false
    }
    let ok = |v: usize, w: usize| da[v] == db[w];
    let consistent = |map: &[usize], v: usize| {
        ca.iter().all(|(&(s, d, l), &c)| {
            if s > v || d > v || (s != v && d != v) {
                return true;
            }
            cb.get(&(map[s], map[d], l)) == Some(&c)
        })
    };
    extend(0, &mut map, &mut used, &ok, &consistent)
}
