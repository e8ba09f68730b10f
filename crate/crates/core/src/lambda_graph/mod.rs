//! Finite truncations of lambda-graph systems.

mod checks;
mod export;

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

pub use checks::{
    check_condition_i, check_iota_irreducible, check_lambda_condition_i, check_lambda_irreducible,
    presented_language_irreducible,
};
pub use export::{LevelDoc, LgEdgeDoc, LgsDoc};

use crate::error::{Error, Result};
use crate::limits;
use crate::subshift::{Alphabet, LabeledGraph, Sym, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LgEdge {
    pub src: usize,
    pub dst: usize,
    pub label: Sym,
}

/// Levels `0..=L` of a lambda-graph system: vertices `V_l`, edges
/// `E_{l,l+1}` from `V_l` to `V_{l+1}`, and maps `iota: V_{l+1} -> V_l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaGraphTruncation {
    alphabet: Alphabet,
    sizes: Vec<usize>,
    iota: Vec<Vec<usize>>,
    edges: Vec<Vec<LgEdge>>,
    annotations: Option<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub left_resolving: bool,
    pub predecessor_separated: bool,
    pub local_property: bool,
    pub essential: bool,
    pub iota_surjective: bool,
    pub failures: Vec<String>,
}

impl ValidationReport {
    pub fn all_ok(&self) -> bool {
        self.left_resolving
            && self.predecessor_separated
            && self.local_property
            && self.essential
            && self.iota_surjective
    }
}

/// Matrices `A_{l,l+1}(i, alpha, j)` (stored per symbol) and `I_{l,l+1}(i, j)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransitionMatrices {
    /// `a[l][alpha][i][j]`.
    pub a: Vec<Vec<Vec<Vec<u32>>>>,
    /// `i[l][i][j] = 1` iff `iota(v_j^{l+1}) = v_i^l`.
    pub i: Vec<Vec<Vec<u32>>>,
}

impl TransitionMatrices {
    /// `A_{l,l+n}(i, w, k)`: 1 iff a path labeled `w` runs from `v_i^l` to `v_k^{l+n}`.
    pub fn composite_a(&self, l: usize, w: &[Sym]) -> Result<Vec<Vec<u32>>> {
        if l + w.len() > self.a.len() {
            return Err(Error::DepthExceeded { requested: l + w.len(), certified: self.a.len() });
        }
        let n = self.i.get(l).map(Vec::len).unwrap_or(1);
        let mut m: Vec<Vec<u32>> = (0..n).map(|r| (0..n).map(|c| u32::from(r == c)).collect()).collect();
        for (k, &s) in w.iter().enumerate() {
            m = bool_product(&m, &self.a[l + k][s as usize]);
        }
        Ok(m)
    }

    /// `I_{l,l+n}` as the product of the one-step inclusion matrices.
    pub fn composite_i(&self, l: usize, n: usize) -> Result<Vec<Vec<u32>>> {
        if l + n > self.i.len() {
            return Err(Error::DepthExceeded { requested: l + n, certified: self.i.len() });
        }
        let size = if l < self.i.len() { self.i[l].len() } else { 1 };
        let mut m: Vec<Vec<u32>> = (0..size).map(|r| (0..size).map(|c| u32::from(r == c)).collect()).collect();
        for k in l..l + n {
            m = bool_product(&m, &self.i[k]);
        }
        Ok(m)
    }
}

fn bool_product(x: &[Vec<u32>], y: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let cols = y.first().map(Vec::len).unwrap_or(0);
    x.iter()
        .map(|row| (0..cols).map(|c| u32::from(row.iter().enumerate().any(|(k, &v)| v != 0 && y[k][c] != 0))).collect())
        .collect()
}

/// Words presented between two levels and whether that set is the full language.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentedWords {
    pub words: BTreeSet<Word>,
    pub start_level: usize,
    /// The truncation is a valid system, so the set does not depend on the level.
    pub exact: bool,
}

impl LambdaGraphTruncation {
    /// `sizes[l] = |V_l|`, `iota[l]` maps `V_l` to `V_{l-1}` (`iota[0]` empty),
    /// `edges[l]` lists `E_{l,l+1}`.
    pub fn new(
        alphabet: Alphabet,
        sizes: &[usize],
        iota: Vec<Vec<usize>>,
        mut edges: Vec<Vec<LgEdge>>,
    ) -> Result<Self> {
        if sizes.is_empty() || sizes[0] != 1 {
            return Err(Error::invalid("level 0 must have exactly one vertex"));
        }
        let depth = sizes.len() - 1;
        if iota.len() != sizes.len() || edges.len() != depth {
            return Err(Error::invalid("levels, iota and edge lists disagree in length"));
        }
        if !iota[0].is_empty() {
            return Err(Error::invalid("iota is not defined on level 0"));
        }
        for l in 1..=depth {
            if iota[l].len() != sizes[l] || iota[l].iter().any(|&p| p >= sizes[l - 1]) {
                return Err(Error::invalid(format!("iota at level {l} is malformed")));
            }
        }
        for (l, es) in edges.iter_mut().enumerate() {
            for e in es.iter() {
                if e.src >= sizes[l] || e.dst >= sizes[l + 1] || e.label as usize >= alphabet.len() {
                    return Err(Error::invalid(format!("edge out of range at level {l}")));
                }
            }
            es.sort_by_key(|e| (e.src, e.label, e.dst));
        }
        Ok(LambdaGraphTruncation { alphabet, sizes: sizes.to_vec(), iota, edges, annotations: None })
    }

    pub fn with_annotations(mut self, annotations: Vec<Vec<String>>) -> Result<Self> {
        if annotations.len() != self.sizes.len() || annotations.iter().zip(&self.sizes).any(|(a, &n)| a.len() != n) {
            return Err(Error::invalid("annotation shape does not match the levels"));
        }
        self.annotations = Some(annotations);
        Ok(self)
    }

    /// Stationary system of a graph: `V_0 = {v0}`, then one copy of the graph per level.
    pub fn from_graph(g: &LabeledGraph, depth: usize) -> Result<Self> {
        let n = g.num_vertices();
        let mut sizes = vec![1];
        let mut iota = vec![Vec::new()];
        let mut edges = Vec::new();
        for l in 0..depth {
            sizes.push(n);
            iota.push(if l == 0 { vec![0; n] } else { (0..n).collect() });
            edges.push(
                g.edges()
                    .iter()
                    .map(|e| LgEdge { src: if l == 0 { 0 } else { e.src }, dst: e.dst, label: e.label })
                    .collect(),
            );
        }
        let mut ann = vec![vec!["v0".to_string()]];
        ann.extend((0..depth).map(|_| g.vertices().to_vec()));
        LambdaGraphTruncation::new(g.alphabet().clone(), &sizes, iota, edges)?.with_annotations(ann)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// Deepest level `L`.
    pub fn depth(&self) -> usize {
        self.sizes.len() - 1
    }

    pub fn level_size(&self, l: usize) -> usize {
        self.sizes[l]
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    /// `iota(v_i^l)` in `V_{l-1}`.
    pub fn iota(&self, l: usize, i: usize) -> usize {
        self.iota[l][i]
    }

    pub fn iota_level(&self, l: usize) -> &[usize] {
        &self.iota[l]
    }

    /// `iota^n(v_i^l)`, in `V_{l-n}`.
    pub fn iota_pow(&self, l: usize, mut i: usize, n: usize) -> usize {
        for k in 0..n {
            i = self.iota[l - k][i];
        }
        i
    }

    pub fn edges(&self, l: usize) -> &[LgEdge] {
        &self.edges[l]
    }

    pub fn annotation(&self, l: usize, i: usize) -> Option<&str> {
        self.annotations.as_ref().map(|a| a[l][i].as_str())
    }

    pub fn annotations(&self) -> Option<&Vec<Vec<String>>> {
        self.annotations.as_ref()
    }

    pub fn vertex_id(l: usize, i: usize) -> String {
        format!("{l}:{i}")
    }

    pub fn num_edges(&self) -> Vec<usize> {
        self.edges.iter().map(Vec::len).collect()
    }

    /// Vertices of `V_{l+1}` reached from the flagged vertices of `V_l` by label `s`.
    pub fn step(&self, l: usize, set: &[bool], s: Sym) -> Vec<bool> {
        let mut out = vec![false; self.sizes[l + 1]];
        for e in &self.edges[l] {
            if e.label == s && set[e.src] {
                out[e.dst] = true;
            }
        }
        out
    }

    /// Vertices of `V_{l+1}` reached from the flagged vertices by any edge.
    pub fn step_any(&self, l: usize, set: &[bool]) -> Vec<bool> {
        let mut out = vec![false; self.sizes[l + 1]];
        for e in &self.edges[l] {
            if set[e.src] {
                out[e.dst] = true;
            }
        }
        out
    }

    /// `Gamma_l^-(v)` for every `v` in `V_l`.
    pub fn predecessors(&self, l: usize) -> Result<Vec<BTreeSet<Word>>> {
        if l > self.depth() {
            return Err(Error::DepthExceeded { requested: l, certified: self.depth() });
        }
        let mut cur = vec![BTreeSet::from([Word::empty()])];
        for k in 0..l {
            let mut next = vec![BTreeSet::new(); self.sizes[k + 1]];
            let mut total = 0usize;
            for e in &self.edges[k] {
                for w in &cur[e.src] {
                    if next[e.dst].insert(w.concat(&[e.label])) {
                        total += 1;
                    }
                }
            }
            limits::check(total)?;
            cur = next;
        }
        Ok(cur)
    }

    pub fn vertex_predecessors(&self, l: usize, i: usize) -> Result<BTreeSet<Word>> {
        if l > self.depth() || i >= self.sizes[l] {
            return Err(Error::invalid(format!("no vertex {l}:{i}")));
        }
        Ok(self.predecessors(l)?.swap_remove(i))
    }

    pub fn validate(&self) -> ValidationReport {
        let mut r = ValidationReport {
            left_resolving: true,
            predecessor_separated: true,
            local_property: true,
            essential: true,
            iota_surjective: true,
            failures: Vec::new(),
        };
        let depth = self.depth();
        for (l, es) in self.edges.iter().enumerate() {
            let mut seen = BTreeSet::new();
            for e in es {
                if !seen.insert((e.dst, e.label)) {
                    r.left_resolving = false;
                    r.failures.push(format!(
                        "two edges labeled {} end at {}",
                        self.alphabet.name(e.label),
                        Self::vertex_id(l + 1, e.dst)
                    ));
                }
            }
        }
        for l in 0..=depth {
            let mut has_in = vec![l == 0; self.sizes[l]];
            let mut has_out = vec![l == depth; self.sizes[l]];
            if l > 0 {
                for e in &self.edges[l - 1] {
                    has_in[e.dst] = true;
                }
            }
            if l < depth {
                for e in &self.edges[l] {
                    has_out[e.src] = true;
                }
            }
            for i in 0..self.sizes[l] {
                if !has_in[i] || !has_out[i] {
                    r.essential = false;
                    r.failures.push(format!("vertex {} is stranded", Self::vertex_id(l, i)));
                }
            }
            if l > 0 {
                let mut hit = vec![false; self.sizes[l - 1]];
                for &p in &self.iota[l] {
                    hit[p] = true;
                }
                if let Some(p) = hit.iter().position(|&h| !h) {
                    r.iota_surjective = false;
                    r.failures.push(format!("iota misses {}", Self::vertex_id(l - 1, p)));
                }
            }
        }
        for l in 1..depth {
            // #{e in E_{l,l+1}: label a, t(e)=v, iota(s(e))=u} = #{f in E_{l-1,l}: label a, s(f)=u, t(f)=iota(v)}
            let mut lhs: HashMap<(usize, Sym, usize), usize> = HashMap::new();
            for e in &self.edges[l] {
                *lhs.entry((self.iota[l][e.src], e.label, e.dst)).or_default() += 1;
            }
            let mut rhs: HashMap<(usize, Sym, usize), usize> = HashMap::new();
            for f in &self.edges[l - 1] {
                for (v, &p) in self.iota[l + 1].iter().enumerate() {
                    if p == f.dst {
                        *rhs.entry((f.src, f.label, v)).or_default() += 1;
                    }
                }
            }
            if lhs != rhs {
                r.local_property = false;
                let mut keys: Vec<_> = lhs.keys().chain(rhs.keys()).copied().collect();
                keys.sort();
                if let Some(&(u, a, v)) = keys.iter().find(|k| lhs.get(k) != rhs.get(k)) {
                    r.failures.push(format!(
                        "local property fails at level {l}: {} -> {} with label {}",
                        Self::vertex_id(l - 1, u),
                        Self::vertex_id(l + 1, v),
                        self.alphabet.name(a)
                    ));
                }
            }
        }
        match self.predecessor_classes() {
            Ok(dupes) => {
                for (l, i, j) in dupes {
                    r.predecessor_separated = false;
                    r.failures.push(format!(
                        "{} and {} have equal predecessor sets",
                        Self::vertex_id(l, i),
                        Self::vertex_id(l, j)
                    ));
                }
            }
            Err(e) => {
                r.predecessor_separated = false;
                r.failures.push(format!("predecessor sets not computed: {e}"));
            }
        }
        r
    }

    // pairs of vertices with equal predecessor sets, computed by refinement:
    // two vertices have equal sets iff they get equal class signatures
    fn predecessor_classes(&self) -> Result<Vec<(usize, usize, usize)>> {
        let mut out = Vec::new();
        for l in 0..=self.depth() {
            let preds = self.predecessors(l)?;
            let mut first: BTreeMap<&BTreeSet<Word>, usize> = BTreeMap::new();
            for (i, p) in preds.iter().enumerate() {
                if let Some(&j) = first.get(p) {
                    out.push((l, j, i));
                } else {
                    first.insert(p, i);
                }
            }
        }
        Ok(out)
    }

    pub fn transition_matrices(&self) -> TransitionMatrices {
        let k = self.alphabet.len();
        let mut a = Vec::with_capacity(self.depth());
        let mut im = Vec::with_capacity(self.depth());
        for l in 0..self.depth() {
            let mut m = vec![vec![vec![0u32; self.sizes[l + 1]]; self.sizes[l]]; k];
            for e in &self.edges[l] {
                m[e.label as usize][e.src][e.dst] += 1;
            }
            a.push(m);
            let mut inc = vec![vec![0u32; self.sizes[l + 1]]; self.sizes[l]];
            for (j, &p) in self.iota[l + 1].iter().enumerate() {
                inc[p][j] = 1;
            }
            im.push(inc);
        }
        TransitionMatrices { a, i: im }
    }

    /// Labels of paths of length `l` leaving level `L - l - margin`.
    pub fn presented_words(&self, l: usize, margin: usize) -> Result<PresentedWords> {
        let depth = self.depth();
        if l + margin > depth {
            return Err(Error::DepthExceeded { requested: l + margin, certified: depth });
        }
        let start = depth - l - margin;
        let mut layer: Vec<(Word, Vec<bool>)> = vec![(Word::empty(), vec![true; self.sizes[start]])];
        for k in 0..l {
            let mut next = Vec::new();
            for (w, set) in &layer {
                for s in self.alphabet.symbols() {
                    let t = self.step(start + k, set, s);
                    if t.iter().any(|&b| b) {
                        next.push((w.concat(&[s]), t));
                    }
                }
            }
            limits::check(next.len())?;
            layer = next;
        }
        let v = self.validate();
        Ok(PresentedWords {
            words: layer.into_iter().map(|(w, _)| w).collect(),
            start_level: start,
            exact: v.local_property && v.iota_surjective && v.essential,
        })
    }

    /// Reorders the vertices of each level by their sorted predecessor sets.
    pub fn canonicalize(&self) -> Result<Self> {
        let mut perms: Vec<Vec<usize>> = Vec::new();
        for l in 0..=self.depth() {
            let preds = self.predecessors(l)?;
            let mut order: Vec<usize> = (0..self.sizes[l]).collect();
            order.sort_by(|&x, &y| preds[x].iter().cmp(preds[y].iter()).then(x.cmp(&y)));
            perms.push(order);
        }
        Ok(self.permuted(&perms))
    }

    /// `perms[l][new] = old`.
    pub fn permuted(&self, perms: &[Vec<usize>]) -> Self {
        let inv: Vec<Vec<usize>> = perms
            .iter()
            .map(|p| {
                let mut v = vec![0; p.len()];
                for (new, &old) in p.iter().enumerate() {
                    v[old] = new;
                }
                v
            })
            .collect();
        let iota =
            (0..self.sizes.len())
                .map(|l| {
                    if l == 0 {
                        Vec::new()
                    } else {
                        perms[l].iter().map(|&old| inv[l - 1][self.iota[l][old]]).collect()
                    }
                })
                .collect();
        let mut edges: Vec<Vec<LgEdge>> = self
            .edges
            .iter()
            .enumerate()
            .map(|(l, es)| {
                es.iter().map(|e| LgEdge { src: inv[l][e.src], dst: inv[l + 1][e.dst], label: e.label }).collect()
            })
            .collect();
        for es in &mut edges {
            es.sort_by_key(|e| (e.src, e.label, e.dst));
        }
        let annotations = self
            .annotations
            .as_ref()
            .map(|a| perms.iter().enumerate().map(|(l, p)| p.iter().map(|&o| a[l][o].clone()).collect()).collect());
        LambdaGraphTruncation { alphabet: self.alphabet.clone(), sizes: self.sizes.clone(), iota, edges, annotations }
    }

    /// Levels `0..=depth` of this truncation.
    pub fn truncate(&self, depth: usize) -> Result<Self> {
        if depth > self.depth() {
            return Err(Error::DepthExceeded { requested: depth, certified: self.depth() });
        }
        Ok(LambdaGraphTruncation {
            alphabet: self.alphabet.clone(),
            sizes: self.sizes[..=depth].to_vec(),
            iota: self.iota[..=depth].to_vec(),
            edges: self.edges[..depth].to_vec(),
            annotations: self.annotations.as_ref().map(|a| a[..=depth].to_vec()),
        })
    }

    /// First level `K <= L - 2` from which every level repeats the previous one,
    /// with the graph that repeats.
    pub fn stationary_tail(&self) -> Option<(usize, LabeledGraph)> {
        let depth = self.depth();
        let bij = |l: usize| {
            // iota from V_{l+1} onto V_l is a bijection
            self.sizes[l + 1] == self.sizes[l] && {
                let mut hit = vec![false; self.sizes[l]];
                self.iota[l + 1].iter().all(|&p| !std::mem::replace(&mut hit[p], true))
            }
        };
        let same = |l: usize| {
            // E_{l+1,l+2} pulled back along iota equals E_{l,l+1}
            let mut back: Vec<(usize, Sym, usize)> =
                self.edges[l + 1].iter().map(|e| (self.iota[l + 1][e.src], e.label, self.iota[l + 2][e.dst])).collect();
            let mut here: Vec<(usize, Sym, usize)> = self.edges[l].iter().map(|e| (e.src, e.label, e.dst)).collect();
            back.sort();
            here.sort();
            back == here
        };
        if depth < 2 {
            return None;
        }
        let mut k = depth - 1;
        if !bij(k) {
            return None;
        }
        while k >= 1 && bij(k - 1) && same(k - 1) {
            k -= 1;
        }
        if k + 2 > depth || !(k..depth - 1).all(same) {
            return None;
        }
        // graph on V_k with edges (s, a, iota(t))
        let names = (0..self.sizes[k]).map(|i| Self::vertex_id(k, i)).collect();
        let edges = self.edges[k]
            .iter()
            .map(|e| crate::subshift::GraphEdge { src: e.src, dst: self.iota[k + 1][e.dst], label: e.label })
            .collect();
        LabeledGraph::new(self.alphabet.clone(), names, edges).ok().map(|g| (k, g))
    }
}

/// Isomorphism of two predecessor-separated truncations on levels `from..=L`,
/// matching vertices by predecessor sets at `from` and by in-edges below.
pub fn isomorphic_from_level(a: &LambdaGraphTruncation, b: &LambdaGraphTruncation, from: usize) -> Result<bool> {
    if a.alphabet.names() != b.alphabet.names() || a.depth() != b.depth() || a.sizes != b.sizes {
        return Ok(false);
    }
    if from > a.depth() {
        return Err(Error::DepthExceeded { requested: from, certified: a.depth() });
    }
    let pa = a.predecessors(from)?;
    let pb = b.predecessors(from)?;
    let index_b: HashMap<&BTreeSet<Word>, usize> = pb.iter().enumerate().map(|(i, p)| (p, i)).collect();
    if index_b.len() != pb.len() {
        return Err(Error::Unsupported("isomorphism test needs predecessor-separated systems".into()));
    }
    let mut map: Vec<usize> = Vec::with_capacity(pa.len());
    for p in &pa {
        match index_b.get(p) {
            Some(&j) => map.push(j),
            None => return Ok(false),
        }
    }
    for l in from..a.depth() {
        let sig = |g: &LambdaGraphTruncation, m: Option<&[usize]>| -> Vec<(usize, Vec<(Sym, usize)>)> {
            let f = |x: usize| m.map_or(x, |m| m[x]);
            let mut ins: Vec<Vec<(Sym, usize)>> = vec![Vec::new(); g.sizes[l + 1]];
            for e in &g.edges[l] {
                ins[e.dst].push((e.label, f(e.src)));
            }
            ins.iter_mut().for_each(|v| v.sort());
            (0..g.sizes[l + 1]).map(|w| (f(g.iota[l + 1][w]), std::mem::take(&mut ins[w]))).collect()
        };
        let sa = sig(a, Some(&map));
        let sb = sig(b, None);
        let mut index: HashMap<&(usize, Vec<(Sym, usize)>), usize> = HashMap::new();
        for (j, s) in sb.iter().enumerate() {
            if index.insert(s, j).is_some() {
                return Err(Error::Unsupported("isomorphism test needs predecessor-separated systems".into()));
            }
        }
        let mut next = Vec::with_capacity(sa.len());
        let mut used = vec![false; sb.len()];
        for s in &sa {
            match index.get(s) {
                Some(&j) if !used[j] => {
                    used[j] = true;
                    next.push(j);
                }
                _ => return Ok(false),
            }
        }
        map = next;
    }
    Ok(true)
}
