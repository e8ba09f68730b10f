use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use super::word::{Alphabet, Sym, Word};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GraphEdge {
    pub src: usize,
    pub dst: usize,
    pub label: Sym,
}

/// Finite directed graph with edges labeled by alphabet symbols.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledGraph {
    alphabet: Alphabet,
    vertices: Vec<String>,
    edges: Vec<GraphEdge>,
}

impl LabeledGraph {
    pub fn new(alphabet: Alphabet, vertices: Vec<String>, edges: Vec<GraphEdge>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for v in &vertices {
            if !seen.insert(v.as_str()) {
                return Err(Error::invalid(format!("duplicate vertex {v:?}")));
            }
        }
        for e in &edges {
            if e.src >= vertices.len() || e.dst >= vertices.len() {
                return Err(Error::invalid("edge endpoint out of range"));
            }
            if e.label as usize >= alphabet.len() {
                return Err(Error::invalid("edge label out of range"));
            }
        }
        Ok(LabeledGraph { alphabet, vertices, edges })
    }

    /// Builds a graph from `(src, label, dst)` triples using names.
    pub fn from_triples(alphabet: Alphabet, vertices: &[&str], triples: &[(&str, &str, &str)]) -> Result<Self> {
        let vidx: HashMap<&str, usize> = vertices.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        let get = |v: &str| vidx.get(v).copied().ok_or_else(|| Error::invalid(format!("unknown vertex {v}")));
        let mut edges = Vec::new();
        for (s, l, t) in triples {
            let label = alphabet.index_of(l).ok_or_else(|| Error::invalid(format!("unknown label {l}")))?;
            edges.push(GraphEdge { src: get(s)?, dst: get(t)?, label });
        }
        LabeledGraph::new(alphabet, vertices.iter().map(|s| s.to_string()).collect(), edges)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[GraphEdge] {
        &self.edges
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    /// No two edges with the same target carry the same label.
    pub fn is_left_resolving(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.edges.iter().all(|e| seen.insert((e.dst, e.label)))
    }

    pub fn is_right_resolving(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.edges.iter().all(|e| seen.insert((e.src, e.label)))
    }

    /// Every vertex has an incoming and an outgoing edge.
    pub fn is_essential(&self) -> bool {
        let n = self.vertices.len();
        let mut has_in = vec![false; n];
        let mut has_out = vec![false; n];
        for e in &self.edges {
            has_out[e.src] = true;
            has_in[e.dst] = true;
        }
        n > 0 && (0..n).all(|v| has_in[v] && has_out[v])
    }

    /// Removes stranded vertices until the graph is essential.
    pub fn essential_part(&self) -> LabeledGraph {
        let n = self.vertices.len();
        let mut alive = vec![true; n];
        loop {
            let mut has_in = vec![false; n];
            let mut has_out = vec![false; n];
            for e in &self.edges {
                if alive[e.src] && alive[e.dst] {
                    has_out[e.src] = true;
                    has_in[e.dst] = true;
                }
            }
            let mut changed = false;
            for v in 0..n {
                if alive[v] && !(has_in[v] && has_out[v]) {
                    alive[v] = false;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        self.induced(&alive)
    }

    /// Subgraph on the vertices flagged in `keep`, preserving order.
    pub fn induced(&self, keep: &[bool]) -> LabeledGraph {
        let mut remap = vec![usize::MAX; self.vertices.len()];
        let mut vertices = Vec::new();
        for (v, name) in self.vertices.iter().enumerate() {
            if keep[v] {
                remap[v] = vertices.len();
                vertices.push(name.clone());
            }
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| keep[e.src] && keep[e.dst])
            .map(|e| GraphEdge { src: remap[e.src], dst: remap[e.dst], label: e.label })
            .collect();
        LabeledGraph { alphabet: self.alphabet.clone(), vertices, edges }
    }

    pub fn successors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for e in &self.edges {
            adj[e.src].push(e.dst);
        }
        adj
    }

    /// Strongly connected components in reverse topological order (Tarjan).
    pub fn strongly_connected_components(&self) -> Vec<Vec<usize>> {
        scc(&self.successors())
    }

    /// Strongly connected with at least one edge.
    pub fn is_irreducible(&self) -> bool {
        let comps = self.strongly_connected_components();
        comps.len() == 1 && !self.edges.is_empty()
    }

    /// Counts of edges between vertices.
    pub fn adjacency_counts(&self) -> Vec<Vec<u64>> {
        let n = self.vertices.len();
        let mut a = vec![vec![0u64; n]; n];
        for e in &self.edges {
            a[e.src][e.dst] += 1;
        }
        a
    }

    /// `reach[u][v]`: a path of length >= 0 leads from `u` to `v`.
    pub fn reachability(&self) -> Vec<Vec<bool>> {
        let adj = self.successors();
        let n = adj.len();
        (0..n)
            .map(|s| {
                let mut seen = vec![false; n];
                seen[s] = true;
                let mut q = VecDeque::from([s]);
                while let Some(u) = q.pop_front() {
                    for &v in &adj[u] {
                        if !seen[v] {
                            seen[v] = true;
                            q.push_back(v);
                        }
                    }
                }
                seen
            })
            .collect()
    }

    /// Vertices reached from `set` along an edge labeled `sym`.
    pub fn step_forward(&self, set: &[bool], sym: Sym) -> Vec<bool> {
        let mut out = vec![false; self.vertices.len()];
        for e in &self.edges {
            if e.label == sym && set[e.src] {
                out[e.dst] = true;
            }
        }
        out
    }

    /// Vertices with an edge labeled `sym` into `set`.
    pub fn step_backward(&self, set: &[bool], sym: Sym) -> Vec<bool> {
        let mut out = vec![false; self.vertices.len()];
        for e in &self.edges {
            if e.label == sym && set[e.dst] {
                out[e.src] = true;
            }
        }
        out
    }

    /// Terminal vertices of paths labeled `w` starting anywhere.
    pub fn terminal_set(&self, w: &[Sym]) -> Vec<bool> {
        let mut set = vec![true; self.vertices.len()];
        for &s in w {
            set = self.step_forward(&set, s);
        }
        set
    }

    /// Initial vertices of paths labeled `w`.
    pub fn initial_set(&self, w: &[Sym]) -> Vec<bool> {
        let mut set = vec![true; self.vertices.len()];
        for &s in w.iter().rev() {
            set = self.step_backward(&set, s);
        }
        set
    }

    pub fn labels_path(&self, w: &[Sym]) -> bool {
        self.terminal_set(w).iter().any(|&b| b)
    }

    /// Labels of paths of length `l` ending at each vertex.
    pub fn predecessor_words(&self, l: usize) -> Vec<BTreeSet<Word>> {
        let n = self.vertices.len();
        let mut cur: Vec<BTreeSet<Word>> = vec![BTreeSet::from([Word::empty()]); n];
        for _ in 0..l {
            let mut next = vec![BTreeSet::new(); n];
            for e in &self.edges {
                for w in &cur[e.src] {
                    next[e.dst].insert(w.concat(&[e.label]));
                }
            }
            cur = next;
        }
        cur
    }

    pub fn with_vertex_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.vertices.len() {
            return Err(Error::invalid("wrong number of vertex names"));
        }
        self.vertices = names;
        LabeledGraph::new(self.alphabet, self.vertices, self.edges)
    }

    pub fn to_doc(&self) -> GraphDoc {
        GraphDoc {
            alphabet: self.alphabet.names().to_vec(),
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeDoc {
                    src: self.vertices[e.src].clone(),
                    dst: self.vertices[e.dst].clone(),
                    label: self.alphabet.name(e.label).to_owned(),
                })
                .collect(),
        }
    }

    pub fn from_doc(doc: &GraphDoc) -> Result<Self> {
        let alphabet = Alphabet::new(doc.alphabet.iter().cloned())?;
        let vertices: Vec<&str> = doc.vertices.iter().map(String::as_str).collect();
        let triples: Vec<(&str, &str, &str)> =
            doc.edges.iter().map(|e| (e.src.as_str(), e.label.as_str(), e.dst.as_str())).collect();
        LabeledGraph::from_triples(alphabet, &vertices, &triples)
    }

    pub fn to_json(&self) -> Result<String> {
        crate::schema::to_tagged_json(&self.to_doc())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        LabeledGraph::from_doc(&serde_json::from_value(crate::schema::parse_tagged(text)?)?)
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph G {\n  rankdir=LR;\n");
        for v in &self.vertices {
            s.push_str(&format!("  \"{v}\";\n"));
        }
        for e in &self.edges {
            s.push_str(&format!(
                "  \"{}\" -> \"{}\" [label=\"{}\"];\n",
                self.vertices[e.src],
                self.vertices[e.dst],
                self.alphabet.name(e.label)
            ));
        }
        s.push_str("}\n");
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeDoc {
    pub src: String,
    pub dst: String,
    pub label: String,
}

/// JSON form of a [`LabeledGraph`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDoc {
    pub alphabet: Vec<String>,
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeDoc>,
}

pub(crate) fn scc(adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    struct St<'a> {
        adj: &'a [Vec<usize>],
        index: Vec<usize>,
        low: Vec<usize>,
        on: Vec<bool>,
        stack: Vec<usize>,
        next: usize,
        out: Vec<Vec<usize>>,
    }
    // iterative Tarjan
    let n = adj.len();
    let mut st = St {
        adj,
        index: vec![usize::MAX; n],
        low: vec![0; n],
        on: vec![false; n],
        stack: Vec::new(),
        next: 0,
        out: Vec::new(),
    };
    for root in 0..n {
        if st.index[root] != usize::MAX {
            continue;
        }
        let mut call: Vec<(usize, usize)> = vec![(root, 0)];
        st.index[root] = st.next;
        st.low[root] = st.next;
        st.next += 1;
        st.stack.push(root);
        st.on[root] = true;
        while let Some(&mut (v, ref mut i)) = call.last_mut() {
            if *i < st.adj[v].len() {
                let w = st.adj[v][*i];
                *i += 1;
                if st.index[w] == usize::MAX {
                    st.index[w] = st.next;
                    st.low[w] = st.next;
                    st.next += 1;
                    st.stack.push(w);
                    st.on[w] = true;
                    call.push((w, 0));
                } else if st.on[w] {
                    st.low[v] = st.low[v].min(st.index[w]);
                }
            } else {
                call.pop();
                if let Some(&(p, _)) = call.last() {
                    st.low[p] = st.low[p].min(st.low[v]);
                }
                if st.low[v] == st.index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = st.stack.pop().expect("tarjan stack");
                        st.on[w] = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    comp.sort_unstable();
                    st.out.push(comp);
                }
            }
        }
    }
    st.out
}
