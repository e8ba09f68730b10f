//! Subshifts given by a finite description of their language.

mod catalog;
pub(crate) mod graph;
mod json;
mod word;

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

pub use catalog::*;
pub use graph::{EdgeDoc, GraphDoc, GraphEdge, LabeledGraph};
pub use json::{BackendDoc, SpecDoc};
pub use word::{all_words, shortlex, Alphabet, Sym, Word};

use crate::builders::beta::{Beta, DigitSeq};
use crate::builders::monoid::{MonoidKind, Reduced};
use crate::error::{Error, Result};
use crate::limits;
use crate::verdict::{CheckReport, Verdict};

type Pred = dyn Fn(&[Sym]) -> bool + Send + Sync;

/// Membership predicate trusted for words up to `depth`.
#[derive(Clone)]
pub struct OracleLanguage {
    pred: Arc<Pred>,
    depth: usize,
    description: String,
}

impl OracleLanguage {
    pub fn new<F>(depth: usize, description: impl Into<String>, pred: F) -> Self
    where
        F: Fn(&[Sym]) -> bool + Send + Sync + 'static,
    {
        OracleLanguage { pred: Arc::new(pred), depth, description: description.into() }
    }

    pub fn depth(&self) -> usize {
        self.depth
    }
}

impl fmt::Debug for OracleLanguage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Oracle({}, depth {})", self.description, self.depth)
    }
}

#[derive(Clone, Debug)]
pub struct BetaShift {
    pub beta: Beta,
    pub zeta: DigitSeq,
}

#[derive(Clone, Debug)]
pub enum Backend {
    /// Forbidden words together with the de Bruijn presentation they induce.
    Forbidden {
        words: Vec<Word>,
        graph: LabeledGraph,
    },
    Sofic(LabeledGraph),
    Dyck(MonoidKind),
    MarkovDyck {
        matrix: Vec<Vec<u8>>,
        monoid: MonoidKind,
    },
    Motzkin(MonoidKind),
    Beta(Arc<BetaShift>),
    HigherBlock {
        base: Box<SubshiftSpec>,
        block: usize,
        blocks: Vec<Word>,
    },
    Oracle(OracleLanguage),
}

/// A subshift: alphabet plus a membership backend for its language.
#[derive(Clone, Debug)]
pub struct SubshiftSpec {
    alphabet: Alphabet,
    backend: Backend,
}

enum Cursor {
    Set(Vec<bool>),
    Monoid(Reduced),
    Plain,
}

impl SubshiftSpec {
    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn backend(&self) -> &Backend {
        &self.backend
    }

    pub fn sofic(graph: LabeledGraph) -> Result<Self> {
        let g = graph.essential_part();
        if g.num_vertices() == 0 {
            return Err(Error::invalid("graph presents the empty subshift"));
        }
        Ok(SubshiftSpec { alphabet: g.alphabet().clone(), backend: Backend::Sofic(g) })
    }

    pub fn forbidden(alphabet: Alphabet, words: Vec<Word>) -> Result<Self> {
        for w in &words {
            alphabet.check_word(w)?;
            if w.is_empty() {
                return Err(Error::invalid("the empty word cannot be forbidden"));
            }
        }
        let graph = de_bruijn(&alphabet, &words)?.essential_part();
        if graph.num_vertices() == 0 {
            return Err(Error::invalid("forbidden words leave the empty subshift"));
        }
        Ok(SubshiftSpec { alphabet, backend: Backend::Forbidden { words, graph } })
    }

    pub fn full_shift_named(alphabet: Alphabet) -> Self {
        SubshiftSpec::forbidden(alphabet, Vec::new()).expect("full shift")
    }

    /// Vertex shift of a 0-1 matrix with symbols named `1..=n` unless names are given.
    pub fn from_transition_matrix(a: &[Vec<u64>], names: Option<Vec<String>>) -> Result<Self> {
        let n = a.len();
        if n == 0 || a.iter().any(|r| r.len() != n) {
            return Err(Error::BadMatrix("matrix must be square and nonempty".into()));
        }
        let names = names.unwrap_or_else(|| (1..=n).map(|i| i.to_string()).collect());
        let alphabet = Alphabet::new(names)?;
        let mut forbidden = Vec::new();
        for (i, row) in a.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                if x == 0 {
                    forbidden.push(Word(vec![i as Sym, j as Sym]));
                } else if x > 1 {
                    return Err(Error::BadMatrix("vertex shift needs a 0-1 matrix".into()));
                }
            }
        }
        SubshiftSpec::forbidden(alphabet, forbidden)
    }

    pub fn dyck(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::invalid("Dyck shift needs at least two bracket types"));
        }
        let m = MonoidKind::dyck(n);
        Ok(SubshiftSpec { alphabet: Alphabet::new(m.symbol_names())?, backend: Backend::Dyck(m) })
    }

    pub fn motzkin(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::invalid("Motzkin shift needs at least two bracket types"));
        }
        let m = MonoidKind::motzkin(n);
        Ok(SubshiftSpec { alphabet: Alphabet::new(m.symbol_names())?, backend: Backend::Motzkin(m) })
    }

    pub fn markov_dyck(matrix: Vec<Vec<u8>>) -> Result<Self> {
        check_markov_matrix(&matrix)?;
        let m = MonoidKind::markov(&matrix)?;
        Ok(SubshiftSpec {
            alphabet: Alphabet::new(m.symbol_names())?,
            backend: Backend::MarkovDyck { matrix, monoid: m },
        })
    }

    pub fn beta_shift(beta: Beta) -> Result<Self> {
        let zeta = beta.default_zeta()?;
        let n = beta.digit_count();
        Ok(SubshiftSpec { alphabet: Alphabet::numbered(n), backend: Backend::Beta(Arc::new(BetaShift { beta, zeta })) })
    }

    pub fn oracle(alphabet: Alphabet, oracle: OracleLanguage) -> Self {
        SubshiftSpec { alphabet, backend: Backend::Oracle(oracle) }
    }

    /// Finite presentation, when the backend has one.
    pub fn presentation(&self) -> Option<&LabeledGraph> {
        match &self.backend {
            Backend::Forbidden { graph, .. } => Some(graph),
            Backend::Sofic(g) => Some(g),
            _ => None,
        }
    }

    pub fn monoid(&self) -> Option<&MonoidKind> {
        match &self.backend {
            Backend::Dyck(m) | Backend::Motzkin(m) | Backend::MarkovDyck { monoid: m, .. } => Some(m),
            _ => None,
        }
    }

    /// Longest word length the backend answers for; `None` when unlimited.
    pub fn certified_depth(&self) -> Option<usize> {
        match &self.backend {
            Backend::Oracle(o) => Some(o.depth),
            Backend::Beta(b) => match b.zeta.known_len() {
                usize::MAX => None,
                k => Some(k),
            },
            Backend::HigherBlock { base, block, .. } => base.certified_depth().map(|d| (d + 1).saturating_sub(*block)),
            _ => None,
        }
    }

    fn check_depth(&self, n: usize) -> Result<()> {
        match self.certified_depth() {
            Some(d) if n > d => Err(Error::DepthExceeded { requested: n, certified: d }),
            _ => Ok(()),
        }
    }

    pub fn is_admissible(&self, w: &[Sym]) -> Result<bool> {
        self.alphabet.check_word(w)?;
        self.check_depth(w.len())?;
        Ok(match &self.backend {
            Backend::Forbidden { graph, .. } | Backend::Sofic(graph) => graph.labels_path(w),
            Backend::Dyck(m) | Backend::Motzkin(m) | Backend::MarkovDyck { monoid: m, .. } => !m.reduce(w).is_zero(),
            Backend::Beta(b) => parry_admissible(&b.zeta, w)?,
            Backend::HigherBlock { base, blocks, .. } => match deblock(blocks, w) {
                Some(x) => base.is_admissible(&x)?,
                None => false,
            },
            Backend::Oracle(o) => (o.pred)(w),
        })
    }

    fn start(&self) -> Cursor {
        match &self.backend {
            Backend::Forbidden { graph, .. } | Backend::Sofic(graph) => Cursor::Set(vec![true; graph.num_vertices()]),
            Backend::Dyck(m) | Backend::Motzkin(m) | Backend::MarkovDyck { monoid: m, .. } => {
                Cursor::Monoid(m.identity())
            }
            _ => Cursor::Plain,
        }
    }

    // cursor after appending `s` to `w` (whose cursor is `c`), if still admissible
    fn step(&self, c: &Cursor, w: &[Sym], s: Sym) -> Result<Option<Cursor>> {
        Ok(match c {
            Cursor::Set(set) => {
                let g = self.presentation().expect("set cursor has a graph");
                let next = g.step_forward(set, s);
                next.iter().any(|&b| b).then_some(Cursor::Set(next))
            }
            Cursor::Monoid(r) => {
                let r = self.monoid().expect("monoid cursor").push(r.clone(), s);
                (!r.is_zero()).then_some(Cursor::Monoid(r))
            }
            Cursor::Plain => {
                let mut x = w.to_vec();
                x.push(s);
                self.is_admissible(&x)?.then_some(Cursor::Plain)
            }
        })
    }

    /// `B_l`, in lexicographic order.
    pub fn admissible_words(&self, l: usize) -> Result<Vec<Word>> {
        self.check_depth(l)?;
        let mut layer: Vec<(Word, Cursor)> = vec![(Word::empty(), self.start())];
        for _ in 0..l {
            let mut next = Vec::new();
            for (w, c) in &layer {
                for s in self.alphabet.symbols() {
                    if let Some(c2) = self.step(c, w, s)? {
                        next.push((w.concat(&[s]), c2));
                    }
                }
                limits::check(next.len())?;
            }
            layer = next;
        }
        Ok(layer.into_iter().map(|(w, _)| w).collect())
    }

    fn require_admissible(&self, mu: &[Sym]) -> Result<()> {
        if self.is_admissible(mu)? {
            Ok(())
        } else {
            Err(Error::InadmissibleWord(self.alphabet.format_word(mu)))
        }
    }

    /// `Gamma_l^-(mu)`.
    pub fn predecessor_set(&self, mu: &[Sym], l: usize) -> Result<BTreeSet<Word>> {
        self.require_admissible(mu)?;
        self.check_depth(l + mu.len())?;
        if let Some(g) = self.presentation() {
            let start = g.initial_set(mu);
            let mut layer = vec![(Vec::<Sym>::new(), start)];
            for _ in 0..l {
                let mut next = Vec::new();
                for (w, set) in &layer {
                    for s in self.alphabet.symbols() {
                        let prev = g.step_backward(set, s);
                        if prev.iter().any(|&b| b) {
                            let mut v = Vec::with_capacity(w.len() + 1);
                            v.push(s);
                            v.extend_from_slice(w);
                            next.push((v, prev));
                        }
                    }
                }
                limits::check(next.len())?;
                layer = next;
            }
            return Ok(layer.into_iter().map(|(w, _)| Word(w)).collect());
        }
        let mut layer: Vec<Vec<Sym>> = vec![Vec::new()];
        for _ in 0..l {
            let mut next = Vec::new();
            for w in &layer {
                for s in self.alphabet.symbols() {
                    let mut v = Vec::with_capacity(w.len() + 1 + mu.len());
                    v.push(s);
                    v.extend_from_slice(w);
                    v.extend_from_slice(mu);
                    if self.is_admissible(&v)? {
                        v.truncate(w.len() + 1);
                        next.push(v);
                    }
                }
            }
            limits::check(next.len())?;
            layer = next;
        }
        Ok(layer.into_iter().map(Word).collect())
    }

    /// `Gamma_l^+(mu)`.
    pub fn follower_set(&self, mu: &[Sym], l: usize) -> Result<BTreeSet<Word>> {
        self.require_admissible(mu)?;
        self.check_depth(l + mu.len())?;
        let mut c = self.start();
        for (i, &s) in mu.iter().enumerate() {
            c = self.step(&c, &mu[..i], s)?.expect("admissible prefix");
        }
        let mut layer: Vec<(Vec<Sym>, Cursor)> = vec![(mu.to_vec(), c)];
        for _ in 0..l {
            let mut next = Vec::new();
            for (w, c) in &layer {
                for s in self.alphabet.symbols() {
                    if let Some(c2) = self.step(c, w, s)? {
                        let mut v = w.clone();
                        v.push(s);
                        next.push((v, c2));
                    }
                }
            }
            limits::check(next.len())?;
            layer = next;
        }
        Ok(layer.into_iter().map(|(w, _)| Word(w[mu.len()..].to_vec())).collect())
    }

    /// Decides whether every pair of words can be bridged. Exact for finite
    /// presentations; Dyck-type and beta shifts get constructed bridges for all
    /// pairs of length `depth`; other backends are searched up to `2 * depth`.
    pub fn is_irreducible(&self, depth: usize) -> Result<CheckReport> {
        if let Some(g) = self.presentation() {
            return Ok(sofic_irreducible(g));
        }
        match &self.backend {
            Backend::HigherBlock { base, block, .. } => base.is_irreducible(depth + block - 1),
            Backend::Dyck(m) | Backend::Motzkin(m) | Backend::MarkovDyck { monoid: m, .. } => {
                let words = self.admissible_words(depth)?;
                let mut forms: HashMap<Reduced, Word> = HashMap::new();
                for w in words {
                    forms.entry(m.reduce(&w)).or_insert(w);
                }
                let mut reps: Vec<&Word> = forms.values().collect();
                reps.sort();
                for mu in &reps {
                    for nu in &reps {
                        if m.bridge(mu, nu).is_none() {
                            return Ok(CheckReport::unknown(depth).with_note("no bridge constructed").with_witness(
                                format!("{} | {}", self.alphabet.format_word(mu), self.alphabet.format_word(nu)),
                            ));
                        }
                    }
                }
                Ok(CheckReport::yes(depth).with_note("bridges constructed from monoid normal forms"))
            }
            Backend::Beta(_) => {
                let words = self.admissible_words(depth)?;
                let bound = 2 * depth + 2;
                for mu in &words {
                    for nu in &words {
                        let found = (0..=bound).find(|&k| {
                            let mut w = mu.0.clone();
                            w.extend(std::iter::repeat_n(0, k));
                            w.extend_from_slice(nu);
                            self.is_admissible(&w).unwrap_or(false)
                        });
                        if found.is_none() {
                            return Ok(CheckReport::unknown(depth).with_witness(format!(
                                "{} | {}",
                                self.alphabet.format_word(mu),
                                self.alphabet.format_word(nu)
                            )));
                        }
                    }
                }
                Ok(CheckReport::yes(depth).with_note("zero runs bridge every pair"))
            }
            _ => self.bounded_irreducible(depth, 2 * depth),
        }
    }

    fn bounded_irreducible(&self, depth: usize, bridge_bound: usize) -> Result<CheckReport> {
        let words = self.admissible_words(depth)?;
        let limit = self.certified_depth().unwrap_or(usize::MAX);
        for mu in &words {
            for nu in &words {
                let mut found = false;
                'len: for k in 0..=bridge_bound {
                    if 2 * depth + k > limit {
                        break;
                    }
                    for eta in self.follower_set(mu, k)? {
                        let mut w = mu.concat(&eta);
                        w.0.extend_from_slice(nu);
                        if self.is_admissible(&w)? {
                            found = true;
                            break 'len;
                        }
                    }
                }
                if !found {
                    return Ok(CheckReport::unknown(depth).with_witness(format!(
                        "{} | {}",
                        self.alphabet.format_word(mu),
                        self.alphabet.format_word(nu)
                    )));
                }
            }
        }
        Ok(CheckReport::unknown(depth).with_note(format!("all pairs bridged within length {bridge_bound}")))
    }

    /// The `block`-th higher block presentation.
    pub fn higher_block(&self, block: usize) -> Result<SubshiftSpec> {
        if block == 0 {
            return Err(Error::invalid("block length must be positive"));
        }
        let blocks = self.admissible_words(block)?;
        let single = self.alphabet.names().iter().all(|n| n.chars().count() == 1);
        let names: Vec<String> = blocks
            .iter()
            .map(|b| {
                let parts = self.alphabet.word_names(b);
                if single {
                    parts.concat()
                } else {
                    parts.join("|")
                }
            })
            .collect();
        Ok(SubshiftSpec {
            alphabet: Alphabet::new(names)?,
            backend: Backend::HigherBlock { base: Box::new(self.clone()), block, blocks },
        })
    }

    /// Number of admissible words of each length `0..=n`.
    pub fn word_counts(&self, n: usize) -> Result<Vec<usize>> {
        (0..=n).map(|l| self.admissible_words(l).map(|w| w.len())).collect()
    }

    /// `Yes` when word counts stop growing by `depth` (the shift is finite).
    pub fn is_finite(&self, depth: usize) -> Result<Verdict> {
        let counts = self.word_counts(depth)?;
        if counts.windows(2).skip(1).any(|w| w[0] == w[1]) {
            return Ok(Verdict::Yes);
        }
        if self.presentation().is_some() {
            let e = crate::invariants::entropy::entropy(self)?;
            if e.lower > 0.0 {
                return Ok(Verdict::No);
            }
        }
        if matches!(
            self.backend,
            Backend::Dyck(_) | Backend::Motzkin(_) | Backend::Beta(_) | Backend::MarkovDyck { .. }
        ) {
            return Ok(Verdict::No);
        }
        Ok(Verdict::UnknownUpTo(depth))
    }
}

impl CheckReport {
    pub(crate) fn with_witness(mut self, w: impl Into<String>) -> Self {
        self.witness = Some(w.into());
        self
    }
}

pub(crate) fn check_markov_matrix(a: &[Vec<u8>]) -> Result<()> {
    let n = a.len();
    if n == 0 || a.iter().any(|r| r.len() != n) {
        return Err(Error::BadMatrix("matrix must be square and nonempty".into()));
    }
    if a.iter().flatten().any(|&x| x > 1) {
        return Err(Error::BadMatrix("entries must be 0 or 1".into()));
    }
    let adj: Vec<Vec<usize>> = a.iter().map(|r| (0..n).filter(|&j| r[j] == 1).collect()).collect();
    if graph::scc(&adj).len() != 1 || adj.iter().all(Vec::is_empty) {
        return Err(Error::BadMatrix("matrix must be irreducible".into()));
    }
    if a.iter().all(|r| r.iter().filter(|&&x| x == 1).count() == 1) {
        return Err(Error::BadMatrix("permutation matrices fail condition (I)".into()));
    }
    Ok(())
}

fn parry_admissible(zeta: &DigitSeq, w: &[Sym]) -> Result<bool> {
    for i in 0..w.len() {
        for (k, &x) in w[i..].iter().enumerate() {
            let z = zeta.get(k).ok_or(Error::DepthExceeded { requested: w.len(), certified: zeta.known_len() })?;
            if x < z {
                break;
            }
            if x > z {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn deblock(blocks: &[Word], w: &[Sym]) -> Option<Vec<Sym>> {
    let mut out: Vec<Sym> = Vec::new();
    for (i, &s) in w.iter().enumerate() {
        let b = blocks.get(s as usize)?;
        if i == 0 {
            out.extend_from_slice(b);
        } else {
            let prev = &blocks[w[i - 1] as usize];
            if prev[1..] != b[..b.len() - 1] {
                return None;
            }
            out.push(*b.last()?);
        }
    }
    Some(out)
}

fn contains_forbidden(w: &[Sym], forbidden: &[Word]) -> bool {
    forbidden.iter().any(|f| f.len() <= w.len() && w.windows(f.len()).any(|x| x == &f[..]))
}

// vertices: allowed words of length m-1; edge u -> (us)[1..] labeled s
fn de_bruijn(alphabet: &Alphabet, forbidden: &[Word]) -> Result<LabeledGraph> {
    let m = forbidden.iter().map(|w| w.len()).max().unwrap_or(1);
    let k = m.saturating_sub(1);
    let mut verts: Vec<Word> = Vec::new();
    let mut layer = vec![Word::empty()];
    for _ in 0..k {
        let mut next = Vec::new();
        for w in &layer {
            for s in alphabet.symbols() {
                let v = w.concat(&[s]);
                if !contains_forbidden(&v, forbidden) {
                    next.push(v);
                }
            }
        }
        limits::check(next.len())?;
        layer = next;
    }
    verts.extend(layer);
    let index: HashMap<&Word, usize> = verts.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let mut edges = Vec::new();
    for (i, u) in verts.iter().enumerate() {
        for s in alphabet.symbols() {
            let us = u.concat(&[s]);
            if contains_forbidden(&us, forbidden) {
                continue;
            }
            let t = Word(us[1.min(us.len())..].to_vec());
            let t = if k == 0 { Word::empty() } else { t };
            if let Some(&j) = index.get(&t) {
                edges.push(GraphEdge { src: i, dst: j, label: s });
            }
        }
    }
    let names = verts
        .iter()
        .map(
            |v| if v.is_empty() { "e".to_string() } else { format!("[{}]", alphabet.format_word(v).replace(' ', ",")) },
        )
        .collect();
    LabeledGraph::new(alphabet.clone(), names, edges)
}

// nonempty terminal sets (forward) and initial sets (backward) with a word each
fn subset_closure(g: &LabeledGraph, forward: bool) -> Vec<(Vec<bool>, Vec<Sym>)> {
    let full = vec![true; g.num_vertices()];
    let mut seen: HashMap<Vec<bool>, Vec<Sym>> = HashMap::new();
    seen.insert(full.clone(), Vec::new());
    let mut queue = VecDeque::from([full]);
    while let Some(s) = queue.pop_front() {
        let w = seen[&s].clone();
        for a in g.alphabet().symbols() {
            let t = if forward { g.step_forward(&s, a) } else { g.step_backward(&s, a) };
            if t.iter().any(|&b| b) && !seen.contains_key(&t) {
                let mut w2 = w.clone();
                if forward {
                    w2.push(a);
                } else {
                    w2.insert(0, a);
                }
                seen.insert(t.clone(), w2);
                queue.push_back(t);
            }
        }
    }
    let mut out: Vec<_> = seen.into_iter().collect();
    out.sort_by(|a, b| shortlex(&a.1, &b.1));
    out
}

fn sofic_irreducible(g: &LabeledGraph) -> CheckReport {
    let reach = g.reachability();
    let ts = subset_closure(g, true);
    let is = subset_closure(g, false);
    for (t, mu) in &ts {
        for (i, nu) in &is {
            let ok = (0..t.len()).any(|a| t[a] && (0..i.len()).any(|b| i[b] && reach[a][b]));
            if !ok {
                let f = |w: &[Sym]| g.alphabet().format_word(w);
                return CheckReport::refuted(0, format!("{} | {}", f(mu), f(nu)))
                    .with_note("no bridge exists in the presentation");
            }
        }
    }
    CheckReport::yes(usize::MAX).with_note("decided on the finite presentation")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_mean_words() {
        let s = golden_mean();
        assert_eq!(s.admissible_words(3).unwrap().len(), 5);
        assert!(!s.is_admissible(&[1, 1]).unwrap());
        assert_eq!(s.word_counts(5).unwrap(), vec![1, 2, 3, 5, 8, 13]);
    }

    #[test]
    fn forbidden_words_drop_dead_ends() {
        // "0" can never be followed, so it is not in the language
        let s = SubshiftSpec::forbidden(Alphabet::numbered(2), vec![Word(vec![0, 0]), Word(vec![0, 1])]).unwrap();
        assert!(!s.is_admissible(&[0]).unwrap());
        assert_eq!(s.admissible_words(3).unwrap(), vec![Word(vec![1, 1, 1])]);
    }

    #[test]
    fn even_shift_predecessors() {
        let s = even_shift();
        let p = s.predecessor_set(&[1], 2).unwrap();
        let expect: BTreeSet<Word> = [vec![0, 0], vec![0, 1], vec![1, 1]].into_iter().map(Word).collect();
        assert_eq!(p, expect);
        let f = s.follower_set(&[1, 0], 1).unwrap();
        assert_eq!(f, BTreeSet::from([Word(vec![0])]));
    }

    #[test]
    fn inadmissible_query_errors() {
        let s = even_shift();
        assert!(matches!(s.predecessor_set(&[1, 0, 1], 1), Err(Error::InadmissibleWord(_))));
    }

    #[test]
    fn reducible_sofic_is_refuted() {
        let g = LabeledGraph::from_triples(Alphabet::numbered(2), &["a", "b"], &[("a", "0", "a"), ("b", "1", "b")])
            .unwrap();
        let s = SubshiftSpec::sofic(g).unwrap();
        let r = s.is_irreducible(3).unwrap();
        assert_eq!(r.verdict, Verdict::No);
        assert!(r.witness.is_some());
    }

    #[test]
    fn dyck_is_irreducible() {
        let s = SubshiftSpec::dyck(2).unwrap();
        assert_eq!(s.is_irreducible(3).unwrap().verdict, Verdict::Yes);
    }

    #[test]
    fn higher_block_of_full_shift() {
        let s = full_shift(2);
        let h = s.higher_block(2).unwrap();
        assert_eq!(h.alphabet().len(), 4);
        assert_eq!(h.alphabet().names(), &["00", "01", "10", "11"]);
        assert_eq!(h.admissible_words(2).unwrap().len(), 8);
    }

    #[test]
    fn oracle_depth_is_enforced() {
        let o = OracleLanguage::new(3, "all words", |_| true);
        let s = SubshiftSpec::oracle(Alphabet::numbered(2), o);
        assert_eq!(s.admissible_words(3).unwrap().len(), 8);
        assert!(matches!(s.admissible_words(4), Err(Error::DepthExceeded { .. })));
    }

    #[test]
    fn finiteness() {
        let g = LabeledGraph::from_triples(Alphabet::numbered(2), &["a", "b"], &[("a", "0", "b"), ("b", "1", "a")])
            .unwrap();
        let s = SubshiftSpec::sofic(g).unwrap();
        assert_eq!(s.is_finite(5).unwrap(), Verdict::Yes);
        assert_eq!(golden_mean().is_finite(5).unwrap(), Verdict::No);
    }
}
