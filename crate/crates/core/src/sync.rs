//! Synchronizing words, past equivalence classes and minimal lambda-graph systems.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lambda_graph::{LambdaGraphTruncation, LgEdge};
use crate::subshift::{shortlex, LabeledGraph, SubshiftSpec, Sym, Word};
use crate::verdict::{CheckReport, Verdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Exactness {
    /// Decided on a finite presentation.
    Exact,
    /// Extensions were tested up to the given length.
    Bounded(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SyncSearchParams {
    /// Longest candidate word.
    pub word_bound: usize,
    /// Longest extension tested for non-sofic backends; `l + 2` when unset.
    pub extension_bound: Option<usize>,
}

impl SyncSearchParams {
    pub fn new(word_bound: usize) -> Self {
        SyncSearchParams { word_bound, extension_bound: None }
    }

    pub fn with_extension_bound(mut self, e: usize) -> Self {
        self.extension_bound = Some(e);
        self
    }
}

/// An `l`-past equivalence class of synchronizing words.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PastClass {
    pub level: usize,
    /// Shortlex-minimal member found.
    pub representative: Word,
    pub members: Vec<Word>,
    pub signature: BTreeSet<Word>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyncWords {
    pub words: Vec<Word>,
    pub exactness: Exactness,
}

/// Per-query state: the level, the presentation when there is one and a cache
/// of predecessor sets.
struct Ctx<'a> {
    spec: &'a SubshiftSpec,
    l: usize,
    ext: usize,
    graph: Option<&'a LabeledGraph>,
    vertex_preds: Vec<BTreeSet<Word>>,
    union_cache: HashMap<Vec<bool>, BTreeSet<Word>>,
}

impl<'a> Ctx<'a> {
    fn new(spec: &'a SubshiftSpec, l: usize, params: &SyncSearchParams) -> Self {
        let graph = spec.presentation();
        let vertex_preds = graph.map(|g| g.predecessor_words(l)).unwrap_or_default();
        Ctx { spec, l, ext: params.extension_bound.unwrap_or(l + 2), graph, vertex_preds, union_cache: HashMap::new() }
    }

    fn exactness(&self) -> Exactness {
        if self.graph.is_some() {
            Exactness::Exact
        } else {
            Exactness::Bounded(self.ext)
        }
    }

    fn union_of(&mut self, initial: &[bool]) -> BTreeSet<Word> {
        if let Some(s) = self.union_cache.get(initial) {
            return s.clone();
        }
        let mut out = BTreeSet::new();
        for (u, &b) in initial.iter().enumerate() {
            if b {
                out.extend(self.vertex_preds[u].iter().cloned());
            }
        }
        self.union_cache.insert(initial.to_vec(), out.clone());
        out
    }

    fn gamma(&mut self, mu: &[Sym]) -> Result<BTreeSet<Word>> {
        match self.graph {
            Some(g) => {
                let init = g.initial_set(mu);
                if !init.iter().any(|&b| b) {
                    return Err(Error::InadmissibleWord(self.spec.alphabet().format_word(mu)));
                }
                Ok(self.union_of(&init))
            }
            None => self.spec.predecessor_set(mu, self.l),
        }
    }

    fn is_sync(&mut self, mu: &[Sym]) -> Result<bool> {
        let base = self.gamma(mu)?;
        match self.graph {
            Some(g) => self.sofic_sync(g, mu, &base),
            None => {
                for omega in self.spec.follower_set(mu, self.ext)? {
                    let w = Word(mu.to_vec()).concat(&omega);
                    if self.spec.predecessor_set(&w, self.l)? != base {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
        }
    }

    // explore the relation (start vertex -> reachable ends) of mu and all its extensions
    fn sofic_sync(&mut self, g: &LabeledGraph, mu: &[Sym], base: &BTreeSet<Word>) -> Result<bool> {
        let n = g.num_vertices();
        let start: Vec<Vec<bool>> = (0..n)
            .map(|u| {
                let mut set = vec![false; n];
                set[u] = true;
                for &s in mu {
                    set = g.step_forward(&set, s);
                }
                set
            })
            .collect();
        let mut seen: HashSet<Vec<Vec<bool>>> = HashSet::from([start.clone()]);
        let mut queue = VecDeque::from([start]);
        while let Some(rel) = queue.pop_front() {
            let init: Vec<bool> = rel.iter().map(|t| t.iter().any(|&b| b)).collect();
            if &self.union_of(&init) != base {
                return Ok(false);
            }
            for s in g.alphabet().symbols() {
                let next: Vec<Vec<bool>> = rel.iter().map(|t| g.step_forward(t, s)).collect();
                if next.iter().any(|t| t.iter().any(|&b| b)) && seen.insert(next.clone()) {
                    crate::limits::check(seen.len())?;
                    queue.push_back(next);
                }
            }
        }
        Ok(true)
    }
}

/// Whether `mu` is `l`-synchronizing.
pub fn is_synchronizing(spec: &SubshiftSpec, mu: &[Sym], l: usize, params: &SyncSearchParams) -> Result<bool> {
    Ctx::new(spec, l, params).is_sync(mu)
}

/// The `l`-synchronizing words of length at most `W`, in shortlex order.
pub fn synchronizing_words(spec: &SubshiftSpec, l: usize, params: &SyncSearchParams) -> Result<SyncWords> {
    let mut ctx = Ctx::new(spec, l, params);
    let mut words = Vec::new();
    for k in 0..=params.word_bound {
        for mu in spec.admissible_words(k)? {
            if ctx.is_sync(&mu)? {
                words.push(mu);
            }
        }
    }
    Ok(SyncWords { words, exactness: ctx.exactness() })
}

/// `l`-past classes of synchronizing words, found by increasing the word length
/// until one more length adds no class (or `W` is reached).
pub fn past_classes(spec: &SubshiftSpec, l: usize, params: &SyncSearchParams) -> Result<Vec<PastClass>> {
    let mut ctx = Ctx::new(spec, l, params);
    let mut by_sig: BTreeMap<BTreeSet<Word>, Vec<Word>> = BTreeMap::new();
    for k in 0..=params.word_bound {
        let before = by_sig.len();
        for mu in spec.admissible_words(k)? {
            if ctx.is_sync(&mu)? {
                let sig = ctx.gamma(&mu)?;
                by_sig.entry(sig).or_default().push(mu);
            }
        }
        if k > 0 && before > 0 && by_sig.len() == before {
            break;
        }
    }
    let mut classes: Vec<PastClass> = by_sig
        .into_iter()
        .map(|(signature, mut members)| {
            members.sort_by(|a, b| shortlex(a, b));
            PastClass { level: l, representative: members[0].clone(), members, signature }
        })
        .collect();
    classes.sort_by(|a, b| shortlex(&a.representative, &b.representative));
    Ok(classes)
}

/// Every `eta` in `B_l` has some `nu` in `S_k` (length at most `W`) with
/// `eta nu` in `S_{k-l}`.
pub fn is_lambda_synchronizing(
    spec: &SubshiftSpec,
    l: usize,
    k: usize,
    params: &SyncSearchParams,
) -> Result<CheckReport> {
    if k <= l {
        return Err(Error::invalid("need k > l"));
    }
    let sync_k = synchronizing_words(spec, k, params)?;
    let mut ctx = Ctx::new(spec, k - l, params);
    for eta in spec.admissible_words(l)? {
        let mut ok = false;
        for nu in &sync_k.words {
            let w = eta.concat(nu);
            if spec.is_admissible(&w)? && ctx.is_sync(&w)? {
                ok = true;
                break;
            }
        }
        if !ok {
            return Ok(CheckReport::unknown(params.word_bound).with_witness(spec.alphabet().format_word(&eta)));
        }
    }
    Ok(CheckReport::yes(params.word_bound))
}

struct Level {
    classes: Vec<PastClass>,
    index: HashMap<BTreeSet<Word>, usize>,
}

impl Level {
    fn new(classes: Vec<PastClass>) -> Self {
        let index = classes.iter().enumerate().map(|(i, c)| (c.signature.clone(), i)).collect();
        Level { classes, index }
    }

    fn lookup_or_insert(&mut self, level: usize, sig: BTreeSet<Word>, word: &Word) -> usize {
        if let Some(&i) = self.index.get(&sig) {
            return i;
        }
        let i = self.classes.len();
        self.classes.push(PastClass {
            level,
            representative: word.clone(),
            members: vec![word.clone()],
            signature: sig.clone(),
        });
        self.index.insert(sig, i);
        i
    }
}

/// Minimal lambda-graph system truncated at level `depth`.
pub fn build_min_lgs(spec: &SubshiftSpec, depth: usize, params: &SyncSearchParams) -> Result<LambdaGraphTruncation> {
    if params.word_bound < depth {
        return Err(Error::invalid(format!("word bound {} is below the depth {depth}", params.word_bound)));
    }
    let found: Vec<Vec<PastClass>> =
        (0..=depth).into_par_iter().map(|l| past_classes(spec, l, params)).collect::<Result<_>>()?;
    let mut levels: Vec<Level> = found.into_iter().map(Level::new).collect();
    for (l, lv) in levels.iter().enumerate() {
        if lv.classes.is_empty() {
            return Err(Error::NotSynchronizing(format!(
                "no {l}-synchronizing word of length <= {}",
                params.word_bound
            )));
        }
    }
    let mut edges: Vec<Vec<LgEdge>> = vec![Vec::new(); depth];
    let mut iota: Vec<Vec<usize>> = vec![Vec::new(); depth + 1];
    for l in (0..depth).rev() {
        let mut ctx = Ctx::new(spec, l, params);
        let (upper, lower) = levels.split_at_mut(l + 1);
        let here = &mut upper[l];
        let below = &lower[0];
        let mut es = Vec::new();
        let mut up = Vec::with_capacity(below.classes.len());
        for (j, class) in below.classes.iter().enumerate() {
            let nu = &class.representative;
            up.push(here.lookup_or_insert(l, ctx.gamma(nu)?, nu));
            for a in spec.alphabet().symbols() {
                let mut w = Vec::with_capacity(nu.len() + 1);
                w.push(a);
                w.extend_from_slice(nu);
                if !spec.is_admissible(&w)? {
                    continue;
                }
                let w = Word(w);
                let src = here.lookup_or_insert(l, ctx.gamma(&w)?, &w);
                es.push(LgEdge { src, dst: j, label: a });
            }
        }
        edges[l] = es;
        iota[l + 1] = up;
    }
    let sizes: Vec<usize> = levels.iter().map(|lv| lv.classes.len()).collect();
    let fmt = |w: &Word| format!("[{}]", spec.alphabet().format_word(w));
    let ann = levels.iter().map(|lv| lv.classes.iter().map(|c| fmt(&c.representative)).collect()).collect();
    let g = LambdaGraphTruncation::new(spec.alphabet().clone(), &sizes, iota, edges)?.with_annotations(ann)?;
    let report = g.validate();
    if !report.all_ok() {
        return Err(Error::NotSynchronizing(format!(
            "classes found within word bound {} do not close up: {}",
            params.word_bound,
            report.failures.join("; ")
        )));
    }
    Ok(g)
}

/// A shortest word `mu` leaving `v_v^l` and no other vertex of `V_l`.
pub fn launches(g: &LambdaGraphTruncation, l: usize, v: usize, bound: usize) -> Option<Word> {
    if l > g.depth() || v >= g.level_size(l) {
        return None;
    }
    let size = g.level_size(l);
    let top = bound.min(g.depth() - l);
    // per candidate word: the current vertex set for each start vertex
    let mut layer: Vec<(Word, Vec<Vec<bool>>)> = vec![(
        Word::empty(),
        (0..size)
            .map(|u| {
                let mut s = vec![false; size];
                s[u] = true;
                s
            })
            .collect(),
    )];
    for k in 0..top {
        let mut next = Vec::new();
        for (w, sets) in &layer {
            for a in g.alphabet().symbols() {
                let moved: Vec<Vec<bool>> = sets.iter().map(|s| g.step(l + k, s, a)).collect();
                if !moved[v].iter().any(|&b| b) {
                    continue;
                }
                let word = w.concat(&[a]);
                let others = (0..size).any(|u| u != v && moved[u].iter().any(|&b| b));
                if !others {
                    return Some(word);
                }
                next.push((word, moved));
            }
        }
        layer = next;
    }
    None
}

/// `Yes` when every vertex on a level `l` with `l + bound <= L` launches a word
/// of length at most `bound`; higher levels lack room for the search.
pub fn check_launching(g: &LambdaGraphTruncation, bound: usize) -> CheckReport {
    for l in 0..=g.depth().saturating_sub(bound.max(1)) {
        for v in 0..g.level_size(l) {
            if launches(g, l, v, bound).is_none() {
                return CheckReport::unknown(g.depth()).with_witness(LambdaGraphTruncation::vertex_id(l, v));
            }
        }
    }
    CheckReport { verdict: Verdict::Yes, certified_depth: g.depth(), witness: None, note: None }
}
