//! Continuous orbit equivalence on finite path prefixes of lambda-graph truncations.

use std::collections::{BTreeSet, HashMap};

use super::block::{apply_sliding_code, first_failure, prefix_compatible, BlockMap};
use super::substitution::Substitution;
use crate::error::{Error, Result};
use crate::lambda_graph::LambdaGraphTruncation;
use crate::subshift::{Alphabet, GraphEdge, LabeledGraph, SubshiftSpec, Sym, Word};
use crate::verdict::CheckReport;

/// Paths `(a_1, u_1)(a_2, u_2)...` through the top level of a truncation.
#[derive(Clone, Debug)]
pub struct PathSpace {
    pub spec: SubshiftSpec,
    /// `(label, top-level vertex)` per path letter, label-major.
    pub letters: Vec<(Sym, usize)>,
}

impl PathSpace {
    /// The label word `pi(x)`.
    pub fn labels(&self, x: &[Sym]) -> Word {
        Word(x.iter().map(|&s| self.letters[s as usize].0).collect())
    }
}

/// Letter `(b, w')` may follow `(a, w)` when an edge `iota(w) -b-> w'` exists.
pub fn path_space(g: &LambdaGraphTruncation) -> Result<PathSpace> {
    let top = g.depth();
    if top == 0 {
        return Err(Error::invalid("path space needs at least one level of edges"));
    }
    let edges = g.edges(top - 1);
    let letters: Vec<(Sym, usize)> =
        edges.iter().map(|e| (e.label, e.dst)).collect::<BTreeSet<_>>().into_iter().collect();
    let pos: HashMap<(Sym, usize), usize> = letters.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let names: Vec<String> = letters
        .iter()
        .map(|&(a, v)| format!("({},{})", g.alphabet().name(a), LambdaGraphTruncation::vertex_id(top, v)))
        .collect();
    let alphabet = Alphabet::new(names)?;
    let mut out = BTreeSet::new();
    for w in 0..g.level_size(top) {
        let below = g.iota(top, w);
        for e in edges.iter().filter(|e| e.src == below) {
            out.insert((w, e.dst, pos[&(e.label, e.dst)] as Sym));
        }
    }
    let edges = out.into_iter().map(|(src, dst, label)| GraphEdge { src, dst, label }).collect();
    let vertices = (0..g.level_size(top)).map(|v| LambdaGraphTruncation::vertex_id(top, v)).collect();
    let spec = SubshiftSpec::sofic(LabeledGraph::new(alphabet, vertices, edges)?)?;
    Ok(PathSpace { spec, letters })
}

/// A candidate homeomorphism given on finite words.
#[derive(Clone, Debug)]
pub enum PathMap {
    Sliding(BlockMap),
    Substitution(Substitution),
    /// Inverse of a prefix-code substitution: parse into images.
    Desubstitution(Substitution),
}

impl PathMap {
    pub fn apply(&self, x: &[Sym]) -> Result<Word> {
        match self {
            PathMap::Sliding(code) if x.len() < code.window => Ok(Word::empty()),
            PathMap::Sliding(code) => apply_sliding_code(code, x),
            PathMap::Substitution(s) => Ok(s.apply(x)),
            PathMap::Desubstitution(s) => Ok(s.parse(x)?.0),
        }
    }

    pub fn window(&self) -> usize {
        match self {
            PathMap::Sliding(code) => code.window,
            PathMap::Substitution(_) => 1,
            PathMap::Desubstitution(s) => s.images.iter().map(|w| w.len()).max().unwrap_or(1),
        }
    }
}

/// Integer-valued function of the first `window` letters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cocycle {
    Constant(usize),
    Window { window: usize, table: HashMap<Word, usize> },
}

impl Cocycle {
    pub fn window(&self) -> usize {
        match self {
            Cocycle::Constant(_) => 0,
            Cocycle::Window { window, .. } => *window,
        }
    }

    /// `None` when `x` is too short or the window is missing from the table.
    pub fn eval(&self, x: &[Sym]) -> Option<usize> {
        match self {
            Cocycle::Constant(c) => Some(*c),
            Cocycle::Window { window, table } => x.get(..*window).and_then(|w| table.get(w).copied()),
        }
    }
}

/// `h` with cocycles `k1, l1` and `h^-1` with `k2, l2`, plus an optional map on labels.
#[derive(Clone, Debug)]
pub struct CoeData {
    pub h: PathMap,
    pub h_inv: PathMap,
    pub k1: Cocycle,
    pub l1: Cocycle,
    pub k2: Cocycle,
    pub l2: Cocycle,
    pub label_map: Option<PathMap>,
}

/// Verifies the cocycle equalities
/// `sigma^{k1(x)}(h(sigma x)) = sigma^{l1(x)}(h(x))` (and the inverse analogue),
/// mutual inversion and label compatibility on all path prefixes up to `depth`.
pub fn check_coe(
    data: &CoeData,
    g1: &LambdaGraphTruncation,
    g2: &LambdaGraphTruncation,
    depth: usize,
) -> Result<CheckReport> {
    let need = [&data.k1, &data.l1, &data.k2, &data.l2].iter().map(|c| c.window()).max().unwrap_or(0);
    if depth < need {
        return Err(Error::DepthExceeded { requested: need, certified: depth });
    }
    let (p1, p2) = (path_space(g1)?, path_space(g2)?);
    struct Side<'a> {
        src: &'a PathSpace,
        dst: &'a PathSpace,
        f: &'a PathMap,
        g: &'a PathMap,
        k: &'a Cocycle,
        l: &'a Cocycle,
        labels: Option<&'a PathMap>,
        forward: bool,
    }
    let run = |s: Side| {
        first_failure(&s.src.spec, depth, |x| {
            let fx = match s.f.apply(x) {
                Ok(w) => w,
                Err(Error::InadmissibleWindow(_) | Error::InadmissibleImage(_)) => {
                    return Ok(Some("map undefined".into()))
                }
                Err(e) => return Err(e),
            };
            if !s.dst.spec.is_admissible(&fx)? {
                return Ok(Some(format!("image {} is not a path", s.dst.spec.alphabet().format_word(&fx))));
            }
            if x.len() >= s.k.window().max(s.l.window()) {
                let (Some(k), Some(l)) = (s.k.eval(x), s.l.eval(x)) else {
                    return Ok(Some("cocycle undefined".into()));
                };
                let fs = s.f.apply(&x[1..]).unwrap_or_default();
                let lhs = fs.get(k..).unwrap_or(&[]);
                let rhs = fx.get(l..).unwrap_or(&[]);
                if !prefix_compatible(lhs, rhs) {
                    return Ok(Some(format!("cocycle equality fails with k = {k}, l = {l}")));
                }
            }
            let back = match s.g.apply(&fx) {
                Ok(w) => w,
                Err(Error::InadmissibleWindow(_) | Error::InadmissibleImage(_)) => {
                    return Ok(Some("inverse undefined on the image".into()))
                }
                Err(e) => return Err(e),
            };
            if !prefix_compatible(&back, x) {
                return Ok(Some("not inverse to each other".into()));
            }
            if let Some(lm) = s.labels {
                // pi_2(h(x)) against h_Lambda(pi_1(x)), read in the X_2 alphabet of labels
                let (seen, mapped) = if s.forward {
                    (s.dst.labels(&fx), lm.apply(&s.src.labels(x))?)
                } else {
                    (s.src.labels(x), lm.apply(&s.dst.labels(&fx))?)
                };
                if !prefix_compatible(&seen, &mapped) {
                    return Ok(Some("labels are not compatible".into()));
                }
            }
            Ok(None)
        })
    };
    let fwd = Side {
        src: &p1,
        dst: &p2,
        f: &data.h,
        g: &data.h_inv,
        k: &data.k1,
        l: &data.l1,
        labels: data.label_map.as_ref(),
        forward: true,
    };
    if let Some((w, why)) = run(fwd)? {
        return Ok(CheckReport::refuted(depth, p1.spec.alphabet().format_word(&w)).with_note(why));
    }
    let bwd = Side {
        src: &p2,
        dst: &p1,
        f: &data.h_inv,
        g: &data.h,
        k: &data.k2,
        l: &data.l2,
        labels: data.label_map.as_ref(),
        forward: false,
    };
    if let Some((w, why)) = run(bwd)? {
        return Ok(CheckReport::refuted(depth, p2.spec.alphabet().format_word(&w))
            .with_note(format!("inverse direction: {why}")));
    }
    Ok(CheckReport::yes(depth))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fischer::{fischer_cover, min_lgs_from_fischer};
    use crate::subshift::even_shift;
    use crate::verdict::Verdict;

    fn even_lgs() -> LambdaGraphTruncation {
        min_lgs_from_fischer(&fischer_cover(&even_shift()).unwrap(), 3).unwrap().lgs
    }

    #[test]
    fn path_letters_are_symbol_vertex_pairs() {
        let p = path_space(&even_lgs()).unwrap();
        assert_eq!(p.letters, vec![(0, 0), (0, 1), (1, 0)]);
        assert_eq!(p.spec.admissible_words(1).unwrap().len(), 3);
    }

    #[test]
    fn identity_coe() {
        let g = even_lgs();
        let id = PathMap::Sliding(BlockMap::identity(path_space(&g).unwrap().spec.alphabet()));
        let data = CoeData {
            h: id.clone(),
            h_inv: id,
            k1: Cocycle::Constant(0),
            l1: Cocycle::Constant(1),
            k2: Cocycle::Constant(0),
            l2: Cocycle::Constant(1),
            label_map: None,
        };
        assert_eq!(check_coe(&data, &g, &g, 6).unwrap().verdict, Verdict::Yes);
        let bad = CoeData { l1: Cocycle::Constant(0), ..data };
        assert_eq!(check_coe(&bad, &g, &g, 6).unwrap().verdict, Verdict::No);
    }
}
