//! Sliding block codes between one-sided subshifts.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::subshift::{Alphabet, SubshiftSpec, Sym, Word};
use crate::verdict::CheckReport;

/// Block map `B_w(source) -> target symbol`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockMap {
    pub window: usize,
    pub table: HashMap<Word, Sym>,
}

/// Block map `B_w(source) -> B_k(target)`, the head part of an eventual conjugacy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockWordMap {
    pub window: usize,
    pub table: HashMap<Word, Word>,
}

impl BlockMap {
    pub fn new(window: usize, table: HashMap<Word, Sym>) -> Result<Self> {
        if window == 0 {
            return Err(Error::invalid("block map window must be positive"));
        }
        if let Some(w) = table.keys().find(|w| w.len() != window) {
            return Err(Error::WindowMismatch { expected: window, got: w.len() });
        }
        Ok(BlockMap { window, table })
    }

    /// The 1-block identity on `alphabet`.
    pub fn identity(alphabet: &Alphabet) -> Self {
        BlockMap { window: 1, table: alphabet.symbols().map(|s| (Word(vec![s]), s)).collect() }
    }

    /// Builds a code from a function on the admissible windows of `spec`.
    pub fn from_fn(spec: &SubshiftSpec, window: usize, f: impl Fn(&[Sym]) -> Sym) -> Result<Self> {
        let table = spec.admissible_words(window)?.into_iter().map(|w| {
            let s = f(&w);
            (w, s)
        });
        BlockMap::new(window, table.collect())
    }

    pub fn apply(&self, w: &[Sym]) -> Result<Sym> {
        self.table.get(w).copied().ok_or_else(|| Error::InadmissibleWindow(format!("{w:?}")))
    }

    /// The memory this code needs to produce one output symbol.
    pub fn memory(&self) -> usize {
        self.window - 1
    }
}

impl BlockWordMap {
    pub fn new(window: usize, table: HashMap<Word, Word>) -> Result<Self> {
        if let Some(w) = table.keys().find(|w| w.len() != window) {
            return Err(Error::WindowMismatch { expected: window, got: w.len() });
        }
        Ok(BlockWordMap { window, table })
    }

    pub fn from_fn(spec: &SubshiftSpec, window: usize, f: impl Fn(&[Sym]) -> Word) -> Result<Self> {
        let table = spec.admissible_words(window)?.into_iter().map(|w| {
            let s = f(&w);
            (w, s)
        });
        BlockWordMap::new(window, table.collect())
    }

    pub fn apply(&self, w: &[Sym]) -> Result<&Word> {
        if w.len() != self.window {
            return Err(Error::WindowMismatch { expected: self.window, got: w.len() });
        }
        self.table.get(w).ok_or_else(|| Error::InadmissibleWindow(format!("{w:?}")))
    }
}

/// `code(x)_i = phi(x_i ... x_{i+w-1})`; the output has `|x| - w + 1` symbols.
pub fn apply_sliding_code(code: &BlockMap, x: &[Sym]) -> Result<Word> {
    if x.len() < code.window {
        return Err(Error::WindowMismatch { expected: code.window, got: x.len() });
    }
    x.windows(code.window).map(|w| code.apply(w)).collect::<Result<Vec<_>>>().map(Word)
}

/// Applies `code` and checks that the image is admissible in `target`.
pub fn apply_checked(code: &BlockMap, x: &[Sym], target: &SubshiftSpec) -> Result<Word> {
    let y = apply_sliding_code(code, x)?;
    if !target.is_admissible(&y)? {
        return Err(Error::InadmissibleImage(target.alphabet().format_word(&y)));
    }
    Ok(y)
}

/// Canonical codes `spec -> spec^[k]` and back.
pub fn higher_block_codes(spec: &SubshiftSpec, k: usize) -> Result<(SubshiftSpec, BlockMap, BlockMap)> {
    let target = spec.higher_block(k)?;
    let blocks = spec.admissible_words(k)?;
    let fwd = BlockMap::new(k, blocks.iter().enumerate().map(|(i, b)| (b.clone(), i as Sym)).collect())?;
    let bwd = BlockMap::new(1, blocks.iter().enumerate().map(|(i, b)| (Word(vec![i as Sym]), b[0])).collect())?;
    Ok((target, fwd, bwd))
}

pub(crate) fn prefix_compatible(a: &[Sym], b: &[Sym]) -> bool {
    let n = a.len().min(b.len());
    a[..n] == b[..n]
}

/// Runs `check` over admissible words of lengths `1..=depth`, returning the
/// first failure in length-then-lexicographic order.
pub(crate) fn first_failure<F>(spec: &SubshiftSpec, depth: usize, check: F) -> Result<Option<(Word, String)>>
where
    F: Fn(&[Sym]) -> Result<Option<String>> + Sync,
{
    for n in 1..=depth {
        let words = spec.admissible_words(n)?;
        let failure = words
            .par_iter()
            .map(|w| check(w).map(|f| f.map(|why| (w.clone(), why))))
            .find_first(|r| !matches!(r, Ok(None)));
        match failure {
            Some(Ok(Some(found))) => return Ok(Some(found)),
            Some(Err(e)) => return Err(e),
            _ => {}
        }
    }
    Ok(None)
}

/// Checks on every admissible word up to `depth` that `fwd` and `bwd` map into
/// the other shift and invert each other.
pub fn check_one_sided_conjugacy(
    spec1: &SubshiftSpec,
    spec2: &SubshiftSpec,
    fwd: &BlockMap,
    bwd: &BlockMap,
    depth: usize,
) -> Result<CheckReport> {
    let total = fwd.window + bwd.window - 1;
    if depth < total {
        return Ok(CheckReport::unknown(depth).with_note(format!("depth below the composite window {total}")));
    }
    let side = |src: &SubshiftSpec, dst: &SubshiftSpec, f: &BlockMap, g: &BlockMap| {
        first_failure(src, depth, |x| {
            if x.len() < f.window {
                return Ok(None);
            }
            let y = match apply_sliding_code(f, x) {
                Ok(y) => y,
                Err(Error::InadmissibleWindow(_)) => return Ok(Some("window missing from the table".into())),
                Err(e) => return Err(e),
            };
            if !dst.is_admissible(&y)? {
                return Ok(Some(format!("image {} is not admissible", dst.alphabet().format_word(&y))));
            }
            if y.len() >= g.window {
                let back = match apply_sliding_code(g, &y) {
                    Ok(b) => b,
                    Err(Error::InadmissibleWindow(_)) => {
                        return Ok(Some("inverse table misses an image window".into()))
                    }
                    Err(e) => return Err(e),
                };
                if back[..] != x[..back.len()] {
                    return Ok(Some(format!("inverse returns {}", src.alphabet().format_word(&back))));
                }
            }
            Ok(None)
        })
    };
    if let Some((w, why)) = side(spec1, spec2, fwd, bwd)? {
        return Ok(CheckReport::refuted(depth, spec1.alphabet().format_word(&w)).with_note(why));
    }
    if let Some((w, why)) = side(spec2, spec1, bwd, fwd)? {
        return Ok(CheckReport::refuted(depth, spec2.alphabet().format_word(&w))
            .with_note(format!("inverse direction: {why}")));
    }
    Ok(CheckReport::yes(depth))
}
