//! Symbol-to-word substitutions between languages.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::subshift::{SubshiftSpec, Sym, Word};
use crate::verdict::CheckReport;

/// Substitution `a -> images[a]` on the symbols of a source alphabet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Substitution {
    pub images: Vec<Word>,
}

impl Substitution {
    pub fn new(images: Vec<Word>) -> Result<Self> {
        if images.iter().any(|w| w.is_empty()) {
            return Err(Error::invalid("substitution images must be nonempty"));
        }
        Ok(Substitution { images })
    }

    pub fn identity(n: usize) -> Self {
        Substitution { images: (0..n as Sym).map(|s| Word(vec![s])).collect() }
    }

    /// Parses `(source name, target word)` pairs against both alphabets.
    pub fn from_names(source: &SubshiftSpec, target: &SubshiftSpec, pairs: &[(&str, &str)]) -> Result<Self> {
        let mut images = vec![None; source.alphabet().len()];
        for (a, w) in pairs {
            let s = source.alphabet().index_of(a).ok_or_else(|| Error::invalid(format!("unknown symbol {a}")))?;
            images[s as usize] = Some(target.alphabet().parse_word(w)?);
        }
        let images = images
            .into_iter()
            .enumerate()
            .map(|(i, w)| w.ok_or_else(|| Error::invalid(format!("no image for {}", source.alphabet().name(i as Sym)))))
            .collect::<Result<Vec<_>>>()?;
        Substitution::new(images)
    }

    pub fn apply(&self, w: &[Sym]) -> Word {
        Word(w.iter().flat_map(|&s| self.images[s as usize].iter().copied()).collect())
    }

    /// Splits `y` into complete images; the unparsed tail is returned separately.
    pub fn parse<'a>(&self, y: &'a [Sym]) -> Result<(Word, &'a [Sym])> {
        let mut out = Vec::new();
        let mut rest = y;
        'outer: while !rest.is_empty() {
            for (s, img) in self.images.iter().enumerate() {
                if rest.starts_with(img) {
                    out.push(s as Sym);
                    rest = &rest[img.len()..];
                    continue 'outer;
                }
            }
            if self.images.iter().any(|img| img.starts_with(rest)) {
                break;
            }
            return Err(Error::InadmissibleImage(format!("{y:?} does not split into images")));
        }
        Ok((Word(out), rest))
    }

    /// No image is a prefix of another, so parsing is unambiguous.
    pub fn is_prefix_code(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, a)| self.images.iter().enumerate().all(|(j, b)| i == j || !b.starts_with(a)))
    }
}

/// Checks to `depth` that `sub` maps admissible words of `spec1` injectively
/// to admissible words of `spec2` and disjoint cylinders to disjoint cylinders.
pub fn check_substitution_morphism(
    spec1: &SubshiftSpec,
    spec2: &SubshiftSpec,
    sub: &Substitution,
    depth: usize,
) -> Result<CheckReport> {
    if sub.images.len() != spec1.alphabet().len() {
        return Err(Error::invalid("substitution must cover the source alphabet"));
    }
    let fmt1 = |w: &[Sym]| spec1.alphabet().format_word(w);
    let fmt2 = |w: &[Sym]| spec2.alphabet().format_word(w);
    let mut seen: HashMap<Word, Word> = HashMap::new();
    for n in 1..=depth {
        let mut images = Vec::new();
        for w in spec1.admissible_words(n)? {
            let img = sub.apply(&w);
            if !spec2.is_admissible(&img)? {
                return Ok(
                    CheckReport::refuted(depth, fmt1(&w)).with_note(format!("image {} is not admissible", fmt2(&img)))
                );
            }
            if let Some(other) = seen.insert(img.clone(), w.clone()) {
                return Ok(CheckReport::refuted(depth, fmt1(&w)).with_note(format!("same image as {}", fmt1(&other))));
            }
            images.push((img, w));
        }
        // a prefix pair is adjacent in sorted order
        images.sort();
        for pair in images.windows(2) {
            if pair[1].0.starts_with(&pair[0].0) {
                return Ok(CheckReport::refuted(depth, fmt1(&pair[1].1))
                    .with_note(format!("image cylinder overlaps that of {}", fmt1(&pair[0].1))));
            }
        }
    }
    Ok(CheckReport::yes(depth))
}
