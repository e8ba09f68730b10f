use std::borrow::Borrow;
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::Deref;

use serde::Serialize;

use crate::error::{Error, Result};

/// Index of a symbol in its [`Alphabet`].
pub type Sym = u16;

/// A finite word; ordered lexicographically by symbol index.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Word(pub Vec<Sym>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn concat(&self, other: &[Sym]) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(other);
        Word(v)
    }

    pub fn push(&mut self, s: Sym) {
        self.0.push(s);
    }

    pub fn into_vec(self) -> Vec<Sym> {
        self.0
    }
}

impl Deref for Word {
    type Target = [Sym];
    fn deref(&self) -> &[Sym] {
        &self.0
    }
}

impl From<Vec<Sym>> for Word {
    fn from(v: Vec<Sym>) -> Self {
        Word(v)
    }
}

impl From<&[Sym]> for Word {
    fn from(v: &[Sym]) -> Self {
        Word(v.to_vec())
    }
}

impl Borrow<[Sym]> for Word {
    fn borrow(&self) -> &[Sym] {
        &self.0
    }
}

/// Length first, then lexicographic.
pub fn shortlex(a: &[Sym], b: &[Sym]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

/// Ordered, named symbol set.
#[derive(Clone, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
    index: HashMap<String, Sym>,
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.names).finish()
    }
}

impl Alphabet {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::invalid("alphabet must be nonempty"));
        }
        if names.len() > Sym::MAX as usize {
            return Err(Error::invalid("alphabet too large"));
        }
        let mut index = HashMap::with_capacity(names.len());
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() || n.chars().any(char::is_whitespace) {
                return Err(Error::invalid(format!("bad symbol name {n:?}")));
            }
            if index.insert(n.clone(), i as Sym).is_some() {
                return Err(Error::invalid(format!("duplicate symbol {n:?}")));
            }
        }
        Ok(Alphabet { names, index })
    }

    /// Symbols named `0`, `1`, ..., `n-1`.
    pub fn numbered(n: usize) -> Self {
        Alphabet::new((0..n).map(|i| i.to_string())).expect("valid numbered alphabet")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, s: Sym) -> &str {
        &self.names[s as usize]
    }

    pub fn index_of(&self, name: &str) -> Option<Sym> {
        self.index.get(name).copied()
    }

    pub fn symbols(&self) -> impl Iterator<Item = Sym> + Clone {
        0..self.names.len() as Sym
    }

    fn single_chars(&self) -> bool {
        self.names.iter().all(|n| n.chars().count() == 1)
    }

    /// Parses whitespace-separated names; when every name is one character a
    /// word may also be written without separators.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let text = text.trim();
        let tokens: Vec<String> = if text.contains(char::is_whitespace) || !self.single_chars() {
            text.split_whitespace().map(str::to_owned).collect()
        } else {
            text.chars().map(|c| c.to_string()).collect()
        };
        self.word_from_names(&tokens)
    }

    pub fn word_from_names<S: AsRef<str>>(&self, names: &[S]) -> Result<Word> {
        names
            .iter()
            .map(|n| {
                self.index_of(n.as_ref()).ok_or_else(|| Error::invalid(format!("unknown symbol {:?}", n.as_ref())))
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }

    pub fn word_names(&self, w: &[Sym]) -> Vec<String> {
        w.iter().map(|&s| self.names[s as usize].clone()).collect()
    }

    /// Concatenated when all names are single characters, space separated otherwise.
    pub fn format_word(&self, w: &[Sym]) -> String {
        if self.single_chars() {
            w.iter().map(|&s| self.name(s)).collect()
        } else {
            self.word_names(w).join(" ")
        }
    }

    pub(crate) fn check_word(&self, w: &[Sym]) -> Result<()> {
        match w.iter().find(|&&s| s as usize >= self.len()) {
            Some(s) => Err(Error::invalid(format!("symbol index {s} out of range"))),
            None => Ok(()),
        }
    }
}

/// All words of length `n` over `k` symbols in lexicographic order.
pub fn all_words(k: usize, n: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    for _ in 0..n {
        out = out.iter().flat_map(|w| (0..k as Sym).map(move |s| w.concat(&[s]))).collect();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        let a = Alphabet::numbered(2);
        let w = a.parse_word("0110").unwrap();
        assert_eq!(w.0, vec![0, 1, 1, 0]);
        assert_eq!(a.format_word(&w), "0110");
        let d = Alphabet::new(["a1", "a2", "b1", "b2"]).unwrap();
        let w = d.parse_word("a1 b2").unwrap();
        assert_eq!(w.0, vec![0, 3]);
        assert_eq!(d.format_word(&w), "a1 b2");
        assert!(d.parse_word("a3").is_err());
    }

    #[test]
    fn rejects_duplicates() {
        assert!(Alphabet::new(["x", "x"]).is_err());
        assert!(Alphabet::new(Vec::<String>::new()).is_err());
    }

    #[test]
    fn shortlex_orders_by_length_first() {
        assert_eq!(shortlex(&[1], &[0, 0]), Ordering::Less);
        assert_eq!(shortlex(&[0, 1], &[0, 0]), Ordering::Greater);
    }

    #[test]
    fn all_words_counts() {
        assert_eq!(all_words(3, 4).len(), 81);
        let w = all_words(2, 2);
        assert_eq!(w[1].0, vec![0, 1]);
    }
}
