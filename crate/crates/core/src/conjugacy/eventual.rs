//! Eventual conjugacy: lagged block data, the head recursion and the auxiliary shift.

use std::collections::HashMap;
use std::sync::Arc;

use super::block::{apply_sliding_code, first_failure, prefix_compatible, BlockMap, BlockWordMap};
use crate::error::{Error, Result};
use crate::subshift::{Alphabet, OracleLanguage, SubshiftSpec, Sym, Word};
use crate::verdict::CheckReport;

/// `h(x) = phi1(x_[1,M]) h1(x)` and `h^-1(y) = phi2(y_[1,M]) h2(y)` with lag `K`.
#[derive(Clone, Debug)]
pub struct EventualConjugacyData {
    pub k: usize,
    pub m: usize,
    pub phi1: BlockWordMap,
    pub h1: BlockMap,
    pub phi2: BlockWordMap,
    pub h2: BlockMap,
}

impl EventualConjugacyData {
    pub fn new(k: usize, phi1: BlockWordMap, h1: BlockMap, phi2: BlockWordMap, h2: BlockMap) -> Result<Self> {
        let m = phi1.window;
        if phi2.window != m {
            return Err(Error::WindowMismatch { expected: m, got: phi2.window });
        }
        if m < k || h1.memory() < k || h2.memory() < k {
            return Err(Error::invalid("windows must satisfy M >= K and N1, N2 >= K"));
        }
        for map in [&phi1, &phi2] {
            if let Some(w) = map.table.values().find(|w| w.len() != k) {
                return Err(Error::WindowMismatch { expected: k, got: w.len() });
            }
        }
        Ok(EventualConjugacyData { k, m, phi1, h1, phi2, h2 })
    }

    /// Window `L = M - 2K + 1 + N2` of the head recursion.
    pub fn l(&self) -> usize {
        (self.m + 1 + self.h2.memory()).saturating_sub(2 * self.k).max(1)
    }

    /// `h` on a finite word; empty when `x` is shorter than both windows.
    pub fn forward(&self, x: &[Sym]) -> Result<Word> {
        lagged(&self.phi1, &self.h1, x)
    }

    pub fn backward(&self, y: &[Sym]) -> Result<Word> {
        lagged(&self.phi2, &self.h2, y)
    }
}

fn lagged(head: &BlockWordMap, tail: &BlockMap, x: &[Sym]) -> Result<Word> {
    if x.len() < head.window || x.len() < tail.window {
        return Ok(Word::empty());
    }
    let mut out = head.apply(&x[..head.window])?.clone();
    out.0.extend(apply_sliding_code(tail, x)?.0);
    Ok(out)
}

/// Next head word `phi1(phi2(xi y_[1,M-K])_[2,K] phi_2(xi y_[1,L]))`.
pub fn tau_phi1(xi: &[Sym], y: &[Sym], data: &EventualConjugacyData) -> Result<Word> {
    let (k, m, l) = (data.k, data.m, data.l());
    if xi.len() != k {
        return Err(Error::WindowMismatch { expected: k, got: xi.len() });
    }
    if y.len() != l {
        return Err(Error::WindowMismatch { expected: l, got: y.len() });
    }
    if k == 0 {
        return Ok(Word::empty());
    }
    let mut xy = xi.to_vec();
    xy.extend_from_slice(y);
    let head = data.phi2.apply(&xy[..m])?;
    let mut arg = head[1..].to_vec();
    arg.extend(apply_sliding_code(&data.h2, &xy[..k + l])?.0);
    if arg.len() < m {
        return Err(Error::WindowMismatch { expected: m, got: arg.len() });
    }
    Ok(data.phi1.apply(&arg[..m])?.clone())
}

/// Letters `(xi, Y)` with `xi Y` admissible in `spec2`, `|xi| = K` and `|Y| = L`.
#[derive(Clone, Debug)]
pub struct PrimeAlphabet {
    pub letters: Vec<(Word, Word)>,
    pub alphabet: Alphabet,
}

pub fn prime_alphabet(spec2: &SubshiftSpec, data: &EventualConjugacyData) -> Result<PrimeAlphabet> {
    let (k, l) = (data.k, data.l());
    let letters: Vec<(Word, Word)> =
        spec2.admissible_words(k + l)?.into_iter().map(|w| (Word(w[..k].to_vec()), Word(w[k..].to_vec()))).collect();
    let fmt = |w: &[Sym]| spec2.alphabet().word_names(w).join(".");
    let names: Vec<String> = letters.iter().map(|(xi, y)| format!("({}|{})", fmt(xi), fmt(y))).collect();
    Ok(PrimeAlphabet { letters, alphabet: Alphabet::new(names)? })
}

/// `|Sigma'_2|` summed over `Y` as the number of admissible heads `xi Y`.
pub fn prime_letter_count(spec2: &SubshiftSpec, data: &EventualConjugacyData) -> Result<usize> {
    let k = data.k;
    let mut total = 0;
    for y in spec2.admissible_words(data.l())? {
        total += spec2.predecessor_set(&y, k)?.len();
    }
    Ok(total)
}

/// The auxiliary shift: letter sequences whose `Y` parts overlap as `L`-blocks
/// of one word of `spec2` and whose heads obey `xi_{n+1} = tau(xi_n, Y_n)`.
pub fn build_lambda2_prime(spec2: &SubshiftSpec, data: &EventualConjugacyData, depth: usize) -> Result<SubshiftSpec> {
    let pa = prime_alphabet(spec2, data)?;
    let letters = Arc::new(pa.letters.clone());
    let spec2 = Arc::new(spec2.clone());
    let data = Arc::new(data.clone());
    let oracle = OracleLanguage::new(depth, "auxiliary shift of an eventual conjugacy", move |w| {
        prime_admissible(&letters, &spec2, &data, w).unwrap_or(false)
    });
    Ok(SubshiftSpec::oracle(pa.alphabet, oracle))
}

fn prime_admissible(
    letters: &[(Word, Word)],
    spec2: &SubshiftSpec,
    data: &EventualConjugacyData,
    w: &[Sym],
) -> Result<bool> {
    let Some(&first) = w.first() else { return Ok(true) };
    let (xi, y0) = &letters[first as usize];
    let mut y = y0.0.clone();
    for pair in w.windows(2) {
        let (prev, next) = (&letters[pair[0] as usize], &letters[pair[1] as usize]);
        if prev.1[1..] != next.1[..next.1.len() - 1] {
            return Ok(false);
        }
        if tau_phi1(&prev.0, &prev.1, data)? != next.0 {
            return Ok(false);
        }
        y.push(*next.1.last().expect("L >= 1"));
    }
    let mut full = xi.0.clone();
    full.extend(y);
    spec2.is_admissible(&full)
}

/// `x -> (phi1(x_[n,n+M-1]), h1(x)_[n,n+L-1])_n` as a word over the auxiliary alphabet.
pub fn h_hat(data: &EventualConjugacyData, letters: &HashMap<(Word, Word), Sym>, x: &[Sym]) -> Result<Word> {
    let (m, l) = (data.m, data.l());
    let y = if x.len() >= data.h1.window { apply_sliding_code(&data.h1, x)? } else { Word::empty() };
    let count = (x.len() + 1).saturating_sub(m).min((y.len() + 1).saturating_sub(l));
    (0..count)
        .map(|n| {
            let xi = data.phi1.apply(&x[n..n + m])?.clone();
            let key = (xi, Word(y[n..n + l].to_vec()));
            letters.get(&key).copied().ok_or_else(|| Error::InadmissibleImage(format!("{key:?}")))
        })
        .collect::<Result<Vec<_>>>()
        .map(Word)
}

/// Inverse of `h_hat`: `x = h^-1(xi_1 y)`.
pub fn h_hat_inverse(data: &EventualConjugacyData, letters: &[(Word, Word)], w: &[Sym]) -> Result<Word> {
    let Some(&first) = w.first() else { return Ok(Word::empty()) };
    let mut xy = letters[first as usize].0 .0.clone();
    xy.extend_from_slice(&letters[first as usize].1);
    for &s in &w[1..] {
        xy.push(*letters[s as usize].1.last().expect("L >= 1"));
    }
    data.backward(&xy)
}

/// Verifies both lag equalities, the head reconstruction and mutual inversion on
/// all admissible words up to `depth`.
pub fn check_eventual_conjugacy(
    spec1: &SubshiftSpec,
    spec2: &SubshiftSpec,
    data: &EventualConjugacyData,
    depth: usize,
) -> Result<CheckReport> {
    let k = data.k;
    let side = |src: &SubshiftSpec,
                dst: &SubshiftSpec,
                f: &(dyn Fn(&[Sym]) -> Result<Word> + Sync),
                g: &(dyn Fn(&[Sym]) -> Result<Word> + Sync)| {
        first_failure(src, depth, |x| {
            let hx = match f(x) {
                Ok(w) => w,
                Err(Error::InadmissibleWindow(_)) => return Ok(Some("window missing from a table".into())),
                Err(e) => return Err(e),
            };
            if hx.is_empty() {
                return Ok(None);
            }
            if !dst.is_admissible(&hx)? {
                return Ok(Some(format!("image {} is not admissible", dst.alphabet().format_word(&hx))));
            }
            // sigma^K h(sigma x) = sigma^{K+1} h(x)
            let hs = f(&x[1..]).unwrap_or_default();
            if hs.len() > k && hx.len() > k + 1 && !prefix_compatible(&hs[k..], &hx[k + 1..]) {
                return Ok(Some("lag equality fails".into()));
            }
            let back = match g(&hx) {
                Ok(w) => w,
                Err(Error::InadmissibleWindow(_)) => return Ok(Some("inverse table misses an image window".into())),
                Err(e) => return Err(e),
            };
            if !prefix_compatible(&back, x) {
                return Ok(Some(format!("inverse returns {}", src.alphabet().format_word(&back))));
            }
            Ok(None)
        })
    };
    let fwd = |x: &[Sym]| data.forward(x);
    let bwd = |y: &[Sym]| data.backward(y);
    if let Some((w, why)) = side(spec1, spec2, &fwd, &bwd)? {
        return Ok(CheckReport::refuted(depth, spec1.alphabet().format_word(&w)).with_note(why));
    }
    if let Some((w, why)) = side(spec2, spec1, &bwd, &fwd)? {
        return Ok(CheckReport::refuted(depth, spec2.alphabet().format_word(&w))
            .with_note(format!("inverse direction: {why}")));
    }
    // x_[1,K] = phi2(phi1(x_[1,M]) h1(x)_[1,M-K])
    let m = data.m;
    let need = m + data.h1.memory() - k;
    let recon = first_failure(spec1, depth, |x| {
        if k == 0 || x.len() < need.max(m) {
            return Ok(None);
        }
        let mut arg = data.phi1.apply(&x[..m])?.clone();
        if m > k {
            arg.0.extend(apply_sliding_code(&data.h1, &x[..need])?.0);
        }
        Ok((data.phi2.apply(&arg[..m])?[..] != x[..k]).then(|| "head reconstruction fails".to_string()))
    })?;
    if let Some((w, why)) = recon {
        return Ok(CheckReport::refuted(depth, spec1.alphabet().format_word(&w)).with_note(why));
    }
    Ok(CheckReport::yes(depth))
}

/// Checks that `h_hat` maps admissible words of `spec1` into the auxiliary shift
/// and that `h_hat_inverse` undoes it, to `depth`.
pub fn check_h_hat(
    spec1: &SubshiftSpec,
    prime: &SubshiftSpec,
    pa: &PrimeAlphabet,
    data: &EventualConjugacyData,
    depth: usize,
) -> Result<CheckReport> {
    let index: HashMap<(Word, Word), Sym> =
        pa.letters.iter().cloned().enumerate().map(|(i, p)| (p, i as Sym)).collect();
    let failure = first_failure(spec1, depth, |x| {
        let w = match h_hat(data, &index, x) {
            Ok(w) => w,
            Err(Error::InadmissibleImage(s)) => return Ok(Some(format!("letter {s} is missing"))),
            Err(e) => return Err(e),
        };
        if w.len() > prime.certified_depth().unwrap_or(usize::MAX) {
            return Ok(None);
        }
        if !prime.is_admissible(&w)? {
            return Ok(Some(format!("image {} is not admissible", prime.alphabet().format_word(&w))));
        }
        let back = h_hat_inverse(data, &pa.letters, &w)?;
        Ok((!prefix_compatible(&back, x)).then(|| "inverse disagrees".to_string()))
    })?;
    Ok(match failure {
        Some((w, why)) => CheckReport::refuted(depth, spec1.alphabet().format_word(&w)).with_note(why),
        None => CheckReport::yes(depth),
    })
}
