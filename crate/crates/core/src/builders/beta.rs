//! Beta expansions, beta shifts and their lambda-graph systems.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use super::number::{ExactNumber, Quad};
use crate::error::{Error, Result};
use crate::invariants::kgroups::{BetaBranch, BetaKGroups, KGroupResult};
use crate::lambda_graph::{LambdaGraphTruncation, LgEdge};
use crate::subshift::{Alphabet, Sym};

/// Digits of a sequence, possibly known to be eventually periodic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DigitSeq {
    pub prefix: Vec<Sym>,
    /// Repeating block after `prefix`; empty when only `prefix` is known.
    pub period: Vec<Sym>,
}

impl DigitSeq {
    /// Digit at 0-based position `i`, `None` past the known part.
    pub fn get(&self, i: usize) -> Option<Sym> {
        if i < self.prefix.len() {
            Some(self.prefix[i])
        } else if self.period.is_empty() {
            None
        } else {
            Some(self.period[(i - self.prefix.len()) % self.period.len()])
        }
    }

    pub fn is_eventually_periodic(&self) -> bool {
        !self.period.is_empty()
    }

    /// Known digits up to length `n`.
    pub fn take(&self, n: usize) -> Vec<Sym> {
        (0..n).map_while(|i| self.get(i)).collect()
    }

    /// How many digits are known (`usize::MAX` when periodic).
    pub fn known_len(&self) -> usize {
        if self.period.is_empty() {
            self.prefix.len()
        } else {
            usize::MAX
        }
    }
}

/// Base of a beta shift, `beta > 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Beta {
    num: ExactNumber,
}

impl fmt::Display for Beta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.num)
    }
}

/// First digits of a beta expansion plus what is known about the rest.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Expansion {
    pub digits: Vec<Sym>,
    /// `Some(m)`: all digits after the first `m` vanish.
    pub finite_len: Option<usize>,
    /// `(start, length)` of the period once the orbit was seen to repeat.
    pub period: Option<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum BetaClass {
    FullShift,
    Sft { length: usize },
    StrictlySofic { preperiod: usize, period: usize },
    NonSoficProven { reason: String },
    NonSoficUpTo { depth: usize },
}

impl fmt::Display for BetaClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BetaClass::FullShift => write!(f, "full shift"),
            BetaClass::Sft { length } => write!(f, "shift of finite type (expansion of 1 has length {length})"),
            BetaClass::StrictlySofic { preperiod, period } => {
                write!(f, "strictly sofic (preperiod {preperiod}, period {period})")
            }
            BetaClass::NonSoficProven { reason } => write!(f, "non-sofic (proven: {reason})"),
            BetaClass::NonSoficUpTo { depth } => write!(f, "not sofic up to depth {depth}"),
        }
    }
}

const DEFAULT_ZETA_DIGITS: usize = 512;

impl Beta {
    pub fn new(num: ExactNumber) -> Result<Self> {
        let gt_one = match &num {
            ExactNumber::Exact(q) => *q > Quad::int(1),
            ExactNumber::DecimalApprox { value, error } => value - error > BigRational::one(),
        };
        if !gt_one {
            return Err(Error::invalid(format!("beta must exceed 1, got {num}")));
        }
        Ok(Beta { num })
    }

    pub fn parse(text: &str) -> Result<Self> {
        Beta::new(ExactNumber::parse(text)?)
    }

    pub fn number(&self) -> &ExactNumber {
        &self.num
    }

    pub fn exact(&self) -> Result<&Quad> {
        self.num.exact().ok_or_else(|| Error::PrecisionExhausted(format!("{} is only known approximately", self.num)))
    }

    pub fn to_f64(&self) -> f64 {
        self.num.to_f64()
    }

    /// Number of digits `N` with `N - 1 < beta <= N`.
    pub fn digit_count(&self) -> usize {
        match &self.num {
            ExactNumber::Exact(q) => {
                let f = q.floor();
                let n = if Quad::rational(BigRational::from_integer(f.clone())) == *q { f } else { f + 1 };
                n.to_usize().expect("beta digit count fits usize")
            }
            ExactNumber::DecimalApprox { value, .. } => value.ceil().to_integer().to_usize().expect("digit count"),
        }
    }

    /// First `depth` digits of the greedy expansion of `x` in `[0, 1]`.
    pub fn expand(&self, x: &ExactNumber, depth: usize) -> Result<Expansion> {
        match (&self.num, x) {
            (ExactNumber::Exact(b), ExactNumber::Exact(x)) => expand_exact(b, x, depth),
            _ => self.expand_interval(x, depth),
        }
    }

    fn expand_interval(&self, x: &ExactNumber, depth: usize) -> Result<Expansion> {
        let (blo, bhi) = interval(&self.num)?;
        let (mut lo, mut hi) = interval(x)?;
        if lo < BigRational::zero() || hi > BigRational::one() {
            return Err(Error::invalid("x must lie in [0, 1]"));
        }
        let mut digits = Vec::new();
        for _ in 0..depth {
            let (plo, phi) = (&blo * &lo, &bhi * &hi);
            let dlo = plo.floor();
            let dhi = phi.floor();
            if dlo != dhi {
                return Err(Error::PrecisionExhausted(format!(
                    "digit {} undetermined at the given precision",
                    digits.len() + 1
                )));
            }
            digits.push(dlo.to_integer().to_u16().ok_or_else(|| Error::invalid("digit overflow"))?);
            lo = plo - &dlo;
            hi = phi - &dlo;
        }
        Ok(Expansion { digits, finite_len: None, period: None })
    }

    /// The quasi-greedy expansion of 1.
    pub fn zeta(&self, max_digits: usize) -> Result<DigitSeq> {
        match &self.num {
            ExactNumber::Exact(b) => {
                let e = expand_exact(b, &Quad::int(1), max_digits)?;
                if let Some(m) = e.finite_len {
                    let mut block = e.digits[..m].to_vec();
                    let last = block.last_mut().expect("nonempty expansion of 1");
                    *last -= 1;
                    return Ok(DigitSeq { prefix: Vec::new(), period: block });
                }
                match e.period {
                    Some((p, n)) => {
                        Ok(DigitSeq { prefix: e.digits[..p].to_vec(), period: e.digits[p..p + n].to_vec() })
                    }
                    None => Ok(DigitSeq { prefix: e.digits, period: Vec::new() }),
                }
            }
            ExactNumber::DecimalApprox { .. } => {
                let one = ExactNumber::Exact(Quad::int(1));
                let mut digits = Vec::new();
                for n in 1..=max_digits {
                    match self.expand_interval(&one, n) {
                        Ok(e) => digits = e.digits,
                        Err(Error::PrecisionExhausted(_)) => break,
                        Err(e) => return Err(e),
                    }
                }
                // an approximate expansion cannot be shown to terminate; drop the
                // last digit, which may belong to a terminating greedy expansion
                digits.pop();
                Ok(DigitSeq { prefix: digits, period: Vec::new() })
            }
        }
    }

    pub fn default_zeta(&self) -> Result<DigitSeq> {
        self.zeta(DEFAULT_ZETA_DIGITS)
    }

    /// `b_0, ..., b_k` with `b_0 = 1` and `b_i = beta*b_{i-1} - zeta_i`.
    pub fn b_values(&self, k: usize) -> Result<Vec<Quad>> {
        let b = self.exact()?.clone();
        let zeta = self.zeta(k.max(1) + 1)?;
        let mut out = vec![Quad::int(1)];
        for i in 1..=k {
            let z = zeta.get(i - 1).ok_or(Error::DepthExceeded { requested: k, certified: i - 1 })?;
            let next = b.clone() * out[i - 1].clone() - Quad::int(z as i64);
            out.push(next);
        }
        Ok(out)
    }

    pub fn classify(&self, depth: usize) -> Result<BetaClass> {
        let b = self.exact()?.clone();
        let vals = self.b_values(depth)?;
        let one = Quad::int(1);
        if depth >= 1 && vals[1] == one {
            return Ok(BetaClass::FullShift);
        }
        if let Some(k) = (1..=depth).find(|&k| vals[k] == one) {
            return Ok(BetaClass::Sft { length: k });
        }
        let mut seen: HashMap<&Quad, usize> = HashMap::new();
        for (k, v) in vals.iter().enumerate().skip(1) {
            if let Some(&first) = seen.get(v) {
                return Ok(BetaClass::StrictlySofic { preperiod: first - 1, period: k - first });
            }
            seen.insert(v, k);
        }
        if let Some(reason) = non_parry_reason(&b) {
            return Ok(BetaClass::NonSoficProven { reason });
        }
        Ok(BetaClass::NonSoficUpTo { depth })
    }

    /// K-groups of the beta shift from the expansion of 1.
    pub fn kgroups(&self, depth: usize) -> Result<BetaKGroups> {
        let b = self.exact().map_err(|_| Error::Unclassified(depth))?.clone();
        let e = expand_exact(&b, &Quad::int(1), depth)?;
        let digit_sum = |ds: &[Sym]| ds.iter().map(|&d| d as i64).sum::<i64>();
        let (branch, k0) = if let Some(m) = e.finite_len {
            (BetaBranch::Finite, KGroupResult::cyclic(BigInt::from(digit_sum(&e.digits[..m]) - 1)))
        } else if let Some((p, n)) = e.period {
            (BetaBranch::EventuallyPeriodic, KGroupResult::cyclic(BigInt::from(digit_sum(&e.digits[p..p + n]))))
        } else if non_parry_reason(&b).is_some() {
            (BetaBranch::Aperiodic, KGroupResult::cyclic(BigInt::zero()))
        } else {
            return Err(Error::Unclassified(depth));
        };
        Ok(BetaKGroups { groups: k0, branch })
    }

    /// Lambda-graph system of the beta shift truncated at level `depth`.
    pub fn lambda_graph(&self, depth: usize) -> Result<LambdaGraphTruncation> {
        let beta = self.exact()?.clone();
        let vals = self.b_values(depth)?;
        let n = self.digit_count();
        let alphabet = Alphabet::numbered(n);
        let zero = Quad::int(0);
        let mut cells: Vec<Vec<(Quad, Quad)>> = Vec::with_capacity(depth + 1);
        for l in 0..=depth {
            let mut cuts: Vec<Quad> = vec![zero.clone(), Quad::int(1)];
            cuts.extend(vals[1..=l].iter().cloned());
            cuts.sort();
            cuts.dedup();
            cells.push(cuts.windows(2).map(|w| (w[0].clone(), w[1].clone())).collect());
        }
        let mut iota = vec![Vec::new()];
        for l in 1..=depth {
            let up: Vec<usize> = cells[l]
                .iter()
                .map(|(c, d)| {
                    cells[l - 1]
                        .iter()
                        .position(|(c0, d0)| c0 <= c && d <= d0)
                        .expect("refined cell lies in a parent cell")
                })
                .collect();
            iota.push(up);
        }
        let mut edges = Vec::with_capacity(depth);
        for l in 0..depth {
            let mut es = Vec::new();
            for (i, (c, d)) in cells[l].iter().enumerate() {
                for a in 0..n {
                    let shift = Quad::int(a as i64);
                    let lo = beta.clone() * c.clone() - shift.clone();
                    let hi = beta.clone() * d.clone() - shift;
                    for (j, (c1, d1)) in cells[l + 1].iter().enumerate() {
                        if *c1 >= lo && *d1 <= hi {
                            es.push(LgEdge { src: i, dst: j, label: a as Sym });
                        }
                    }
                }
            }
            edges.push(es);
        }
        let annotations = cells.iter().map(|lv| lv.iter().map(|(c, d)| format!("({c},{d}]")).collect()).collect();
        let sizes = cells.iter().map(Vec::len).collect::<Vec<_>>();
        LambdaGraphTruncation::new(alphabet, &sizes, iota, edges)?.with_annotations(annotations)
    }

    /// `log beta`, with a symbolic form when beta is exact.
    pub fn entropy(&self) -> (f64, String) {
        let v = self.to_f64().ln();
        (v, format!("log({})", self.num))
    }
}

fn interval(x: &ExactNumber) -> Result<(BigRational, BigRational)> {
    match x {
        ExactNumber::DecimalApprox { value, error } => Ok((value - error, value + error)),
        ExactNumber::Exact(q) if q.is_rational() => Ok((q.a.clone(), q.a.clone())),
        ExactNumber::Exact(q) => {
            // bracket sqrt(d) between rationals with denominator 2^64
            let scale = BigInt::one() << 64u32;
            let d = BigInt::from(q.d) * &scale * &scale;
            let r = d.sqrt();
            let lo = BigRational::new(r.clone(), scale.clone());
            let hi = BigRational::new(r + 1, scale);
            let (p, s) = (q.a.clone(), q.b.clone());
            let (x1, x2) = (&p + &s * &lo, &p + &s * &hi);
            Ok(if x1 <= x2 { (x1, x2) } else { (x2, x1) })
        }
    }
}

fn expand_exact(beta: &Quad, x: &Quad, depth: usize) -> Result<Expansion> {
    if *x < Quad::int(0) || *x > Quad::int(1) {
        return Err(Error::invalid("x must lie in [0, 1]"));
    }
    let mut seen: HashMap<Quad, usize> = HashMap::new();
    let mut t = x.clone();
    let mut digits = Vec::new();
    while digits.len() < depth {
        if !digits.is_empty() && t.is_zero() {
            let finite_len = Some(digits.len());
            digits.resize(depth, 0);
            return Ok(Expansion { digits, finite_len, period: None });
        }
        if let Some(&p) = seen.get(&t) {
            let block = digits[p..].to_vec();
            let mut i = 0;
            while digits.len() < depth {
                digits.push(block[i % block.len()]);
                i += 1;
            }
            return Ok(Expansion { digits, finite_len: None, period: Some((p, block.len())) });
        }
        seen.insert(t.clone(), digits.len());
        let bt = beta.clone() * t;
        let d = bt.floor();
        t = bt - Quad::rational(BigRational::from_integer(d.clone()));
        digits.push(d.to_u16().ok_or_else(|| Error::invalid("digit overflow"))?);
    }
    let finite_len = (t.is_zero() && !digits.is_empty()).then_some(digits.len());
    Ok(Expansion { digits, finite_len, period: None })
}

/// Reason beta cannot be a Parry number, if one is known.
fn non_parry_reason(b: &Quad) -> Option<String> {
    if b.is_rational() {
        if !b.a.is_integer() {
            return Some("rational denominator growth".into());
        }
        return None;
    }
    if !b.is_algebraic_integer() {
        return Some("base is not an algebraic integer".into());
    }
    if b.conjugate().to_f64().abs() >= 2.0 {
        return Some("algebraic conjugate of modulus at least 2".into());
    }
    if b.conjugate().to_f64().abs() >= b.to_f64() {
        return Some("base is not a Perron number".into());
    }
    None
}
