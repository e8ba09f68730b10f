//! Exact arithmetic in rational quadratic fields.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// `a + b*sqrt(d)` with `d` squarefree; rationals use `d = 0`, `b = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quad {
    pub a: BigRational,
    pub b: BigRational,
    pub d: u64,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Quad {
    pub fn rational(a: BigRational) -> Self {
        Quad { a, b: BigRational::zero(), d: 0 }
    }

    pub fn int(n: i64) -> Self {
        Quad::rational(rat(n))
    }

    /// `a + b*sqrt(d)`, pulling square factors out of `d`.
    pub fn new(a: BigRational, b: BigRational, d: u64) -> Self {
        if b.is_zero() || d == 0 {
            return Quad::rational(a);
        }
        let (s, core) = split_square(d);
        let b = b * rat(s as i64);
        if core == 1 {
            Quad::rational(a + b)
        } else {
            Quad { a, b, d: core }
        }
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    fn field(&self, other: &Quad) -> u64 {
        match (self.is_rational(), other.is_rational()) {
            (true, true) => 0,
            (false, true) => self.d,
            (true, false) => other.d,
            (false, false) => {
                assert_eq!(self.d, other.d, "mixed quadratic fields");
                self.d
            }
        }
    }

    fn norm(&self) -> BigRational {
        &self.a * &self.a - &self.b * &self.b * rat(self.d as i64)
    }

    pub fn conjugate(&self) -> Quad {
        Quad { a: self.a.clone(), b: -self.b.clone(), d: self.d }
    }

    pub fn signum(&self) -> Ordering {
        let sa = self.a.cmp(&BigRational::zero());
        let sb = self.b.cmp(&BigRational::zero());
        if sb == Ordering::Equal || sa == sb {
            return if sa == Ordering::Equal { sb } else { sa };
        }
        if sa == Ordering::Equal {
            return sb;
        }
        let a2 = &self.a * &self.a;
        let b2d = &self.b * &self.b * rat(self.d as i64);
        match a2.cmp(&b2d) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => Ordering::Equal,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        a + b * (self.d as f64).sqrt()
    }

    pub fn div(&self, other: &Quad) -> Result<Quad> {
        if other.is_zero() {
            return Err(Error::invalid("division by zero"));
        }
        let d = self.field(other);
        let other = Quad { d, ..other.clone() };
        let n = other.norm();
        let num = self.clone() * other.conjugate();
        Ok(Quad::new(num.a / &n, num.b / &n, d))
    }

    /// Exact floor.
    pub fn floor(&self) -> BigInt {
        if self.is_rational() {
            return self.a.floor().to_integer();
        }
        let approx = self.to_f64();
        let mut n = if approx.is_finite() {
            BigInt::from(approx.floor() as i64)
        } else {
            (&self.a + &self.b * rat(self.d.isqrt() as i64)).floor().to_integer()
        };
        let q = |n: &BigInt| Quad::rational(BigRational::from_integer(n.clone()));
        while (self.clone() - q(&n)).signum() == Ordering::Less {
            n -= 1;
        }
        while (self.clone() - q(&(n.clone() + 1))).signum() != Ordering::Less {
            n += 1;
        }
        n
    }

    /// Monic minimal polynomial coefficients `(trace, norm)` when quadratic.
    pub fn trace_norm(&self) -> (BigRational, BigRational) {
        (&self.a * rat(2), self.norm())
    }

    pub fn is_algebraic_integer(&self) -> bool {
        if self.is_rational() {
            return self.a.is_integer();
        }
        let (t, n) = self.trace_norm();
        t.is_integer() && n.is_integer()
    }
}

fn split_square(mut d: u64) -> (u64, u64) {
    let mut s = 1u64;
    let mut p = 2u64;
    while p * p <= d {
        while d.is_multiple_of(p * p) {
            d /= p * p;
            s *= p;
        }
        p += 1;
    }
    (s, d)
}

impl PartialOrd for Quad {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Quad {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.clone() - other.clone()).signum()
    }
}

impl Add for Quad {
    type Output = Quad;
    fn add(self, o: Quad) -> Quad {
        let d = self.field(&o);
        Quad::new(self.a + o.a, self.b + o.b, d)
    }
}

impl Sub for Quad {
    type Output = Quad;
    fn sub(self, o: Quad) -> Quad {
        self + (-o)
    }
}

impl Neg for Quad {
    type Output = Quad;
    fn neg(self) -> Quad {
        Quad { a: -self.a, b: -self.b, d: self.d }
    }
}

impl Mul for Quad {
    type Output = Quad;
    fn mul(self, o: Quad) -> Quad {
        let d = self.field(&o);
        let dd = rat(d as i64);
        let a = &self.a * &o.a + &self.b * &o.b * dd;
        let b = &self.a * &o.b + &o.a * &self.b;
        Quad::new(a, b, d)
    }
}

fn fmt_rat(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Quad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", fmt_rat(&self.a));
        }
        // common denominator form (p + q*sqrt(d))/c
        let c = self.a.denom().lcm(self.b.denom());
        let p = (&self.a * BigRational::from_integer(c.clone())).to_integer();
        let q = (&self.b * BigRational::from_integer(c.clone())).to_integer();
        let qs = if q.is_one() {
            String::new()
        } else if q == -BigInt::one() {
            "-".to_string()
        } else {
            format!("{q}*")
        };
        let body = if p.is_zero() {
            format!("{qs}sqrt({})", self.d)
        } else if q.is_negative() {
            let qa = -q.clone();
            let qs = if qa.is_one() { String::new() } else { format!("{qa}*") };
            format!("{p}-{qs}sqrt({})", self.d)
        } else {
            format!("{p}+{qs}sqrt({})", self.d)
        };
        if c.is_one() {
            write!(f, "{body}")
        } else {
            write!(f, "({body})/{c}")
        }
    }
}

/// A real number given either exactly or as a decimal with an error bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExactNumber {
    Exact(Quad),
    DecimalApprox { value: BigRational, error: BigRational },
}

impl ExactNumber {
    pub fn exact(&self) -> Option<&Quad> {
        match self {
            ExactNumber::Exact(q) => Some(q),
            ExactNumber::DecimalApprox { .. } => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            ExactNumber::Exact(q) => q.to_f64(),
            ExactNumber::DecimalApprox { value, .. } => value.to_f64().unwrap_or(f64::NAN),
        }
    }

    /// Parses `3`, `3/2`, `golden`, `(1+sqrt(5))/2`, `1+2*sqrt(3)`, `1.8393` or `1.8393+-1e-4`.
    pub fn parse(text: &str) -> Result<Self> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::invalid("empty number"));
        }
        if s == "golden" || s == "phi" {
            return Ok(ExactNumber::Exact(Quad::new(
                BigRational::new(1.into(), 2.into()),
                BigRational::new(1.into(), 2.into()),
                5,
            )));
        }
        if let Some((v, e)) = s.split_once("+-").or_else(|| s.split_once('±')) {
            return Ok(ExactNumber::DecimalApprox { value: parse_decimal(v)?, error: parse_decimal(e)? });
        }
        if s.contains("sqrt(") {
            return parse_quadratic(&s).map(ExactNumber::Exact);
        }
        if s.contains('.') || s.contains('e') || s.contains('E') {
            let value = parse_decimal(&s)?;
            let digits =
                s.split_once('.').map(|(_, f)| f.chars().take_while(char::is_ascii_digit).count()).unwrap_or(0);
            let error = BigRational::new(BigInt::one(), BigInt::from(2) * BigInt::from(10).pow(digits as u32));
            return Ok(ExactNumber::DecimalApprox { value, error });
        }
        parse_rational(&s).map(|r| ExactNumber::Exact(Quad::rational(r)))
    }
}

impl fmt::Display for ExactNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactNumber::Exact(q) => write!(f, "{q}"),
            ExactNumber::DecimalApprox { value, error } => {
                write!(f, "{}+-{}", value.to_f64().unwrap_or(f64::NAN), error.to_f64().unwrap_or(f64::NAN))
            }
        }
    }
}

fn parse_int(s: &str) -> Result<BigInt> {
    s.parse::<BigInt>().map_err(|_| Error::invalid(format!("bad integer {s:?}")))
}

fn parse_rational(s: &str) -> Result<BigRational> {
    match s.split_once('/') {
        Some((p, q)) => {
            let q = parse_int(q)?;
            if q.is_zero() {
                return Err(Error::invalid("zero denominator"));
            }
            Ok(BigRational::new(parse_int(p)?, q))
        }
        None => Ok(BigRational::from_integer(parse_int(s)?)),
    }
}

fn parse_decimal(s: &str) -> Result<BigRational> {
    let (mant, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| Error::invalid(format!("bad exponent in {s:?}")))?),
        None => (s, 0),
    };
    let (neg, mant) = match mant.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mant.strip_prefix('+').unwrap_or(mant)),
    };
    let (ip, fp) = mant.split_once('.').unwrap_or((mant, ""));
    if ip.is_empty() && fp.is_empty() || !ip.chars().chain(fp.chars()).all(|c| c.is_ascii_digit()) {
        return Err(Error::invalid(format!("bad decimal {s:?}")));
    }
    let digits = format!("{ip}{fp}");
    let n = parse_int(if digits.is_empty() { "0" } else { &digits })?;
    let scale = exp - fp.len() as i32;
    let ten = BigInt::from(10);
    let mut r = if scale >= 0 {
        BigRational::from_integer(n * ten.pow(scale as u32))
    } else {
        BigRational::new(n, ten.pow((-scale) as u32))
    };
    if neg {
        r = -r;
    }
    Ok(r)
}

// `(p + q*sqrt(d))/c`, `p - sqrt(d)`, `q*sqrt(d)` and so on.
fn parse_quadratic(s: &str) -> Result<Quad> {
    let bad = || Error::invalid(format!("bad quadratic number {s:?}"));
    let (num, den) = if let Some(rest) = s.strip_prefix('(') {
        let close = rest.rfind(')').ok_or_else(bad)?;
        let inner = &rest[..close];
        let tail = &rest[close + 1..];
        let den = match tail.strip_prefix('/') {
            Some(c) => parse_rational(c)?,
            None if tail.is_empty() => BigRational::one(),
            None => return Err(bad()),
        };
        (inner.to_string(), den)
    } else {
        (s.to_string(), BigRational::one())
    };
    let at = num.find("sqrt(").ok_or_else(bad)?;
    let close = num[at..].find(')').ok_or_else(bad)? + at;
    let d: u64 = num[at + 5..close].parse().map_err(|_| bad())?;
    if !num[close + 1..].is_empty() {
        return Err(bad());
    }
    let head = &num[..at];
    let head = head.strip_suffix('*').unwrap_or(head);
    // split `head` into constant part and coefficient at the last sign
    let split = head.char_indices().filter(|&(i, c)| i > 0 && (c == '+' || c == '-')).map(|(i, _)| i).next_back();
    let (a_str, b_str) = match split {
        Some(i) => (&head[..i], &head[i..]),
        None => ("", head),
    };
    let a = if a_str.is_empty() { BigRational::zero() } else { parse_rational(a_str)? };
    let b = match b_str {
        "" | "+" => BigRational::one(),
        "-" => -BigRational::one(),
        t => parse_rational(t.strip_prefix('+').unwrap_or(t))?,
    };
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Quad::new(a / &den, b / &den, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn golden() -> Quad {
        ExactNumber::parse("golden").unwrap().exact().unwrap().clone()
    }

    #[test]
    fn golden_identity() {
        let g = golden();
        // g^2 = g + 1
        assert_eq!(g.clone() * g.clone(), g.clone() + Quad::int(1));
        assert_eq!(g.floor(), BigInt::from(1));
        assert!(g.is_algebraic_integer());
    }

    #[test]
    fn parse_forms() {
        let q = ExactNumber::parse("(1+sqrt(5))/2").unwrap();
        assert_eq!(q.exact().unwrap(), &golden());
        let r = ExactNumber::parse("3/2").unwrap();
        assert_eq!(r.exact().unwrap(), &Quad::rational(BigRational::new(3.into(), 2.into())));
        let s = ExactNumber::parse("1+2*sqrt(12)").unwrap();
        assert_eq!(s.exact().unwrap().d, 3);
        assert_eq!(s.exact().unwrap().b, BigRational::from_integer(4.into()));
        assert!(matches!(ExactNumber::parse("1.5").unwrap(), ExactNumber::DecimalApprox { .. }));
        assert!(ExactNumber::parse("abc").is_err());
        assert_eq!(ExactNumber::parse("sqrt(4)").unwrap().exact().unwrap(), &Quad::int(2));
    }

    #[test]
    fn floor_is_exact_near_integers() {
        // 1+sqrt(2) - 1 - sqrt(2) + 3 == 3
        let s = ExactNumber::parse("sqrt(2)").unwrap().exact().unwrap().clone();
        let x = Quad::int(3) + s.clone() - s;
        assert_eq!(x.floor(), BigInt::from(3));
        let y = ExactNumber::parse("2-sqrt(2)").unwrap().exact().unwrap().clone();
        assert_eq!(y.floor(), BigInt::from(0));
        assert_eq!((-y).floor(), BigInt::from(-1));
    }

    #[test]
    fn division() {
        let g = golden();
        let inv = Quad::int(1).div(&g).unwrap();
        assert_eq!(inv, g - Quad::int(1));
    }

    #[test]
    fn display_round_trip() {
        for t in ["(1+sqrt(5))/2", "3/2", "1-sqrt(2)", "(3-2*sqrt(5))/7"] {
            let q = ExactNumber::parse(t).unwrap();
            let back = ExactNumber::parse(&q.to_string()).unwrap();
            assert_eq!(q, back, "{t}");
        }
    }
}
