//! Topological entropy as the log of a Perron eigenvalue.

use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::fischer::subset_presentation;
use crate::subshift::graph::scc;
use crate::subshift::{Backend, LabeledGraph, SubshiftSpec};

const TOLERANCE: f64 = 1e-9;
const MAX_ITERATIONS: usize = 1_000_000;

/// Entropy bracketed by `lower <= value <= upper`, plus a closed form when known.
#[derive(Clone, Debug, PartialEq)]
pub struct Entropy {
    pub value: f64,
    pub lower: f64,
    pub upper: f64,
    pub symbolic: Option<String>,
}

impl Entropy {
    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn to_json(&self) -> Value {
        json!({
            "value": format!("{:.12}", self.value),
            "lower": format!("{:.12}", self.lower),
            "upper": format!("{:.12}", self.upper),
            "symbolic": self.symbolic,
        })
    }
}

impl fmt::Display for Entropy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.12}", self.value)?;
        if let Some(s) = &self.symbolic {
            write!(f, " = {s}")?;
        }
        Ok(())
    }
}

/// Bracket for the spectral radius of an irreducible nonnegative matrix.
fn perron_bracket(a: &[Vec<f64>]) -> (f64, f64) {
    let n = a.len();
    // A + I is primitive and shares the Perron vector of A
    let mut x = vec![1.0; n];
    let (mut lo, mut hi) = (0.0f64, f64::INFINITY);
    for _ in 0..MAX_ITERATIONS {
        let y: Vec<f64> = (0..n).map(|i| x[i] + a[i].iter().zip(&x).map(|(p, q)| p * q).sum::<f64>()).collect();
        let ratios = y.iter().zip(&x).map(|(p, q)| p / q);
        let (rlo, rhi) = ratios.fold((f64::INFINITY, 0.0f64), |(l, h), r| (l.min(r), h.max(r)));
        lo = lo.max(rlo - 1.0);
        hi = hi.min(rhi - 1.0);
        let norm = y.iter().cloned().fold(0.0, f64::max);
        x = y.into_iter().map(|v| v / norm).collect();
        if hi <= lo || hi.ln() - lo.ln() < TOLERANCE * 0.01 {
            break;
        }
    }
    (lo, hi.max(lo))
}

/// Entropy of the edge shift of a nonnegative integer matrix.
pub fn matrix_entropy(a: &[Vec<u64>]) -> Result<Entropy> {
    let n = a.len();
    if a.iter().any(|r| r.len() != n) {
        return Err(Error::BadMatrix("matrix is not square".into()));
    }
    let adj: Vec<Vec<usize>> = a.iter().map(|r| (0..n).filter(|&j| r[j] > 0).collect()).collect();
    let (mut lo, mut hi) = (0.0f64, 0.0f64);
    for comp in scc(&adj) {
        let sub: Vec<Vec<f64>> = comp.iter().map(|&i| comp.iter().map(|&j| a[i][j] as f64).collect()).collect();
        if sub.iter().all(|r| r.iter().all(|&v| v == 0.0)) {
            continue;
        }
        let (l, h) = perron_bracket(&sub);
        lo = lo.max(l);
        hi = hi.max(h);
    }
    if hi == 0.0 {
        return Err(Error::Unsupported("matrix is nilpotent; the shift is empty".into()));
    }
    let value = (0.5 * (lo + hi)).ln();
    Ok(Entropy { value, lower: lo.ln(), upper: hi.ln(), symbolic: None })
}

/// Entropy of the edge shift of `g`; equals the entropy of its labels when `g` is resolving.
pub fn entropy_of_graph(g: &LabeledGraph) -> Result<Entropy> {
    matrix_entropy(&g.adjacency_counts())
}

/// Topological entropy of a sofic or beta shift.
pub fn entropy(spec: &SubshiftSpec) -> Result<Entropy> {
    if let Backend::Beta(b) = spec.backend() {
        let v = b.beta.to_f64().ln();
        return Ok(Entropy { value: v, lower: v, upper: v, symbolic: Some(format!("log({})", b.beta)) });
    }
    if let Backend::HigherBlock { base, .. } = spec.backend() {
        return entropy(base);
    }
    let g = spec.presentation().ok_or_else(|| Error::Unsupported("entropy needs a sofic or beta shift".into()))?;
    if g.is_left_resolving() || g.is_right_resolving() {
        entropy_of_graph(g)
    } else {
        entropy_of_graph(&subset_presentation(g)?.graph)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subshift::{even_graph, full_shift, golden_mean};

    #[test]
    fn full_two_shift() {
        let e = entropy(&full_shift(2)).unwrap();
        assert!((e.value - 2f64.ln()).abs() < 1e-9);
        assert!(e.lower <= 2f64.ln() + 1e-12 && 2f64.ln() <= e.upper + 1e-12);
    }

    #[test]
    fn golden_mean_sft() {
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let e = entropy(&golden_mean()).unwrap();
        assert!((e.value - phi.ln()).abs() < 1e-9);
        assert!(e.width() < 1e-9);
    }

    #[test]
    fn even_shift_matches_golden_mean() {
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let e = entropy_of_graph(&even_graph()).unwrap();
        assert!((e.value - phi.ln()).abs() < 1e-9);
    }

    #[test]
    fn periodic_matrix_converges() {
        let e = matrix_entropy(&[vec![0, 2], vec![2, 0]]).unwrap();
        assert!((e.value - 2f64.ln()).abs() < 1e-9);
    }
}
