//! K-groups of Cuntz-Krieger algebras and of beta shifts.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use super::snf::{smith_normal_form, IntMatrix};
use crate::builders::beta::Beta;
use crate::error::{Error, Result};

/// A finitely generated abelian group `K0` together with the rank of `K1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KGroupResult {
    pub k0_free_rank: usize,
    /// Invariant factors `d_1 | d_2 | ...`, each at least 2.
    pub k0_torsion: Vec<BigInt>,
    pub k1_free_rank: usize,
}

impl KGroupResult {
    /// `K0 = Z/nZ` (`Z` when `n = 0`) and `K1 = 0`.
    pub fn cyclic(n: BigInt) -> Self {
        let n = n.abs();
        if n.is_zero() {
            KGroupResult { k0_free_rank: 1, k0_torsion: Vec::new(), k1_free_rank: 0 }
        } else if n.is_one() {
            KGroupResult { k0_free_rank: 0, k0_torsion: Vec::new(), k1_free_rank: 0 }
        } else {
            KGroupResult { k0_free_rank: 0, k0_torsion: vec![n], k1_free_rank: 0 }
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.k0_free_rank == 0 && self.k0_torsion.is_empty() && self.k1_free_rank == 0
    }

    /// Order of `K0` when finite.
    pub fn k0_order(&self) -> Option<BigInt> {
        (self.k0_free_rank == 0).then(|| self.k0_torsion.iter().product())
    }

    pub fn to_json(&self) -> Value {
        let torsion: Vec<Value> = self.k0_torsion.iter().map(big_to_json).collect();
        json!({
            "k0": { "free": self.k0_free_rank, "torsion": torsion },
            "k1": { "free": self.k1_free_rank },
        })
    }
}

fn big_to_json(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

fn group_text(free: usize, torsion: &[BigInt]) -> String {
    let mut parts = Vec::new();
    match free {
        0 => {}
        1 => parts.push("Z".to_string()),
        r => parts.push(format!("Z^{r}")),
    }
    parts.extend(torsion.iter().map(|d| format!("Z/{d}Z")));
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

impl fmt::Display for KGroupResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "K0 = {}, K1 = {}",
            group_text(self.k0_free_rank, &self.k0_torsion),
            group_text(self.k1_free_rank, &[])
        )
    }
}

/// `K0 = coker(I - A^T)` and `K1 = ker(I - A^T)` for a square nonnegative matrix.
pub fn ck_kgroups(a: &[Vec<u64>]) -> Result<KGroupResult> {
    let n = a.len();
    if a.iter().any(|row| row.len() != n) {
        return Err(Error::BadMatrix("matrix is not square".into()));
    }
    let m: IntMatrix =
        (0..n).map(|i| (0..n).map(|j| BigInt::from((i == j) as u8) - BigInt::from(a[j][i])).collect()).collect();
    let snf = smith_normal_form(&m);
    let diag = snf.diagonal();
    let rank = diag.iter().filter(|x| !x.is_zero()).count();
    let k0_torsion = diag.into_iter().filter(|x| *x > BigInt::one()).collect();
    Ok(KGroupResult { k0_free_rank: n - rank, k0_torsion, k1_free_rank: n - rank })
}

/// Which case of the expansion of 1 determined the beta-shift K-groups.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BetaBranch {
    Finite,
    EventuallyPeriodic,
    Aperiodic,
}

impl fmt::Display for BetaBranch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BetaBranch::Finite => "finite expansion of 1",
            BetaBranch::EventuallyPeriodic => "eventually periodic expansion of 1",
            BetaBranch::Aperiodic => "aperiodic expansion of 1",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BetaKGroups {
    pub groups: KGroupResult,
    pub branch: BetaBranch,
}

impl BetaKGroups {
    pub fn to_json(&self) -> Value {
        let mut v = self.groups.to_json();
        v["branch"] = json!(self.branch.to_string());
        v
    }
}

/// K-groups of the beta shift, classifying the expansion of 1 to `depth` digits.
pub fn beta_kgroups(beta: &Beta, depth: usize) -> Result<BetaKGroups> {
    beta.kgroups(depth)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ones(n: usize) -> Vec<Vec<u64>> {
        vec![vec![1; n]; n]
    }

    #[test]
    fn full_shift_groups() {
        for n in 2..=5u64 {
            let k = ck_kgroups(&ones(n as usize)).unwrap();
            assert_eq!(k, KGroupResult::cyclic(BigInt::from(n - 1)));
        }
        assert_eq!(ck_kgroups(&ones(4)).unwrap().to_string(), "K0 = Z/3Z, K1 = 0");
    }

    #[test]
    fn identity_matrix_has_free_groups() {
        let k = ck_kgroups(&[vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(k.k0_free_rank, 2);
        assert_eq!(k.k1_free_rank, 2);
        assert_eq!(k.to_string(), "K0 = Z^2, K1 = Z^2");
    }

    #[test]
    fn json_shape() {
        let v = ck_kgroups(&ones(3)).unwrap().to_json();
        assert_eq!(v, json!({"k0": {"free": 0, "torsion": [2]}, "k1": {"free": 0}}));
    }

    #[test]
    fn beta_branches() {
        let k = beta_kgroups(&Beta::parse("4").unwrap(), 20).unwrap();
        assert_eq!(k.branch, BetaBranch::Finite);
        assert_eq!(k.groups.to_string(), "K0 = Z/3Z, K1 = 0");
        assert!(beta_kgroups(&Beta::parse("golden").unwrap(), 20).unwrap().groups.is_trivial());
        let k = beta_kgroups(&Beta::parse("3/2").unwrap(), 40).unwrap();
        assert_eq!(k.branch, BetaBranch::Aperiodic);
        assert_eq!(k.groups.to_string(), "K0 = Z, K1 = 0");
        assert!(matches!(beta_kgroups(&Beta::parse("1.7+-1e-9").unwrap(), 20), Err(Error::Unclassified(20))));
    }
}
