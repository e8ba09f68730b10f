//! Randomised invariants.

use num_bigint::BigInt;
use proptest::prelude::*;

use lamgraph::builders::{dyck_lgs, MonoidKind};
use lamgraph::conjugacy::{apply_sliding_code, higher_block_codes};
use lamgraph::invariants::{ck_kgroups, smith_normal_form, IntMatrix};
use lamgraph::lambda_graph::isomorphic_from_level;
use lamgraph::subshift::{even_shift, golden_mean};
use lamgraph::Sym;

use crate::fixtures::dyck_rewrite;

fn int_matrix(max_dim: usize) -> impl Strategy<Value = IntMatrix> {
    (1..=max_dim, 1..=max_dim)
        .prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec((-6i64..=6).prop_map(BigInt::from), c), r))
}

fn zero_one_square(max_dim: usize) -> impl Strategy<Value = Vec<Vec<u64>>> {
    (1..=max_dim).prop_flat_map(|n| prop::collection::vec(prop::collection::vec(0u64..=1, n), n))
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn smith_form_factors_verify(m in int_matrix(5)) {
        let snf = smith_normal_form(&m);
        prop_assert!(snf.verify(&m));
    }

    #[test]
    fn kgroups_are_invariant_under_relabelling((a, p) in zero_one_square(5).prop_flat_map(|a| {
        let n = a.len();
        (Just(a), permutation(n))
    })) {
        let n = a.len();
        let b: Vec<Vec<u64>> = (0..n).map(|i| (0..n).map(|j| a[p[i]][p[j]]).collect()).collect();
        prop_assert_eq!(ck_kgroups(&a).unwrap(), ck_kgroups(&b).unwrap());
    }

    #[test]
    fn dyck_monoid_matches_rewriting(w in prop::collection::vec(0 as Sym..6, 0..12)) {
        let m = MonoidKind::dyck(3);
        let r = m.reduce(&w);
        let expected = dyck_rewrite(3, &w);
        prop_assert_eq!(r.is_zero(), expected.is_none());
        prop_assert_eq!(m.reduced_word(&r), expected);
    }

    #[test]
    fn higher_block_code_commutes_with_shift(k in 1usize..4, start in 0usize..20, len in 6usize..12) {
        let spec = golden_mean();
        let (_, fwd, _) = higher_block_codes(&spec, k).unwrap();
        let words = spec.admissible_words(len).unwrap();
        let x = &words[start % words.len()].0;
        let image = apply_sliding_code(&fwd, x).unwrap();
        let shifted = apply_sliding_code(&fwd, &x[1..]).unwrap();
        prop_assert_eq!(&image.0[1..], &shifted.0[..]);
    }

    #[test]
    fn admissible_words_are_factorial(len in 1usize..9, pick in 0usize..64) {
        let spec = even_shift();
        let words = spec.admissible_words(len).unwrap();
        let w = &words[pick % words.len()].0;
        for i in 0..w.len() {
            for j in i..=w.len() {
                prop_assert!(spec.is_admissible(&w[i..j]).unwrap());
            }
        }
    }

    #[test]
    fn relabelled_lambda_graph_stays_valid_and_isomorphic(seed in any::<u64>()) {
        use rand::{seq::SliceRandom, SeedableRng};
        let g = dyck_lgs(2, 3).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let perms: Vec<Vec<usize>> = g
            .sizes()
            .iter()
            .map(|&n| {
                let mut p: Vec<usize> = (0..n).collect();
                p.shuffle(&mut rng);
                p
            })
            .collect();
        let h = g.permuted(&perms);
        prop_assert!(h.validate().all_ok());
        prop_assert!(isomorphic_from_level(&g, &h, 0).unwrap());
    }
}
