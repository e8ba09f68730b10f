//! Results computed two independent ways.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use lamgraph::builders::{beta_lgs, dyck_lgs, markov_dyck_lgs, motzkin_lgs, Beta, ExactNumber};
use lamgraph::conjugacy::{
    apply_sliding_code, check_coe, check_eventual_conjugacy, check_one_sided_conjugacy, higher_block_codes, path_space,
    prime_alphabet, prime_letter_count, BlockMap, BlockWordMap, Cocycle, CoeData, EventualConjugacyData, PathMap,
    Substitution,
};
use lamgraph::invariants::{beta_kgroups, ck_kgroups, entropy, entropy_of_graph};
use lamgraph::lambda_graph::isomorphic_from_level;
use lamgraph::subshift::{even_shift, full_shift, golden_mean, odd_shift};
use lamgraph::{
    build_min_lgs, fischer_cover, min_lgs_from_fischer, LambdaGraphTruncation, SubshiftSpec, Sym, SyncSearchParams,
    Verdict, Word,
};

use crate::fixtures::{eventual_fixture, markov_a};

fn fischer_lgs(spec: &SubshiftSpec, depth: usize) -> LambdaGraphTruncation {
    min_lgs_from_fischer(&fischer_cover(spec).unwrap(), depth).unwrap().lgs
}

#[test]
fn min_lgs_matches_fischer_system_for_sofic_shifts() {
    for spec in [even_shift(), odd_shift(), golden_mean(), full_shift(3)] {
        let m = build_min_lgs(&spec, 4, &SyncSearchParams::new(6)).unwrap();
        let f = fischer_lgs(&spec, 4);
        assert!(isomorphic_from_level(&m, &f, 2).unwrap(), "{:?} vs {:?}", m.sizes(), f.sizes());
    }
}

#[test]
fn all_ones_markov_dyck_is_dyck() {
    let a = markov_dyck_lgs(&[vec![1, 1], vec![1, 1]], 3).unwrap();
    assert!(isomorphic_from_level(&a, &dyck_lgs(2, 3).unwrap(), 0).unwrap());
}

#[test]
fn markov_dyck_level_sizes() {
    let g = markov_dyck_lgs(&markov_a(), 2).unwrap();
    assert_eq!(g.sizes(), &[1, 2, 3]);
}

#[test]
fn motzkin_adds_unit_edges() {
    let d = dyck_lgs(2, 2).unwrap();
    let m = motzkin_lgs(2, 2).unwrap();
    assert_eq!(m.sizes(), d.sizes());
    // each vertex w gains one unit edge per one-letter extension w x
    assert_eq!(m.num_edges()[1], d.num_edges()[1] + 4);
    assert!(m.validate().all_ok());
}

#[test]
fn dyck_min_lgs_matches_builder_for_three_brackets() {
    let d = dyck_lgs(3, 2).unwrap();
    let m = build_min_lgs(&SubshiftSpec::dyck(3).unwrap(), 2, &SyncSearchParams::new(6)).unwrap();
    assert!(isomorphic_from_level(&d, &m, 0).unwrap());
}

/// Greedy digits of 1 by exact rational arithmetic.
fn rational_digits(p: i64, q: i64, n: usize) -> Vec<Sym> {
    let beta = BigRational::new(BigInt::from(p), BigInt::from(q));
    let mut x = BigRational::one();
    let mut out = Vec::new();
    for _ in 0..n {
        let bx = &beta * &x;
        let d = bx.floor();
        out.push(d.to_integer().to_u16().unwrap());
        x = bx - d;
    }
    out
}

#[test]
fn rational_expansions_match_exact_oracle() {
    let one = ExactNumber::parse("1").unwrap();
    for (p, q) in [(3, 2), (5, 2), (7, 3), (4, 1), (9, 4)] {
        let b = Beta::parse(&format!("{p}/{q}")).unwrap();
        let got = b.expand(&one, 24).unwrap().digits;
        assert_eq!(got, rational_digits(p, q, 24), "{p}/{q}");
    }
}

#[test]
fn integer_beta_groups_match_full_shift_matrix() {
    for n in 2..=5u64 {
        let b = beta_kgroups(&Beta::parse(&n.to_string()).unwrap(), 16).unwrap().groups;
        let c = ck_kgroups(&vec![vec![1; n as usize]; n as usize]).unwrap();
        assert_eq!(b, c, "beta {n}");
    }
}

#[test]
fn beta_level_counts() {
    assert_eq!(beta_lgs(&Beta::parse("2").unwrap(), 3).unwrap().sizes(), &[1, 1, 1, 1]);
    assert_eq!(beta_lgs(&Beta::parse("golden").unwrap(), 3).unwrap().sizes(), &[1, 2, 2, 2]);
}

#[test]
fn beta_entropy_matches_sft_entropy() {
    let b = entropy(&SubshiftSpec::beta_shift(Beta::parse("golden").unwrap()).unwrap()).unwrap();
    let s = entropy(&golden_mean()).unwrap();
    assert!((b.value - s.value).abs() < 1e-9);
    let g = entropy_of_graph(&fischer_cover(&full_shift(3)).unwrap()).unwrap();
    assert!((g.value - 3f64.ln()).abs() < 1e-9);
}

#[test]
fn conjugacy_implies_shifted_word_counts() {
    let s = golden_mean();
    let (hb, fwd, bwd) = higher_block_codes(&s, 2).unwrap();
    assert_eq!(check_one_sided_conjugacy(&s, &hb, &fwd, &bwd, 8).unwrap().verdict, Verdict::Yes);
    for l in 1..6 {
        assert_eq!(hb.admissible_words(l).unwrap().len(), s.admissible_words(l + 1).unwrap().len());
    }
}

#[test]
fn shallow_conjugacy_check_is_unknown() {
    let s = golden_mean();
    let (hb, fwd, bwd) = higher_block_codes(&s, 3).unwrap();
    assert!(matches!(check_one_sided_conjugacy(&s, &hb, &fwd, &bwd, 2).unwrap().verdict, Verdict::UnknownUpTo(2)));
}

#[test]
fn even_to_odd_code_on_a_word() {
    let e = even_shift();
    let sub = Substitution::from_names(&e, &odd_shift(), &[("0", "0"), ("1", "10")]).unwrap();
    assert_eq!(sub.apply(&[0, 1, 1]), Word(vec![0, 1, 0, 1, 0]));
    let (_, two, _) = higher_block_codes(&e, 2).unwrap();
    assert_eq!(apply_sliding_code(&two, &[0, 1, 1]).unwrap().len(), 2);
}

#[test]
fn eventual_fixture_and_corruption() {
    let (s1, s2, data) = eventual_fixture();
    assert_eq!(check_eventual_conjugacy(&s1, &s2, &data, 10).unwrap().verdict, Verdict::Yes);
    let mut h2 = data.h2.clone();
    let key = h2.table.keys().min().unwrap().clone();
    let v = h2.table[&key];
    h2.table.insert(key, 1 - v);
    let bad = EventualConjugacyData { h2, ..data };
    let r = check_eventual_conjugacy(&s1, &s2, &bad, 10).unwrap();
    assert_eq!(r.verdict, Verdict::No);
    assert!(r.witness.is_some());
}

#[test]
fn lag_zero_reduces_to_one_sided_conjugacy() {
    let s = golden_mean();
    let (hb, fwd, bwd) = higher_block_codes(&s, 2).unwrap();
    let empty = |spec: &SubshiftSpec, w: usize| BlockWordMap::from_fn(spec, w, |_| Word::empty()).unwrap();
    let data = EventualConjugacyData::new(0, empty(&s, 2), fwd.clone(), empty(&hb, 2), bwd.clone()).unwrap();
    let lagged = check_eventual_conjugacy(&s, &hb, &data, 8).unwrap().verdict;
    let direct = check_one_sided_conjugacy(&s, &hb, &fwd, &bwd, 8).unwrap().verdict;
    assert_eq!(lagged, direct);
}

#[test]
fn prime_letters_counted_two_ways() {
    let (_, s2, data) = eventual_fixture();
    assert_eq!(prime_letter_count(&s2, &data).unwrap(), prime_alphabet(&s2, &data).unwrap().letters.len());
}

/// COE between the even and odd path spaces induced by `3 -> 31`.
fn even_odd_coe() -> (CoeData, LambdaGraphTruncation, LambdaGraphTruncation) {
    let (g1, g2) = (fischer_lgs(&even_shift(), 4), fischer_lgs(&odd_shift(), 4));
    let sub = Substitution::new(vec![Word(vec![0]), Word(vec![1]), Word(vec![2, 0])]).unwrap();
    let p1 = path_space(&g1).unwrap();
    let l1: HashMap<Word, usize> = (0..3).map(|s| (Word(vec![s as Sym]), sub.images[s].len())).collect();
    let p2 = path_space(&g2).unwrap();
    let mut k2 = HashMap::new();
    for s in 0..p2.letters.len() as Sym {
        k2.insert(Word(vec![s]), usize::from(s == 2));
    }
    assert_eq!(p1.letters.len(), 3);
    let labels = Substitution::from_names(&even_shift(), &odd_shift(), &[("0", "0"), ("1", "10")]).unwrap();
    let data = CoeData {
        h: PathMap::Substitution(sub.clone()),
        h_inv: PathMap::Desubstitution(sub),
        k1: Cocycle::Constant(0),
        l1: Cocycle::Window { window: 1, table: l1 },
        k2: Cocycle::Window { window: 1, table: k2 },
        l2: Cocycle::Constant(1),
        label_map: Some(PathMap::Substitution(labels)),
    };
    (data, g1, g2)
}

#[test]
fn even_odd_orbit_equivalence() {
    let (data, g1, g2) = even_odd_coe();
    let r = check_coe(&data, &g1, &g2, 6).unwrap();
    assert_eq!(r.verdict, Verdict::Yes, "{r:?}");
}

#[test]
fn corrupted_cocycle_is_refuted() {
    let (data, g1, g2) = even_odd_coe();
    let bad = CoeData { l1: Cocycle::Constant(1), ..data };
    let r = check_coe(&bad, &g1, &g2, 6).unwrap();
    assert_eq!(r.verdict, Verdict::No);
    assert!(r.witness.is_some());
}

#[test]
fn cocycle_window_beyond_depth_is_an_error() {
    let (data, g1, g2) = even_odd_coe();
    let wide = Cocycle::Window { window: 3, table: HashMap::new() };
    assert!(check_coe(&CoeData { k1: wide, ..data }, &g1, &g2, 2).is_err());
}

#[test]
fn json_round_trips() {
    let g = dyck_lgs(2, 2).unwrap();
    let back = LambdaGraphTruncation::from_json(&g.to_json().unwrap()).unwrap();
    assert_eq!(back.to_json().unwrap(), g.to_json().unwrap());
    for spec in [golden_mean(), even_shift(), SubshiftSpec::dyck(2).unwrap(), golden_mean().higher_block(2).unwrap()] {
        let text = spec.to_json().unwrap();
        assert_eq!(SubshiftSpec::from_json(&text).unwrap().to_json().unwrap(), text);
    }
    let f = fischer_cover(&odd_shift()).unwrap();
    let text = f.to_json().unwrap();
    assert_eq!(lamgraph::LabeledGraph::from_json(&text).unwrap().to_json().unwrap(), text);
}

#[test]
fn foreign_schema_is_rejected() {
    let text = golden_mean().to_json().unwrap().replace("lamgraph/1", "lamgraph/9");
    assert!(SubshiftSpec::from_json(&text).is_err());
    let bare: serde_json::Value = serde_json::from_str(&golden_mean().to_json().unwrap()).unwrap();
    let mut bare = bare.as_object().unwrap().clone();
    bare.remove("schema");
    assert!(SubshiftSpec::from_json(&serde_json::to_string(&bare).unwrap()).is_ok());
}

#[test]
fn block_maps_reject_partial_windows() {
    let s = golden_mean();
    let mut table = HashMap::new();
    table.insert(Word(vec![0]), 0);
    let partial = BlockMap::new(1, table).unwrap();
    assert!(apply_sliding_code(&partial, &[0, 1]).is_err());
    let id = BlockMap::identity(s.alphabet());
    assert_eq!(check_one_sided_conjugacy(&s, &s, &id, &partial, 4).unwrap().verdict, Verdict::No);
}
