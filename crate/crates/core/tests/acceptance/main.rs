//! Acceptance criteria 1-12, one PASS/FAIL line each, plus the CLI, cross-check
//! and property suites. They share one binary so a failing criterion does not
//! stop the other suites from running.

mod cli;
mod crosscheck;
mod fixtures;
mod properties;

use std::io::Write;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use lamgraph::builders::{beta_lgs, dyck_lgs, Beta, BetaClass, MonoidKind, Quad};
use lamgraph::conjugacy::{
    build_lambda2_prime, check_eventual_conjugacy, check_h_hat, check_one_sided_conjugacy, check_substitution_morphism,
    higher_block_codes, prime_alphabet, Substitution,
};
use lamgraph::invariants::{beta_kgroups, ck_kgroups, entropy, smith_normal_form, KGroupResult};
use lamgraph::lambda_graph::{
    check_condition_i, check_iota_irreducible, check_lambda_irreducible, isomorphic_from_level,
    presented_language_irreducible,
};
use lamgraph::subshift::{even_graph, even_shift, full_shift, golden_mean, odd_graph, odd_shift};
use lamgraph::{
    build_min_lgs, ck_matrix, fischer_cover, min_lgs_from_fischer, LambdaGraphTruncation, SubshiftSpec,
    SyncSearchParams, Verdict, Word,
};

use fixtures::*;

/// Entropy tolerance.
const ENTROPY_TOL: f64 = 1e-9;
const SNF_SAMPLES: usize = 200;
const SNF_SEED: u64 = 0x5eed;

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

/// Runs one criterion under a time budget and prints its line past the capture.
fn criterion(n: u32, title: &str, budget: Duration, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let o = f();
    let elapsed = start.elapsed();
    let in_time = elapsed <= budget;
    let ok = o.ok && in_time;
    let timing = format!("{:.3}s of {:.0}s", elapsed.as_secs_f64(), budget.as_secs_f64());
    let line = format!(
        "criterion {n:>2}: {} {title}: {}{} ({timing})\n",
        if ok { "PASS" } else { "FAIL" },
        o.detail,
        if in_time { "" } else { "; over time budget" },
    );
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(line.as_bytes());
    let _ = out.flush();
    ok
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn c1() -> Outcome {
    let m0 = ck_matrix(&even_graph()).unwrap();
    let m1 = ck_matrix(&odd_graph()).unwrap();
    let ok = m0.entries == rows(&A0) && m1.entries == rows(&A1);
    outcome(ok, format!("even {:?} over {:?}, odd {:?} over {:?}", m0.entries, m0.labels, m1.entries, m1.labels))
}

fn c2() -> Outcome {
    let m = build_min_lgs(&even_shift(), 4, &SyncSearchParams::new(6)).unwrap();
    let f = min_lgs_from_fischer(&fischer_cover(&even_shift()).unwrap(), 4).unwrap();
    let sizes_ok = m.sizes()[1..].iter().all(|&s| s == 2);
    let iso = isomorphic_from_level(&m, &f.lgs, 2).unwrap();
    outcome(sizes_ok && iso, format!("m(l) = {:?}, isomorphic to the Fischer system from level 2: {iso}", m.sizes()))
}

fn c3() -> Outcome {
    let d = dyck_lgs(2, 3).unwrap();
    let m = build_min_lgs(&SubshiftSpec::dyck(2).unwrap(), 3, &SyncSearchParams::new(8)).unwrap();
    let iso = isomorphic_from_level(&d, &m, 0).unwrap();
    let sizes_ok = d.sizes() == [1, 2, 4, 8];
    let e12 = d.num_edges()[1];
    outcome(iso && sizes_ok && e12 == 12, format!("m(l) = {:?}, |E_12| = {e12}, isomorphic: {iso}", d.sizes()))
}

fn c4() -> Outcome {
    let mut bad = Vec::new();
    for (name, g) in builder_systems(4) {
        let r = g.validate();
        if !(r.left_resolving && r.predecessor_separated && r.local_property && r.essential) {
            bad.push(format!("{name}: {:?}", r.failures));
        }
    }
    outcome(bad.is_empty(), if bad.is_empty() { "7 systems valid at L = 4".into() } else { bad.join("; ") })
}

fn c5() -> Outcome {
    let mut checked = 0;
    let mut mismatches = Vec::new();
    let dyck = MonoidKind::dyck(2);
    let dyck_spec = SubshiftSpec::dyck(2).unwrap();
    let full = vec![vec![1u8; 2]; 2];
    let markov = MonoidKind::markov(&markov_a()).unwrap();
    let markov_spec = SubshiftSpec::markov_dyck(markov_a()).unwrap();
    for len in 0..=6 {
        for w in words(4, len) {
            checked += 1;
            let mono = !dyck.reduce(&w).is_zero();
            let rewrite = dyck_rewrite(2, &w).is_some();
            let paths = acts_on_some_path(&full, None, &w);
            let spec = dyck_spec.is_admissible(&w).unwrap();
            if !(mono == rewrite && mono == paths && mono == spec) {
                mismatches.push(format!("dyck {w:?}"));
            }
            let mono = !markov.reduce(&w).is_zero();
            let paths = acts_on_some_path(&markov_a(), None, &w);
            let spec = markov_spec.is_admissible(&w).unwrap();
            if !(mono == paths && mono == spec) {
                mismatches.push(format!("markov {w:?}"));
            }
        }
    }
    let detail = format!(
        "{checked} words per alphabet, {} mismatches {:?}",
        mismatches.len(),
        mismatches.iter().take(3).collect::<Vec<_>>()
    );
    outcome(mismatches.is_empty(), detail)
}

fn c6() -> Outcome {
    let two = Beta::parse("2").unwrap().classify(32).unwrap();
    let golden = Beta::parse("golden").unwrap();
    let gc = golden.classify(32).unwrap();
    let witness = golden.b_values(2).unwrap()[2] == Quad::int(1);
    let rational = Beta::parse("3/2").unwrap().classify(32).unwrap();
    let sizes = beta_lgs(&Beta::parse("3/2").unwrap(), 4).unwrap().sizes().to_vec();
    let ok = two == BetaClass::FullShift
        && gc == BetaClass::Sft { length: 2 }
        && witness
        && matches!(rational, BetaClass::NonSoficProven { .. })
        && sizes == [1, 2, 3, 4, 5];
    outcome(ok, format!("2: {two}; golden: {gc}, b_2 = 1: {witness}; 3/2: {rational}; m(l) = {sizes:?}"))
}

fn c7() -> Outcome {
    let b4 = beta_kgroups(&Beta::parse("4").unwrap(), 64).unwrap().groups;
    let bg = beta_kgroups(&Beta::parse("golden").unwrap(), 64).unwrap().groups;
    let b32 = beta_kgroups(&Beta::parse("3/2").unwrap(), 64).unwrap().groups;
    let cyclic_ok = (2..=5u64).all(|n| {
        ck_kgroups(&vec![vec![1; n as usize]; n as usize]).unwrap() == KGroupResult::cyclic(BigInt::from(n - 1))
    });
    let k0 = ck_kgroups(&rows(&A0)).unwrap();
    let k1 = ck_kgroups(&rows(&A1)).unwrap();
    let ok = b4 == KGroupResult::cyclic(BigInt::from(3))
        && bg.is_trivial()
        && b32.k0_free_rank == 1
        && b32.k0_torsion.is_empty()
        && b32.k1_free_rank == 0
        && cyclic_ok
        && k0.is_trivial()
        && k1.is_trivial();
    outcome(
        ok,
        format!("beta 4: {b4}; golden: {bg}; 3/2: {b32}; ones N = 2..5 cyclic: {cyclic_ok}; A0: {k0}; A1: {k1}"),
    )
}

/// Cofactor expansion, independent of the library's elimination.
fn det_cofactor(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut acc = BigInt::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<BigInt>> = m[1..]
            .iter()
            .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, x)| x.clone()).collect())
            .collect();
        let term = &m[0][j] * det_cofactor(&minor);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

fn matmul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let cols = b.first().map_or(0, Vec::len);
    a.iter().map(|r| (0..cols).map(|j| r.iter().zip(b).map(|(x, row)| x * &row[j]).sum()).collect()).collect()
}

fn c8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SNF_SEED);
    let mut bad = 0;
    for _ in 0..SNF_SAMPLES {
        let (r, c) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
        let m: Vec<Vec<BigInt>> =
            (0..r).map(|_| (0..c).map(|_| BigInt::from(rng.gen_range(-5..=5))).collect()).collect();
        let s = smith_normal_form(&m);
        let product = matmul(&matmul(&s.u, &m), &s.v);
        let diagonal = product == s.d
            && s.d.iter().enumerate().all(|(i, row)| row.iter().enumerate().all(|(j, x)| i == j || x.is_zero()));
        let unimodular = det_cofactor(&s.u).abs().is_one() && det_cofactor(&s.v).abs().is_one();
        let diag = s.diagonal();
        let chain = diag.iter().all(|x| !x.is_negative())
            && diag.windows(2).all(|p| if p[0].is_zero() { p[1].is_zero() } else { (&p[1] % &p[0]).is_zero() });
        if !(diagonal && unimodular && chain && s.verify(&m)) {
            bad += 1;
        }
    }
    outcome(bad == 0, format!("{SNF_SAMPLES} matrices, {bad} failures"))
}

fn c9() -> Outcome {
    let mut parts = Vec::new();
    let mut ok = true;
    for (name, spec) in [("golden", golden_mean()), ("even", even_shift())] {
        let (hb, fwd, bwd) = higher_block_codes(&spec, 2).unwrap();
        let v = check_one_sided_conjugacy(&spec, &hb, &fwd, &bwd, 10).unwrap().verdict;
        ok &= v == Verdict::Yes;
        parts.push(format!("{name} vs 2-block: {v}"));
    }
    let e0 = ck_matrix(&even_graph()).unwrap().edge_shift().unwrap();
    let e1 = ck_matrix(&odd_graph()).unwrap().edge_shift().unwrap();
    let sub = Substitution::new(vec![Word(vec![0]), Word(vec![1]), Word(vec![2, 0])]).unwrap();
    let v = check_substitution_morphism(&e0, &e1, &sub, 8).unwrap().verdict;
    ok &= v == Verdict::Yes;
    parts.push(format!("3 -> 31: {v}"));
    let (e, o) = (even_shift(), odd_shift());
    let sub = Substitution::from_names(&e, &o, &[("0", "0"), ("1", "10")]).unwrap();
    let v = check_substitution_morphism(&e, &o, &sub, 8).unwrap().verdict;
    ok &= v == Verdict::Yes;
    parts.push(format!("0 -> 0, 1 -> 10: {v}"));
    let spec = golden_mean();
    let (hb, mut fwd, bwd) = higher_block_codes(&spec, 2).unwrap();
    let key = spec.admissible_words(2).unwrap()[1].clone();
    let old = fwd.table[&key];
    fwd.table.insert(key, (old + 1) % 3);
    let r = check_one_sided_conjugacy(&spec, &hb, &fwd, &bwd, 10).unwrap();
    let refuted = r.verdict == Verdict::No && r.witness.is_some();
    ok &= refuted;
    parts.push(format!("mutated entry: {} with witness {:?}", r.verdict, r.witness.unwrap_or_default()));
    outcome(ok, parts.join("; "))
}

fn c10() -> Outcome {
    let (s1, s2, data) = eventual_fixture();
    let v = check_eventual_conjugacy(&s1, &s2, &data, 12).unwrap().verdict;
    let prime = build_lambda2_prime(&s2, &data, 12).unwrap();
    let pa = prime_alphabet(&s2, &data).unwrap();
    let hat = check_h_hat(&s1, &prime, &pa, &data, 12).unwrap().verdict;
    let c_prime: Vec<usize> = (1..=6).map(|l| prime.admissible_words(l).unwrap().len()).collect();
    let c_one: Vec<usize> = (1..=6).map(|l| s1.admissible_words(l).unwrap().len()).collect();
    let counts = c_prime == c_one;
    // The letter map reads a source window of length max(M, N1 + L - 1), so
    // counts line up only after that shift.
    let span = data.m.max(data.h1.window + data.l() - 1);
    let shifted = (1..=6).all(|l| s1.admissible_words(l + span - 1).unwrap().len() == c_prime[l - 1]);
    outcome(
        v == Verdict::Yes && hat == Verdict::Yes && counts,
        format!(
            "eventual: {v}; h-hat conjugacy: {hat}; |B_l| auxiliary {c_prime:?} vs source {c_one:?}; \
             auxiliary equals |B_(l+{})| of the source: {shifted}",
            span - 1
        ),
    )
}

/// Condition (I) continuation length and the depth of the structural corpus.
const COND_I_LEN: usize = 3;
const CORPUS_DEPTH: usize = 5;

fn c11() -> Outcome {
    let mut bad = Vec::new();
    let systems = builder_systems(CORPUS_DEPTH);
    for (name, g) in &systems {
        let v = check_condition_i(g, COND_I_LEN).unwrap().verdict;
        if v != Verdict::Yes {
            bad.push(format!("condition (I) on {name}: {v}"));
        }
    }
    let single = check_condition_i(&single_loop(CORPUS_DEPTH), COND_I_LEN).unwrap().verdict;
    if single != Verdict::No {
        bad.push(format!("single loop: {single}"));
    }
    let mut corpus = systems;
    corpus.push(("single loop".into(), single_loop(CORPUS_DEPTH)));
    corpus.push(("two loops".into(), two_loops(CORPUS_DEPTH)));
    corpus.push((
        "even Fischer".into(),
        min_lgs_from_fischer(&fischer_cover(&even_shift()).unwrap(), CORPUS_DEPTH).unwrap().lgs,
    ));
    corpus.push((
        "full 2".into(),
        LambdaGraphTruncation::from_graph(&fischer_cover(&full_shift(2)).unwrap(), CORPUS_DEPTH).unwrap(),
    ));
    let mut premises = 0;
    for (name, g) in &corpus {
        let lam = check_lambda_irreducible(g, 1, 2).unwrap().verdict;
        let iota = check_iota_irreducible(g, 2).unwrap().verdict;
        let lang = presented_language_irreducible(g).verdict;
        if lam == Verdict::Yes && iota != Verdict::Yes {
            bad.push(format!("{name}: lambda-irreducible but iota {iota}"));
        }
        if iota == Verdict::Yes && lang == Verdict::No {
            bad.push(format!("{name}: iota-irreducible but language {lang}"));
        }
        premises += usize::from(lam == Verdict::Yes) + usize::from(iota == Verdict::Yes);
    }
    let n = corpus.len();
    let tail = if bad.is_empty() { "no violations".to_string() } else { bad.join("; ") };
    outcome(bad.is_empty(), format!("single loop: {single}; {n} systems, {premises} premises held; {tail}"))
}

fn c12() -> Outcome {
    let full = entropy(&full_shift(2)).unwrap();
    let golden = entropy(&golden_mean()).unwrap();
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let full_ok = (full.value - 2f64.ln()).abs() < ENTROPY_TOL && full.lower <= 2f64.ln() + ENTROPY_TOL;
    let golden_ok = (golden.value - phi.ln()).abs() < ENTROPY_TOL;
    let mut symbolic = Vec::new();
    let mut beta_ok = true;
    for b in ["2", "golden", "3/2"] {
        let beta = Beta::parse(b).unwrap();
        let e = entropy(&SubshiftSpec::beta_shift(beta.clone()).unwrap()).unwrap();
        beta_ok &= e.symbolic.as_deref() == Some(format!("log({beta})").as_str())
            && (e.value - beta.to_f64().ln()).abs() < ENTROPY_TOL;
        symbolic.push(e.symbolic.unwrap_or_default());
    }
    outcome(
        full_ok && golden_ok && beta_ok,
        format!("full 2: {:.12}; golden: {:.12}; beta: {}", full.value, golden.value, symbolic.join(", ")),
    )
}

#[test]
fn acceptance_criteria() {
    let results = [
        criterion(1, "Fischer matrices", secs(1), c1),
        criterion(2, "minimal system stabilization", secs(5), c2),
        criterion(3, "Dyck cross-oracle", secs(10), c3),
        criterion(4, "builder validation", secs(10), c4),
        criterion(5, "inverse-monoid oracle", secs(10), c5),
        criterion(6, "beta classification", secs(1), c6),
        criterion(7, "K-group formulas", secs(1), c7),
        criterion(8, "Smith normal form", secs(5), c8),
        criterion(9, "conjugacy harness", secs(10), c9),
        criterion(10, "eventual conjugacy", secs(10), c10),
        criterion(11, "structural checks", secs(10), c11),
        criterion(12, "entropy", secs(1), c12),
    ];
    let failed: Vec<usize> = results.iter().enumerate().filter(|(_, ok)| !**ok).map(|(i, _)| i + 1).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
