//! Small named subshifts.

use super::{Alphabet, LabeledGraph, SubshiftSpec, Word};

pub fn full_shift(n: usize) -> SubshiftSpec {
    SubshiftSpec::full_shift_named(Alphabet::numbered(n))
}

/// No two consecutive 1s.
pub fn golden_mean() -> SubshiftSpec {
    SubshiftSpec::forbidden(Alphabet::numbered(2), vec![Word(vec![1, 1])]).expect("golden mean shift")
}

/// Loop `1` at `v1`, an edge `0` from `v1` to `v2` and back.
pub fn even_graph() -> LabeledGraph {
    LabeledGraph::from_triples(
        Alphabet::numbered(2),
        &["v1", "v2"],
        &[("v1", "1", "v1"), ("v1", "0", "v2"), ("v2", "0", "v1")],
    )
    .expect("even graph")
}

/// Edges `0` and `1` from `v1` to `v2`, and `0` back.
pub fn odd_graph() -> LabeledGraph {
    LabeledGraph::from_triples(
        Alphabet::numbered(2),
        &["v1", "v2"],
        &[("v1", "0", "v2"), ("v1", "1", "v2"), ("v2", "0", "v1")],
    )
    .expect("odd graph")
}

/// 0-blocks between 1s have even length.
pub fn even_shift() -> SubshiftSpec {
    SubshiftSpec::sofic(even_graph()).expect("even shift")
}

pub fn odd_shift() -> SubshiftSpec {
    SubshiftSpec::sofic(odd_graph()).expect("odd shift")
}
