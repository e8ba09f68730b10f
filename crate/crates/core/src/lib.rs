//! Lambda-graph systems of normal subshifts: construction, validation and invariants.

pub mod builders;
pub mod cli;
pub mod conjugacy;
pub mod error;
pub mod fischer;
pub mod invariants;
pub mod lambda_graph;
pub mod limits;
pub mod schema;
pub mod subshift;
pub mod sync;
pub mod verdict;

pub use error::{Error, Result};
pub use fischer::{ck_matrix, fischer_cover, min_lgs_from_fischer, predecessor_separate, CKMatrix};
pub use lambda_graph::{LambdaGraphTruncation, LgEdge, ValidationReport};
pub use subshift::{Alphabet, LabeledGraph, SubshiftSpec, Sym, Word};
pub use sync::{build_min_lgs, SyncSearchParams};
pub use verdict::{CheckReport, Verdict};
