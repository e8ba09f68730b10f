//! Integer linear algebra, K-groups and entropy.

pub mod entropy;
pub mod kgroups;
pub mod snf;

pub use entropy::{entropy, entropy_of_graph, matrix_entropy, Entropy};
pub use kgroups::{beta_kgroups, ck_kgroups, BetaBranch, BetaKGroups, KGroupResult};
pub use snf::{determinant, smith_normal_form, IntMatrix, Snf};
