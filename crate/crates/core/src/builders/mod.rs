//! Closed-form lambda-graph systems and exact numbers for beta shifts.

pub mod beta;
pub mod dyck;
pub mod monoid;
pub mod number;

pub use beta::{Beta, BetaClass, DigitSeq, Expansion};
pub use dyck::{dyck_lgs, markov_dyck_lgs, motzkin_lgs};
pub use monoid::{MonoidKind, Reduced};
pub use number::{ExactNumber, Quad};

use crate::error::Result;
use crate::lambda_graph::LambdaGraphTruncation;

/// Lambda-graph system of the beta shift with cells cut by the b-values.
pub fn beta_lgs(beta: &Beta, depth: usize) -> Result<LambdaGraphTruncation> {
    beta.lambda_graph(depth)
}
