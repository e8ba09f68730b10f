//! Finite-depth checks for conjugacy, eventual conjugacy and orbit equivalence.

pub mod block;
pub mod coe;
pub mod eventual;
pub mod substitution;

pub use block::{
    apply_checked, apply_sliding_code, check_one_sided_conjugacy, higher_block_codes, BlockMap, BlockWordMap,
};
pub use coe::{check_coe, path_space, Cocycle, CoeData, PathMap};
pub use eventual::{
    build_lambda2_prime, check_eventual_conjugacy, check_h_hat, h_hat, h_hat_inverse, prime_alphabet,
    prime_letter_count, tau_phi1, EventualConjugacyData, PrimeAlphabet,
};
pub use substitution::{check_substitution_morphism, Substitution};
