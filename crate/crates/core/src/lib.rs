//! Exact and certified computations around the equation
//! `L_n^(k) = |Disc(g_k)|`, where `L_n^(k)` is the k-generalized Lucas
//! sequence and `g_k(X) = X^k - X^(k-1) - ... - 1` its characteristic
//! polynomial.
//!
//! The crate is organised bottom-up:
//!
//! - [`kgen_seq`]: exact sequence values by several independent routes;
//! - [`root_analysis`]: certified enclosures of the dominant root and the
//!   Binet-type inequalities built on it;
//! - [`two_adic`]: 2-adic valuations and the residue formulas for `L_n^(k)`;
//! - [`diophantine_bounds`]: the discriminant and every numeric bound that
//!   confines a solution to a finite search;
//! - [`search_campaigns`]: the three finite searches, shardable and
//!   deterministic;
//! - [`verify`]: the invariant suites used by `klucas verify-lemmas`.

pub mod binom;
pub mod diophantine_bounds;
pub mod error;
pub mod interval;
pub mod kgen_seq;
pub mod modpow;
pub mod report;
pub mod root_analysis;
pub mod search_campaigns;
pub mod two_adic;
pub mod verify;

pub use error::{Error, Result};
