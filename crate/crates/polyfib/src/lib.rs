//! High-precision evaluation of integer-order polylogarithms, Bernoulli
//! numbers and polynomials, and weighted Fibonacci/Lucas series, together
//! with a verification harness that checks every closed-form identity in
//! the registry through independent evaluation paths.

pub mod bernoulli;
pub mod fibseries;
pub mod harness;
pub mod hp;
pub mod polylog;
pub mod seqcore;
pub mod symexpr;

mod error;

pub use error::{Error, Result};
