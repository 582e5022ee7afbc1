//! Certified computations for Bernoulli convolutions.
//!
//! Exact entropy at scale of finitely supported measures, Garsia entropy
//! upper bounds for algebraic parameters, and the polynomial machinery
//! around them: collision search over `{-1,0,1}` polynomials, gcd and
//! Bézout certificates, Mahler measures and root-separation audits.

pub mod algebra;
pub mod cli;
pub mod diophantine;
pub mod error;
pub mod entropy;
pub mod garsia;
pub mod measures;
pub mod numerics;
pub mod report;

pub use error::{Error, Result};
