//! Word problem solver for the Baumslag group
//! `G = <a, b | b⁻¹a⁻¹bab⁻¹ab = a²>`, built on power circuits.
//!
//! `G` is an HNN extension of the Baumslag-Solitar group
//! `B = <a, t | t⁻¹at = a²>` with stable letter `b` and `b⁻¹ab = t`.
//! Solving the word problem by plain rewriting forces exponents of `a` that
//! grow as towers of twos; this crate keeps all exponents as [power
//! circuits](PowerCircuit) — DAGs whose vertices evaluate to powers of two —
//! so the whole pipeline runs in time polynomial in the word length.
//!
//! The main entry points:
//!
//! - [`PowerCircuit`]: compressed integers with add/subtract/negate and
//!   multiplication/division by powers of two, plus an exact bignum oracle.
//! - [`ReducedCircuit`]: normal form enabling sign, comparison, equality and
//!   divisibility tests without decompression.
//! - [`PowerSequence`]: words over `{a, b, t}` with circuit exponents.
//! - [`baumslag_solitar`]: collapsing `{a, t}` words to `a^M t^σ` in `B`, or
//!   certifying that no such form exists.
//! - [`word_problem::solve`]: the full decision procedure, alongside
//!   [`word_problem::naive_solve`], the classical rewriting baseline that
//!   demonstrates the blowup the circuits avoid.

mod circuit;
mod error;
mod format;
mod reduce;

pub mod baumslag_solitar;
pub mod sequence;
pub mod word_problem;

pub use circuit::{PowerCircuit, Sign, VertexId, DEFAULT_BIT_BUDGET};
pub use error::Error;
pub use reduce::ReducedCircuit;
pub use sequence::{Letter, PowerSequence};
