//! Exact poly-Cauchy numbers of the second kind, the permutation families
//! they count, and an identity checker that compares independent routes to
//! each quantity on finite parameter boxes.
//!
//! - [`exact_math`]: big integers, rationals and sparse polynomials.
//! - [`special_numbers`]: Stirling-type and Eulerian triangles.
//! - [`cauchy_sequences`]: poly-Cauchy and poly-Bernoulli families.
//! - [`permutation_lab`]: enumerators, weights, involutions, bijections.
//! - [`identity_registry`]: the catalogue of identities and their reports.
//! - [`cli`]: the `pcperm` command line.

pub mod cauchy_sequences;
pub mod cli;
pub mod exact_math;
pub mod identity_registry;
pub mod permutation_lab;
pub mod special_numbers;

pub use exact_math::{BigInt, BigRational, ExactValue, MultiPoly, Symbol};
