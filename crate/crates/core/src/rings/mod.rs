//! Concrete coefficient rings beyond ℤ, ℚ and ℤ/n: Galois fields, truncated
//! quotient algebras, and the named example algebras.

pub mod algebra;
pub mod examples;
pub mod gf;

pub use algebra::{AlgPoly, Monomial, QuotientAlgebra, RewriteSystem, Rule, TruncationPolicy};
