//! Ordinal notations, well quasi-orders, and Kruskal tree embeddability.
//!
//! The crate provides exact Cantor-normal-form arithmetic below ε₀, the
//! relativized collapsed term order G_ω(X), finite ordered labelled trees
//! with homeomorphic embeddability, finite quasi-orders with their product,
//! sum and disjoint-union combinators, bad-sequence trees with the
//! Kleene–Brouwer linearization, and the finite Ramsey-style constructions
//! used in the product closure arguments. Exhaustive and randomized
//! property suites over all of these live in [`suites`].

pub mod cnf;
pub mod error;
pub mod qo;
pub mod ramsey;
pub mod suites;
pub mod theta;
pub mod tree;
pub mod wop;

pub use error::{Error, Result};
