//! Graded free modules over polynomial rings, chain complexes of them, and
//! their homology computed degree by degree with exact linear algebra.
//!
//! Internal (polynomial) degree and cohomological degree are tracked
//! separately; results are [`HilbertTable`]s keyed by both.

mod chain;
mod poly;
mod table;

pub use chain::{GradedChainComplex, GradedFreeModule, LinearSubspace, PolyMatrix};
pub use poly::Poly;
pub use table::{Comparison, HilbertTable, Mismatch, Window};

#[cfg(test)]
mod tests;
