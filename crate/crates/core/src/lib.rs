//! Exact graded homological algebra for linear derived intersections.
//!
//! The crate computes bigraded dimension tables (cohomological degree ×
//! internal polynomial degree) of Tor and Ext between structure sheaves of
//! linear subvarieties of affine space, and compares them with closed-form
//! predictions built from the excess bundle, the tangent bundle of a fixed
//! locus, or the twisted sectors of a finite group action.
//!
//! Every computation is exact over ℚ. The modules are layered:
//!
//! - [`exact`]: rationals, matrices, rank/kernel, induced actions.
//! - [`complex`]: polynomials, graded free modules, chain complexes, Koszul
//!   complexes and per-bidegree homology.
//! - [`intersection`], [`fixed`], [`group`], [`orbifold`]: the formula side.
//! - [`oracle`]: brute-force homological computations sharing no code with
//!   the formula side beyond `exact` and `complex`.

pub mod complex;
pub mod error;
pub mod exact;
pub mod fixed;
pub mod group;
pub mod intersection;
pub mod oracle;
pub mod orbifold;

pub use complex::{Comparison, GradedChainComplex, GradedFreeModule, HilbertTable, Poly, Window};
pub use error::Error;
pub use exact::{Rational, RationalMatrix};
