//! Exact rational scalars and dense matrices, plus the induced actions of a
//! matrix on symmetric and exterior powers.

mod action;
mod elim;
mod matrix;
mod monomial;
mod rational;

pub use action::{exterior_power_action, invariant_dimension, symmetric_power_action};
pub use matrix::{KernelImage, RationalMatrix};
pub use monomial::{binomial, index_of, monomial_count, monomials, subsets, Exponents};
pub use rational::{frac, parse_rational, rat, to_dimension, to_integer, Rational};
