//! Induced linear actions on symmetric and exterior powers.
//!
//! A matrix `g` acts on the standard basis by `g·e_i = Σ_j g[j][i] e_j`. The
//! symmetric power acts on degree-`d` monomials in the `e_i` (in the global
//! monomial order), and the exterior power on wedges `e_S` for sorted subsets
//! `S` (lexicographic order).

use std::collections::HashMap;

use num_traits::{One, Zero};

use super::matrix::RationalMatrix;
use super::monomial::{index_of, monomials, subsets, Exponents};
use super::rational::{rat, to_dimension, Rational};
use crate::error::Error;

pub fn symmetric_power_action(g: &RationalMatrix, degree: usize) -> RationalMatrix {
    assert!(g.is_square(), "symmetric power of a non-square matrix");
    let n = g.rows();
    let basis = monomials(n, degree as i64);
    let index = index_of(&basis);
    let images: Vec<Vec<(usize, Rational)>> = (0..n)
        .map(|i| (0..n).filter(|&j| !g.get(j, i).is_zero()).map(|j| (j, g.get(j, i).clone())).collect())
        .collect();
    let mut out = RationalMatrix::zeros(basis.len(), basis.len());
    for (col, alpha) in basis.iter().enumerate() {
        let mut acc: HashMap<Exponents, Rational> = HashMap::from([(vec![0u32; n], Rational::one())]);
        for (i, &mult) in alpha.iter().enumerate() {
            for _ in 0..mult {
                let mut next: HashMap<Exponents, Rational> = HashMap::new();
                for (mono, coeff) in &acc {
                    for (j, gji) in &images[i] {
                        let mut m = mono.clone();
                        m[*j] += 1;
                        *next.entry(m).or_insert_with(Rational::zero) += coeff * gji;
                    }
                }
                acc = next;
            }
        }
        for (mono, coeff) in acc {
            if !coeff.is_zero() {
                out.set(index[&mono], col, coeff);
            }
        }
    }
    out
}

pub fn exterior_power_action(g: &RationalMatrix, k: usize) -> RationalMatrix {
    assert!(g.is_square(), "exterior power of a non-square matrix");
    let n = g.rows();
    assert!(k <= n, "exterior power degree {k} exceeds dimension {n}");
    let basis = subsets(n, k);
    let mut out = RationalMatrix::zeros(basis.len(), basis.len());
    for (r, rows) in basis.iter().enumerate() {
        for (c, cols) in basis.iter().enumerate() {
            let minor = g.select_rows(rows).select_cols(cols);
            let det = if k == 0 { Rational::one() } else { minor.determinant() };
            if !det.is_zero() {
                out.set(r, c, det);
            }
        }
    }
    out
}

/// Dimension of the fixed subspace of a finite group action, by averaging traces.
///
/// `actions` must list the action matrix of every group element. A non-integer
/// or negative average means the input was not a group action.
pub fn invariant_dimension(actions: &[RationalMatrix]) -> Result<u64, Error> {
    if actions.is_empty() {
        return Err(Error::NotAGroup("empty list of group elements".into()));
    }
    let total: Rational = actions.iter().map(RationalMatrix::trace).sum();
    let avg = total / rat(actions.len() as i64);
    to_dimension(&avg).ok_or_else(|| Error::NotAGroup(format!("trace average {avg} is not a dimension")))
}
