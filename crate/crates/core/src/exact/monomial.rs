//! Monomial bases in a fixed global order.
//!
//! Degree-`d` monomials in `n` variables are listed in *descending
//! lexicographic* order of exponent vectors: `x1^d, x1^(d-1) x2, ...,
//! x1^(d-1) xn, x1^(d-2) x2^2, ..., xn^d`. Every basis in the crate (graded
//! pieces, symmetric powers) uses this order.

use std::collections::HashMap;

pub type Exponents = Vec<u32>;

pub fn monomials(nvars: usize, degree: i64) -> Vec<Exponents> {
    let mut out = Vec::new();
    if degree < 0 {
        return out;
    }
    let mut current = vec![0u32; nvars];
    fill(&mut current, 0, degree as u32, &mut out);
    out
}

fn fill(current: &mut Exponents, pos: usize, remaining: u32, out: &mut Vec<Exponents>) {
    if pos == current.len() {
        if remaining == 0 {
            out.push(current.clone());
        }
        return;
    }
    if pos + 1 == current.len() {
        current[pos] = remaining;
        out.push(current.clone());
        current[pos] = 0;
        return;
    }
    for e in (0..=remaining).rev() {
        current[pos] = e;
        fill(current, pos + 1, remaining - e, out);
    }
    current[pos] = 0;
}

/// Number of degree-`d` monomials in `n` variables, `C(n + d - 1, d)`.
pub fn monomial_count(nvars: usize, degree: i64) -> u64 {
    if degree < 0 {
        return 0;
    }
    if nvars == 0 {
        return u64::from(degree == 0);
    }
    binomial((nvars as u64) + degree as u64 - 1, degree as u64)
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * u128::from(n - i) / u128::from(i + 1);
    }
    acc as u64
}

/// Sorted `k`-element subsets of `0..n`, in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for i in start..n {
            if n - i < k - current.len() {
                break;
            }
            current.push(i);
            go(i + 1, n, k, current, out);
            current.pop();
        }
    }
    go(0, n, k, &mut current, &mut out);
    out
}

/// Position lookup for a list of monomials.
pub fn index_of(basis: &[Exponents]) -> HashMap<Exponents, usize> {
    basis.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lex_order_two_variables() {
        assert_eq!(monomials(2, 2), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
    }

    #[test]
    fn counts_match_enumeration() {
        for n in 0..5 {
            for d in -1..6 {
                assert_eq!(monomials(n, d).len() as u64, monomial_count(n, d), "n={n} d={d}");
            }
        }
    }

    #[test]
    fn subsets_are_lexicographic() {
        assert_eq!(subsets(3, 2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(subsets(2, 0), vec![Vec::<usize>::new()]);
        assert!(subsets(2, 3).is_empty());
    }
}
