use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::Error;
use crate::exact::{Exponents, Rational, RationalMatrix};

/// Polynomial in a fixed number of variables with exact rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Exponents, Rational>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::term(nvars, vec![0; nvars], c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn term(nvars: usize, exponents: Exponents, coeff: Rational) -> Self {
        assert_eq!(exponents.len(), nvars);
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exponents, coeff);
        }
        Self { nvars, terms }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::term(nvars, e, Rational::one())
    }

    /// The linear form `Σ coeffs[i]·x_i`.
    pub fn linear(coeffs: &[Rational]) -> Self {
        let n = coeffs.len();
        let mut p = Self::zero(n);
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                let mut e = vec![0; n];
                e[i] = 1;
                p.terms.insert(e, c.clone());
            }
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exponents: &[u32]) -> Rational {
        self.terms.get(exponents).cloned().unwrap_or_else(Rational::zero)
    }

    /// Total degree when homogeneous; `Ok(None)` for the zero polynomial.
    pub fn homogeneous_degree(&self) -> Result<Option<i64>, Error> {
        let mut degrees = self.terms.keys().map(|e| e.iter().map(|&x| i64::from(x)).sum::<i64>());
        let Some(first) = degrees.next() else {
            return Ok(None);
        };
        if degrees.any(|d| d != first) {
            return Err(Error::NotHomogeneous(self.to_string()));
        }
        Ok(Some(first))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Self { nvars: self.nvars, terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect() }
    }

    fn add_term(&mut self, e: Exponents, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
        }
    }

    /// Substitutes `x_i = Σ_j map[i][j]·u_j`, producing a polynomial in `map.cols()` variables.
    pub fn substitute(&self, map: &RationalMatrix) -> Self {
        assert_eq!(map.rows(), self.nvars, "substitution matrix has wrong height");
        let k = map.cols();
        let images: Vec<Poly> = (0..self.nvars).map(|i| Poly::linear(map.row(i))).collect();
        let mut out = Self::zero(k);
        for (e, c) in &self.terms {
            let mut acc = Self::constant(k, c.clone());
            for (i, &mult) in e.iter().enumerate() {
                for _ in 0..mult {
                    acc = &acc * &images[i];
                }
            }
            out = &out + &acc;
        }
        out
    }
}

impl Add for &Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;

    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }
}

impl Mul for &Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = Poly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Exponents = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            for (i, &p) in e.iter().enumerate() {
                match p {
                    0 => {}
                    1 => write!(f, "*x{}", i + 1)?,
                    _ => write!(f, "*x{}^{p}", i + 1)?,
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn homogeneity() {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        assert_eq!((&(&x * &y) + &(&x * &x)).homogeneous_degree().unwrap(), Some(2));
        assert!((&x + &(&x * &y)).homogeneous_degree().is_err());
        assert_eq!(Poly::zero(2).homogeneous_degree().unwrap(), None);
    }

    #[test]
    fn cancellation_removes_terms() {
        let x = Poly::var(1, 0);
        assert!((&x - &x).is_zero());
    }

    #[test]
    fn substitution_restricts_to_a_line() {
        // (x + y)^2 restricted to x = u, y = 2u gives 9u^2
        let f = {
            let s = &Poly::var(2, 0) + &Poly::var(2, 1);
            &s * &s
        };
        let p = RationalMatrix::from_i64(&[&[1], &[2]]);
        assert_eq!(f.substitute(&p), Poly::term(1, vec![2], rat(9)));
    }
}
