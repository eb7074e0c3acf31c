//! Finite groups of invertible rational matrices, enumerated by closure.

use std::collections::{HashMap, VecDeque};

use num_traits::Zero;

use crate::error::Error;
use crate::exact::RationalMatrix;

/// Default cap on the number of elements produced by [`FiniteMatrixGroup::build`].
pub const DEFAULT_GROUP_BOUND: usize = 48;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteMatrixGroup {
    dim: usize,
    generators: Vec<RationalMatrix>,
    elements: Vec<RationalMatrix>,
    mult: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
}

impl FiniteMatrixGroup {
    /// Closes `generators` under multiplication. Elements are numbered in
    /// breadth-first generation order with the identity at index 0.
    pub fn build(generators: &[RationalMatrix], bound: usize) -> Result<Self, Error> {
        let Some(first) = generators.first() else {
            return Err(Error::NotAGroup("no generators given".into()));
        };
        let dim = first.rows();
        for g in generators {
            if !g.is_square() || g.rows() != dim {
                return Err(Error::Dimension(format!("generator {g} is not {dim}x{dim}")));
            }
            if g.determinant().is_zero() {
                return Err(Error::NotAGroup(format!("generator {g} is singular")));
            }
        }
        let mut elements = vec![RationalMatrix::identity(dim)];
        let mut index: HashMap<RationalMatrix, usize> = HashMap::from([(elements[0].clone(), 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for s in generators {
                let p = &elements[i] * s;
                if index.contains_key(&p) {
                    continue;
                }
                if elements.len() == bound {
                    return Err(Error::ClosureBoundExceeded(bound));
                }
                index.insert(p.clone(), elements.len());
                queue.push_back(elements.len());
                elements.push(p);
            }
        }
        let order = elements.len();
        let mult: Vec<Vec<usize>> =
            elements.iter().map(|a| elements.iter().map(|b| index[&(a * b)]).collect()).collect();
        let inverse: Vec<usize> = (0..order).map(|i| (0..order).find(|&j| mult[i][j] == 0).expect("finite closure contains inverses")).collect();
        let mut class_of = vec![usize::MAX; order];
        let mut classes = Vec::new();
        for g in 0..order {
            if class_of[g] != usize::MAX {
                continue;
            }
            let mut class: Vec<usize> = (0..order).map(|k| mult[mult[k][g]][inverse[k]]).collect();
            class.sort_unstable();
            class.dedup();
            for &c in &class {
                class_of[c] = classes.len();
            }
            classes.push(class);
        }
        Ok(Self { dim, generators: generators.to_vec(), elements, mult, inverse, classes, class_of })
    }

    /// Dimension of the space the group acts on.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[RationalMatrix] {
        &self.generators
    }

    pub fn elements(&self) -> &[RationalMatrix] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &RationalMatrix {
        &self.elements[i]
    }

    pub fn multiply(&self, a: usize, b: usize) -> usize {
        self.mult[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// `h g h⁻¹`.
    pub fn conjugate(&self, h: usize, g: usize) -> usize {
        self.mult[self.mult[h][g]][self.inverse[h]]
    }

    /// Conjugacy classes, each sorted, listed by smallest member.
    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, g: usize) -> usize {
        self.class_of[g]
    }

    pub fn centralizer(&self, g: usize) -> Vec<usize> {
        (0..self.order()).filter(|&h| self.mult[h][g] == self.mult[g][h]).collect()
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut k = 1;
        let mut p = g;
        while p != 0 {
            p = self.mult[p][g];
            k += 1;
        }
        k
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> RationalMatrix {
        RationalMatrix::from_i64(rows)
    }

    fn s3() -> FiniteMatrixGroup {
        let swap = m(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]);
        let cycle = m(&[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]);
        FiniteMatrixGroup::build(&[swap, cycle], DEFAULT_GROUP_BOUND).unwrap()
    }

    #[test]
    fn sign_group() {
        let g = FiniteMatrixGroup::build(&[m(&[&[-1]])], 10).unwrap();
        assert_eq!(g.order(), 2);
        assert!(g.element(0).is_identity());
        assert_eq!(g.inverse(1), 1);
    }

    #[test]
    fn rotation_of_order_three() {
        let g = FiniteMatrixGroup::build(&[m(&[&[0, -1], &[1, -1]])], 10).unwrap();
        assert_eq!(g.order(), 3);
        assert_eq!(g.classes().len(), 3);
        assert_eq!(g.element_order(1), 3);
    }

    #[test]
    fn symmetric_group_classes() {
        let g = s3();
        assert_eq!(g.order(), 6);
        let mut sizes: Vec<usize> = g.classes().iter().map(Vec::len).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 2, 3]);
        for x in 0..g.order() {
            let class = &g.classes()[g.class_of(x)];
            assert_eq!(class.len() * g.centralizer(x).len(), g.order());
        }
        assert_eq!(g.classes().iter().map(Vec::len).sum::<usize>(), g.order());
    }

    #[test]
    fn closure_is_a_group() {
        let g = s3();
        for a in 0..g.order() {
            assert_eq!(g.multiply(a, g.inverse(a)), 0);
            for b in 0..g.order() {
                assert_eq!(g.element(g.multiply(a, b)), &(g.element(a) * g.element(b)));
            }
        }
    }

    #[test]
    fn infinite_order_hits_the_bound() {
        let err = FiniteMatrixGroup::build(&[m(&[&[1, 1], &[0, 1]])], 20).unwrap_err();
        assert_eq!(err, Error::ClosureBoundExceeded(20));
    }

    #[test]
    fn singular_and_mismatched_generators_are_rejected() {
        assert!(matches!(FiniteMatrixGroup::build(&[m(&[&[0]])], 5), Err(Error::NotAGroup(_))));
        assert!(matches!(FiniteMatrixGroup::build(&[m(&[&[1]]), m(&[&[1, 0], &[0, 1]])], 5), Err(Error::Dimension(_))));
    }
}
