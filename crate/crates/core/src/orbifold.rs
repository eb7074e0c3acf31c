//! Hochschild invariants of global quotients `[𝔸ⁿ/G]` by twisted sectors.
//!
//! For each `g ∈ G` the sector lives on `Z^g = ker(g - I)` with codimension
//! `c_g`, tangent coinvariants `T_g = V / im(g - I)` and the conormal
//! determinant `ω_g = ∧^{c_g} N_{Z^g/Z}`. Over an affine base only global
//! sections survive:
//!
//! * `HH^m = (⊕_g Γ(Z^g, ∧^{m-c_g} T_g ⊗ ω_g))^G`
//! * `HH_m = (⊕_g Γ(Z^g, Ω_g^m))^G`
//!
//! Invariants are taken by averaging traces over the whole group, where `h`
//! sends sector `g` to sector `hgh⁻¹`; only centralizing `h` contribute.
//! Internal degrees: tangent generators sit in degree -1, so `ω_g` is
//! generated in degree `-c_g`; forms sit in degree 1.

use std::collections::BTreeMap;

use num_traits::Zero;
use rayon::prelude::*;

use crate::complex::{HilbertTable, Window};
use crate::error::Error;
use crate::exact::{binomial, exterior_power_action, monomial_count, rat, symmetric_power_action, to_dimension, Rational, RationalMatrix};
use crate::group::FiniteMatrixGroup;

/// Geometry of one twisted sector, with the centralizer's action on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectorData {
    pub g: usize,
    /// Columns span `Z^g`.
    pub zg_basis: RationalMatrix,
    pub codim: usize,
    /// `V → T_g`; rows span the annihilator of `im(g - I)`.
    pub coinv_proj: RationalMatrix,
    /// `V → N_{Z^g/Z}`; rows span the annihilator of `Z^g`.
    pub normal_proj: RationalMatrix,
    /// Centralizer of `g`, in group order.
    pub centralizer: Vec<usize>,
    /// `det(h|N)` for each centralizer element: the character of `ω_g`.
    pub omega: Vec<Rational>,
    /// Internal degree of the generator of `ω_g`.
    pub omega_degree: i64,
    /// Ranks of `Ω_g^j` for `j = 0..=dim Z^g`.
    pub omega_j_dims: Vec<u64>,
}

impl SectorData {
    pub fn new(group: &FiniteMatrixGroup, g: usize) -> Self {
        let n = group.dim();
        let moved = group.element(g) - &RationalMatrix::identity(n);
        let zg_basis = moved.kernel_matrix();
        let w = zg_basis.cols();
        let coinv_proj = moved.transpose().kernel_matrix().transpose();
        let normal_proj = zg_basis.transpose().kernel_matrix().transpose();
        let centralizer = group.centralizer(g);
        let mut data = Self {
            g,
            zg_basis,
            codim: n - w,
            coinv_proj,
            normal_proj,
            centralizer: centralizer.clone(),
            omega: Vec::new(),
            omega_degree: -((n - w) as i64),
            omega_j_dims: (0..=w as u64).map(|j| binomial(w as u64, j)).collect(),
        };
        data.omega = centralizer.iter().map(|&h| data.normal_action(group.element(h)).determinant()).collect();
        data
    }

    pub fn dim(&self) -> usize {
        self.zg_basis.cols()
    }

    /// `h` restricted to `Z^g`, in the coordinates of `zg_basis`.
    pub fn fixed_action(&self, h: &RationalMatrix) -> RationalMatrix {
        self.zg_basis.solve(&(h * &self.zg_basis)).expect("centralizer preserves the fixed subspace")
    }

    /// `h` on `T_g`: the unique `h_T` with `coinv_proj · h = h_T · coinv_proj`.
    pub fn tangent_action(&self, h: &RationalMatrix) -> RationalMatrix {
        induced_on_quotient(&self.coinv_proj, h)
    }

    /// `h` on the normal space `V / Z^g`.
    pub fn normal_action(&self, h: &RationalMatrix) -> RationalMatrix {
        induced_on_quotient(&self.normal_proj, h)
    }

    /// Numerical fields, which must agree along conjugacy classes.
    pub fn numerical(&self) -> (usize, usize, i64, Vec<u64>) {
        (self.dim(), self.codim, self.omega_degree, self.omega_j_dims.clone())
    }

    /// `⊕_j Ω_g^j[j]` as a table: `C(w, j)·t^j·H_{Z^g}(t)` in degree `-j`.
    pub fn forms_table(&self, window: Window) -> HilbertTable {
        let w = self.dim();
        HilbertTable::from_fn(window, (0..=w as i64).map(|j| -j), |i, t| {
            self.omega_j_dims[(-i) as usize] * monomial_count(w, t + i)
        })
    }

    /// `⊕_q ∧^q T_g ⊗ ω_g` placed in cohomological degree `q + c_g`.
    pub fn polyvector_table(&self, window: Window) -> HilbertTable {
        let (w, c) = (self.dim(), self.codim as i64);
        HilbertTable::from_fn(window, (0..=w as i64).map(|q| q + c), |m, t| {
            let q = m - c;
            binomial(w as u64, q as u64) * monomial_count(w, t + q - self.omega_degree)
        })
    }
}

fn induced_on_quotient(proj: &RationalMatrix, h: &RationalMatrix) -> RationalMatrix {
    if proj.rows() == 0 {
        return RationalMatrix::zeros(0, 0);
    }
    let lift = proj.right_inverse().expect("projection has full row rank");
    let induced = &(proj * h) * &lift;
    debug_assert_eq!(&induced * proj, proj * h);
    induced
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HhKind {
    Cohomology,
    Homology,
}

/// A Hochschild table with its breakdown by conjugacy class of sectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HhTable {
    pub total: HilbertTable,
    /// `(smallest element of the class, contribution of that class)`.
    pub by_class: Vec<(usize, HilbertTable)>,
}

/// `Σ_{h ∈ C(g)} tr(h | sector g)` per bidegree.
fn centralizer_trace_sum(group: &FiniteMatrixGroup, data: &SectorData, kind: HhKind, window: Window) -> BTreeMap<(i64, i64), Rational> {
    let (w, c) = (data.dim(), data.codim as i64);
    let mut sums: BTreeMap<(i64, i64), Rational> = BTreeMap::new();
    for (pos, &h) in data.centralizer.iter().enumerate() {
        let hm = group.element(h);
        let functions = data.fixed_action(hm).inverse().expect("invertible").transpose();
        let tangent = data.tangent_action(hm);
        let mut sym_traces: BTreeMap<i64, Rational> = BTreeMap::new();
        let mut sym_trace = |d: i64| -> Rational {
            if d < 0 {
                return Rational::zero();
            }
            sym_traces.entry(d).or_insert_with(|| symmetric_power_action(&functions, d as usize).trace()).clone()
        };
        for q in 0..=w as i64 {
            let (cohom, wedge, character) = match kind {
                HhKind::Cohomology => (q + c, exterior_power_action(&tangent, q as usize).trace(), data.omega[pos].clone()),
                HhKind::Homology => {
                    let dual = tangent.inverse().expect("invertible").transpose();
                    (-q, exterior_power_action(&dual, q as usize).trace(), rat(1))
                }
            };
            for t in window.degrees() {
                let d = match kind {
                    HhKind::Cohomology => t + q + c,
                    HhKind::Homology => t - q,
                };
                let tr = sym_trace(d) * &wedge * &character;
                if !tr.is_zero() {
                    *sums.entry((cohom, t)).or_insert_with(Rational::zero) += tr;
                }
            }
        }
    }
    sums
}

fn to_table(sums: &BTreeMap<(i64, i64), Rational>, divisor: usize, window: Window) -> Result<HilbertTable, Error> {
    let mut table = HilbertTable::new(window);
    let divisor = rat(divisor as i64);
    for (&(i, t), s) in sums {
        let avg = s / &divisor;
        let d = to_dimension(&avg).ok_or_else(|| Error::NotAGroup(format!("averaged trace {avg} at ({i}, {t}) is not a dimension")))?;
        table.set(i, t, d);
    }
    Ok(table)
}

fn hh(group: &FiniteMatrixGroup, kind: HhKind, window: Window) -> Result<HhTable, Error> {
    let per_element: Vec<BTreeMap<(i64, i64), Rational>> = (0..group.order())
        .into_par_iter()
        .map(|g| centralizer_trace_sum(group, &SectorData::new(group, g), kind, window))
        .collect();
    let mut total = HilbertTable::new(window);
    let mut by_class = Vec::with_capacity(group.classes().len());
    for class in group.classes() {
        let mut sums: BTreeMap<(i64, i64), Rational> = BTreeMap::new();
        for &g in class {
            for (k, v) in &per_element[g] {
                *sums.entry(*k).or_insert_with(Rational::zero) += v;
            }
        }
        let table = to_table(&sums, group.order(), window)?;
        total = total.sum(&table);
        by_class.push((class[0], table));
    }
    Ok(HhTable { total, by_class })
}

/// `HH^*` with cohomological degree `m` and internal degree `t`.
pub fn hh_cohomology(group: &FiniteMatrixGroup, window: Window) -> Result<HhTable, Error> {
    hh(group, HhKind::Cohomology, window)
}

/// `HH_*` with `HH_m` in cohomological degree `-m`.
pub fn hh_homology(group: &FiniteMatrixGroup, window: Window) -> Result<HhTable, Error> {
    hh(group, HhKind::Homology, window)
}

/// One representative per class, averaged over its centralizer only.
pub fn hh_by_class_representatives(group: &FiniteMatrixGroup, kind: HhKind, window: Window) -> Result<HilbertTable, Error> {
    let mut total = HilbertTable::new(window);
    for class in group.classes() {
        let data = SectorData::new(group, class[0]);
        let sums = centralizer_trace_sum(group, &data, kind, window);
        total = total.sum(&to_table(&sums, data.centralizer.len(), window)?);
    }
    Ok(total)
}

/// `⊕_g i_{g,*} S(Ω_g^1[1])`, one table per element in group order.
pub fn delta_pushpull(group: &FiniteMatrixGroup, window: Window) -> Vec<HilbertTable> {
    (0..group.order()).map(|g| SectorData::new(group, g).forms_table(window)).collect()
}

/// Coefficients of `(1/|G|)·Σ_g 1/det(1 - t·g)` in degrees `0..=max_degree`.
pub fn molien_series(group: &FiniteMatrixGroup, max_degree: usize) -> Result<Vec<u64>, Error> {
    let n = group.dim();
    let mut sum = vec![Rational::zero(); max_degree + 1];
    for g in group.elements() {
        // det(I - t·g) = Σ_k c_k t^{n-k}, with c_k from det(λI - g)
        let cp = g.characteristic_polynomial();
        let denom: Vec<Rational> = (0..=n).map(|d| cp[n - d].clone()).collect();
        let mut inv = vec![Rational::zero(); max_degree + 1];
        inv[0] = rat(1) / &denom[0];
        for d in 1..=max_degree {
            let mut acc = Rational::zero();
            for k in 1..=d.min(n) {
                acc += &denom[k] * &inv[d - k];
            }
            inv[d] = -acc / &denom[0];
        }
        for (s, v) in sum.iter_mut().zip(inv) {
            *s += v;
        }
    }
    let order = rat(group.order() as i64);
    sum.into_iter()
        .enumerate()
        .map(|(d, s)| {
            let avg = s / &order;
            to_dimension(&avg).ok_or_else(|| Error::NotAGroup(format!("Molien coefficient {avg} in degree {d} is not an integer")))
        })
        .collect()
}

/// The Molien series on a window, in cohomological degree 0.
pub fn molien(group: &FiniteMatrixGroup, window: Window) -> Result<HilbertTable, Error> {
    let series = molien_series(group, window.hi.max(0) as usize)?;
    Ok(HilbertTable::from_fn(window, [0], |_, t| if t < 0 { 0 } else { series[t as usize] }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_GROUP_BOUND;

    fn w(lo: i64, hi: i64) -> Window {
        Window::new(lo, hi).unwrap()
    }

    fn group(gens: &[&[&[i64]]]) -> FiniteMatrixGroup {
        let gens: Vec<RationalMatrix> = gens.iter().map(|g| RationalMatrix::from_i64(g)).collect();
        FiniteMatrixGroup::build(&gens, DEFAULT_GROUP_BOUND).unwrap()
    }

    fn corpus() -> Vec<FiniteMatrixGroup> {
        vec![
            group(&[&[&[1, 0], &[0, 1]]]),
            group(&[&[&[-1]]]),
            group(&[&[&[-1, 0], &[0, -1]]]),
            group(&[&[&[0, 1], &[1, 0]]]),
            group(&[&[&[0, -1], &[1, -1]]]),
            group(&[&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]], &[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]]),
        ]
    }

    #[test]
    fn sector_examples() {
        let sign = group(&[&[&[-1]]]);
        let e = SectorData::new(&sign, 0);
        assert_eq!((e.dim(), e.codim), (1, 0));
        assert!(e.omega.iter().all(|x| *x == rat(1)));
        let s = SectorData::new(&sign, 1);
        assert_eq!((s.dim(), s.codim, s.coinv_proj.rows()), (0, 1, 0));
        assert_eq!(s.omega, vec![rat(1), rat(-1)]);
        let refl = group(&[&[&[1, 0], &[0, -1]]]);
        let r = SectorData::new(&refl, 1);
        assert_eq!((r.dim(), r.codim, r.coinv_proj.rows()), (1, 1, 1));
    }

    #[test]
    fn conjugate_sectors_agree() {
        for g in corpus() {
            for class in g.classes() {
                let first = SectorData::new(&g, class[0]).numerical();
                for &x in class {
                    assert_eq!(SectorData::new(&g, x).numerical(), first);
                }
            }
        }
    }

    #[test]
    fn molien_examples() {
        assert_eq!(molien_series(&group(&[&[&[1, 0], &[0, 1]]]), 4).unwrap(), vec![1, 2, 3, 4, 5]);
        assert_eq!(molien_series(&group(&[&[&[-1]]]), 4).unwrap(), vec![1, 0, 1, 0, 1]);
        assert_eq!(molien_series(&group(&[&[&[0, 1], &[1, 0]]]), 4).unwrap(), vec![1, 1, 2, 2, 3]);
    }

    #[test]
    fn trivial_group_is_scheme_hkr() {
        let g = group(&[&[&[1, 0], &[0, 1]]]);
        let window = w(-4, 5);
        let coh = hh_cohomology(&g, window).unwrap().total;
        let hom = hh_homology(&g, window).unwrap().total;
        for k in 0..=2i64 {
            for t in window.degrees() {
                assert_eq!(coh.get(k, t), binomial(2, k as u64) * monomial_count(2, t + k));
                assert_eq!(hom.get(-k, t), binomial(2, k as u64) * monomial_count(2, t - k));
            }
        }
    }

    #[test]
    fn hh0_is_the_invariant_ring() {
        for g in corpus() {
            let window = w(0, 6);
            let coh = hh_cohomology(&g, window).unwrap().total;
            assert_eq!(coh.restricted(window).row(0), molien(&g, window).unwrap().row(0));
        }
    }

    #[test]
    fn homology_degree_zero_adds_twisted_sectors() {
        let g = group(&[&[&[-1]]]);
        let window = w(-2, 5);
        let hom = hh_homology(&g, window).unwrap();
        let mol = molien(&g, window).unwrap();
        let mut expected = mol.row(0);
        expected[2] += 1;
        assert_eq!(hom.total.row(0), expected);
    }

    #[test]
    fn class_fast_path_matches() {
        for g in corpus() {
            let window = Window::default_for(g.dim());
            for kind in [HhKind::Cohomology, HhKind::Homology] {
                let full = hh(&g, kind, window).unwrap().total;
                assert_eq!(hh_by_class_representatives(&g, kind, window).unwrap(), full);
            }
        }
    }

    #[test]
    fn pushpull_identity_sector_and_degree_zero() {
        let g = group(&[&[&[-1]]]);
        let window = w(0, 3);
        let sectors = delta_pushpull(&g, window);
        assert_eq!(sectors[0].row(-1), vec![0, 1, 1, 1]);
        assert_eq!(sectors[1].entries().collect::<Vec<_>>(), vec![((0, 0), 1)]);
        let s3 = &corpus()[5];
        let total = delta_pushpull(s3, window).iter().fold(HilbertTable::new(window), |a, b| a.sum(b));
        for t in window.degrees() {
            let fixed: u64 = (0..s3.order()).map(|x| monomial_count(SectorData::new(s3, x).dim(), t)).sum();
            assert_eq!(total.get(0, t), fixed);
        }
    }
}
