//! Derived intersections of linear subvarieties `X, Y ⊆ S = 𝔸ⁿ`.
//!
//! Tor is computed three ways (resolve `X`, resolve `Y`, or intersect `X × Y`
//! with the diagonal of `S × S`) and compared with the exterior powers of the
//! dual excess bundle `E = T_S / (T_X + T_Y)` restricted to `W = X ∩ Y`. The
//! Ext groups `Ext^q_S(i_*F, j_*G)` are compared with
//! `Γ(W, F^∨ ⊗ G ⊗ ω_{W/Y} ⊗ ∧^{q-m} E)`.
//!
//! Internal-degree conventions for linear data: cotangent generators
//! (`E^∨`, conormal forms) sit in degree 1, tangent generators (`E`, normal
//! vectors) in degree -1, so `ω_{W/Y} = ∧^m N_{W/Y}` is generated in degree
//! `-m`. A twist `O(a)` has its generator in degree `-a`.

use crate::complex::{Comparison, GradedChainComplex, HilbertTable, LinearSubspace, Window};
use crate::error::Error;
use crate::exact::{binomial, monomial_count, RationalMatrix};
use crate::oracle;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TorRoute {
    /// Koszul-resolve `O_X` over `S`, restrict to `Y`.
    ResolveX,
    /// Koszul-resolve `O_Y` over `S`, restrict to `X`.
    ResolveY,
    /// `Tor^{S×S}(O_{X×Y}, O_Δ)` via the diagonal's Koszul resolution.
    Diagonal,
}

impl TorRoute {
    pub const ALL: [TorRoute; 3] = [TorRoute::ResolveX, TorRoute::ResolveY, TorRoute::Diagonal];

    pub fn name(self) -> &'static str {
        match self {
            TorRoute::ResolveX => "resolve_x",
            TorRoute::ResolveY => "resolve_y",
            TorRoute::Diagonal => "diagonal",
        }
    }
}

/// Two linear subvarieties of `𝔸ⁿ` through the origin and their intersection data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionInstance {
    n: usize,
    x: LinearSubspace,
    y: LinearSubspace,
    w: LinearSubspace,
    excess_rank: usize,
    codim_w_in_y: usize,
}

impl IntersectionInstance {
    /// `x_forms` and `y_forms` hold one linear form per row; each list must be independent.
    pub fn new(n: usize, x_forms: &RationalMatrix, y_forms: &RationalMatrix) -> Result<Self, Error> {
        let x = LinearSubspace::from_forms(n, x_forms)?;
        let y = LinearSubspace::from_forms(n, y_forms)?;
        let stacked = x_forms.vstack(y_forms);
        let independent = stacked.transpose().rank_kernel_image().pivots;
        let w = LinearSubspace::from_forms(n, &stacked.select_rows(&independent))?;
        let (dx, dy, dw) = (x.dim(), y.dim(), w.dim());
        let excess_rank = n + dw - dx - dy;
        let codim_w_in_y = dy - dw;
        Ok(Self { n, x, y, w, excess_rank, codim_w_in_y })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn x(&self) -> &LinearSubspace {
        &self.x
    }

    pub fn y(&self) -> &LinearSubspace {
        &self.y
    }

    pub fn w(&self) -> &LinearSubspace {
        &self.w
    }

    pub fn dim_x(&self) -> usize {
        self.x.dim()
    }

    pub fn dim_y(&self) -> usize {
        self.y.dim()
    }

    pub fn dim_w(&self) -> usize {
        self.w.dim()
    }

    /// `dim S + dim W - dim X - dim Y`.
    pub fn excess_rank(&self) -> usize {
        self.excess_rank
    }

    /// Codimension `m` of `W` in `Y`.
    pub fn codim_w_in_y(&self) -> usize {
        self.codim_w_in_y
    }

    /// The same intersection with the roles of `X` and `Y` exchanged.
    pub fn swapped(&self) -> Self {
        Self::new(self.n, self.y.forms(), self.x.forms()).expect("forms already validated")
    }

    fn koszul_x(&self) -> GradedChainComplex {
        GradedChainComplex::koszul(self.n, &self.x.form_polys()).expect("linear forms are homogeneous")
    }

    fn koszul_y(&self) -> GradedChainComplex {
        GradedChainComplex::koszul(self.n, &self.y.form_polys()).expect("linear forms are homogeneous")
    }

    /// Tangent spaces, the excess quotient and an explicit splitting of it.
    pub fn analyze(&self) -> ExcessData {
        let tangent_x = self.x.basis().clone();
        let tangent_y = self.y.basis().clone();
        let tangent_w = self.w.basis().clone();
        let sum_map = tangent_x.hstack(&tangent_y);
        let quotient_map = sum_map.transpose().kernel_matrix().transpose();
        let splitting = quotient_map.right_inverse().expect("quotient map has full row rank");
        let x_forms = self.x.forms().clone();
        let normal_inclusion = &x_forms * &tangent_y;
        let normal_to_excess = x_forms
            .transpose()
            .solve(&quotient_map.transpose())
            .expect("excess quotient factors through the normal bundle of X")
            .transpose();
        ExcessData {
            tangent_x,
            tangent_y,
            tangent_w,
            sum_map,
            quotient_map,
            splitting,
            normal_projection: x_forms,
            normal_inclusion,
            normal_to_excess,
        }
    }

    pub fn tor_table(&self, route: TorRoute, window: Window) -> HilbertTable {
        match route {
            TorRoute::ResolveX => self.koszul_x().base_change(&self.y).homology_table(window),
            TorRoute::ResolveY => self.koszul_y().base_change(&self.x).homology_table(window),
            TorRoute::Diagonal => oracle::tor_via_diagonal(self, window),
        }
    }

    /// `Tor_k` against `C(e, k)·t^k·H_W(t)`.
    pub fn verify_excess_tor(&self, window: Window) -> Comparison {
        let excess = self.analyze();
        Comparison::new(
            "excess_tor",
            "tor",
            self.tor_table(TorRoute::ResolveX, window),
            "wedge_excess_dual",
            excess.wedge_dual_table(&[0], window),
        )
    }

    /// `j^* i_* F` for `F = ⊕ O_X(a)` against `⊕_k F|_W ⊗ ∧^k E^∨ [k]`.
    pub fn verify_hkr_kernel(&self, twists: &[i64], window: Window) -> Comparison {
        let resolution = self.koszul_x();
        let mut left = HilbertTable::new(window);
        for &a in twists {
            left = left.sum(&resolution.twisted(a).base_change(&self.y).homology_table(window));
        }
        Comparison::new("hkr_kernel", "pull_push", left, "wedge_excess_dual", self.analyze().wedge_dual_table(twists, window))
    }

    /// `Ext^*_S(i_*F, j_*G)` for `F = ⊕ O_X(a)`, `G = ⊕ O_Y(b)`: direct
    /// computation against the degenerate spectral-sequence formula.
    pub fn ext_table(&self, f_twists: &[i64], g_twists: &[i64], window: Window) -> Comparison {
        let resolution = self.koszul_x();
        let mut direct = HilbertTable::new(window);
        for &a in f_twists {
            for &b in g_twists {
                direct = direct.sum(&resolution.twisted(a).hom_into(&self.y, b).homology_table(window));
            }
        }
        let excess = self.analyze();
        let (e, w) = (excess.rank(), excess.tangent_w.cols());
        let m = self.codim_w_in_y as i64;
        let mut formula = HilbertTable::new(window);
        for &a in f_twists {
            for &b in g_twists {
                for j in 0..=e as i64 {
                    let q = m + j;
                    let generator = a - b - q;
                    for t in window.degrees() {
                        formula.add_to(q, t, binomial(e as u64, j as u64) * monomial_count(w, t - generator));
                    }
                }
            }
        }
        Comparison::new("ext", "direct", direct, "spectral_sequence", formula)
    }

    /// Alternating sum of Tor against the series `H_X·H_Y / H_S = (1-t)^{n - dim X - dim Y}`.
    pub fn verify_euler_characteristic(&self, window: Window) -> EulerCheck {
        let tor = self.tor_table(TorRoute::ResolveX, window);
        let computed = window
            .degrees()
            .map(|t| tor.entries().filter(|((_, u), _)| *u == t).map(|((i, _), v)| if i % 2 == 0 { v as i64 } else { -(v as i64) }).sum())
            .collect();
        let exponent = self.n as i64 - self.dim_x() as i64 - self.dim_y() as i64;
        let predicted = window.degrees().map(|t| one_minus_t_power(exponent, t)).collect();
        EulerCheck { window, computed, predicted }
    }
}

/// Coefficient of `t^d` in `(1 - t)^p` for any integer `p`.
fn one_minus_t_power(p: i64, d: i64) -> i64 {
    if d < 0 {
        return 0;
    }
    if p >= 0 {
        let c = binomial(p as u64, d as u64) as i64;
        if d % 2 == 0 {
            c
        } else {
            -c
        }
    } else {
        monomial_count((-p) as usize, d) as i64
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerCheck {
    pub window: Window,
    pub computed: Vec<i64>,
    pub predicted: Vec<i64>,
}

impl EulerCheck {
    pub fn passed(&self) -> bool {
        self.computed == self.predicted
    }
}

/// Linear-algebra data of an intersection, all in the coordinates of `S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExcessData {
    /// Columns span `T_X`, `T_Y`, `T_W` inside `T_S = kⁿ`.
    pub tangent_x: RationalMatrix,
    pub tangent_y: RationalMatrix,
    pub tangent_w: RationalMatrix,
    /// `T_X ⊕ T_Y → T_S`.
    pub sum_map: RationalMatrix,
    /// `T_S → E`, with kernel `T_X + T_Y`.
    pub quotient_map: RationalMatrix,
    /// `E → T_S`, a right inverse of `quotient_map`.
    pub splitting: RationalMatrix,
    /// `T_S → N_{X/S}` (the forms cutting out `X`).
    pub normal_projection: RationalMatrix,
    /// `T_Y → N_{X/S}`; its image is `N_{W/Y} = T_Y / T_W`.
    pub normal_inclusion: RationalMatrix,
    /// `N_{X/S} → E`.
    pub normal_to_excess: RationalMatrix,
}

impl ExcessData {
    pub fn rank(&self) -> usize {
        self.quotient_map.rows()
    }

    /// `quotient ∘ sum = 0`, `quotient` surjective and `quotient ∘ splitting = id_E`.
    pub fn splitting_holds(&self) -> bool {
        (&self.quotient_map * &self.sum_map).is_zero()
            && self.quotient_map.rank() == self.rank()
            && (&self.quotient_map * &self.splitting).is_identity()
    }

    /// Exactness of `0 → N_{W/Y} → N_{X/S}|_W → E → 0`.
    pub fn normal_sequence_exact(&self) -> bool {
        let m = self.tangent_y.cols() - self.tangent_w.cols();
        let nx = self.normal_projection.rows();
        self.normal_inclusion.rank() == m
            && (&self.normal_to_excess * &self.normal_inclusion).is_zero()
            && self.normal_to_excess.rank() == self.rank()
            && m + self.rank() == nx
            && &self.normal_to_excess * &self.normal_projection == self.quotient_map
    }

    /// Table of `⊕_a ⊕_k O_W(a) ⊗ ∧^k E^∨` with `∧^k E^∨` in cohomological degree `-k`.
    pub fn wedge_dual_table(&self, twists: &[i64], window: Window) -> HilbertTable {
        let (e, w) = (self.rank() as u64, self.tangent_w.cols());
        let mut table = HilbertTable::new(window);
        for &a in twists {
            for k in 0..=e {
                for t in window.degrees() {
                    table.add_to(-(k as i64), t, binomial(e, k) * monomial_count(w, t - k as i64 + a));
                }
            }
        }
        table
    }
}

/// Helper for building instances from integer coefficient rows.
pub fn instance_from_i64(n: usize, x: &[&[i64]], y: &[&[i64]]) -> Result<IntersectionInstance, Error> {
    let m = |rows: &[&[i64]]| if rows.is_empty() { RationalMatrix::zeros(0, n) } else { RationalMatrix::from_i64(rows) };
    IntersectionInstance::new(n, &m(x), &m(y))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(lo: i64, hi: i64) -> Window {
        Window::new(lo, hi).unwrap()
    }

    fn transversal() -> IntersectionInstance {
        instance_from_i64(2, &[&[1, 0]], &[&[0, 1]]).unwrap()
    }

    fn self_line() -> IntersectionInstance {
        instance_from_i64(2, &[&[0, 1]], &[&[0, 1]]).unwrap()
    }

    fn planes() -> IntersectionInstance {
        instance_from_i64(4, &[&[0, 0, 1, 0], &[0, 0, 0, 1]], &[&[0, 1, 0, 0], &[0, 0, 0, 1]]).unwrap()
    }

    #[test]
    fn excess_ranks() {
        let t = transversal();
        assert_eq!((t.dim_w(), t.excess_rank()), (0, 0));
        let s = self_line();
        assert_eq!((s.dim_w(), s.excess_rank()), (1, 1));
        let p = planes();
        assert_eq!((p.dim_w(), p.excess_rank()), (1, 1));
        for inst in [t, s, p] {
            let d = inst.analyze();
            assert_eq!(d.rank(), inst.excess_rank());
            assert!(d.splitting_holds());
            assert!(d.normal_sequence_exact());
        }
    }

    #[test]
    fn w_lies_in_x_and_y() {
        let p = planes();
        let wb = p.w().basis();
        assert!((p.x().forms() * wb).is_zero());
        assert!((p.y().forms() * wb).is_zero());
    }

    #[test]
    fn dependent_forms_are_rejected() {
        let err = instance_from_i64(2, &[&[1, 0], &[2, 0]], &[&[0, 1]]).unwrap_err();
        assert!(matches!(err, Error::DependentForms(_)));
    }

    #[test]
    fn tor_examples() {
        let window = w(0, 4);
        let t = transversal().tor_table(TorRoute::ResolveX, window);
        assert_eq!(t.entries().collect::<Vec<_>>(), vec![((0, 0), 1)]);
        let s = self_line().tor_table(TorRoute::ResolveX, window);
        assert_eq!(s.row(0), vec![1, 1, 1, 1, 1]);
        assert_eq!(s.row(-1), vec![0, 1, 1, 1, 1]);
        let p = planes().tor_table(TorRoute::ResolveY, window);
        assert_eq!(p.row(-1), vec![0, 1, 1, 1, 1]);
        assert_eq!(p.row(-2), vec![0; 5]);
    }

    #[test]
    fn line_with_itself_in_three_space() {
        let inst = instance_from_i64(3, &[&[1, 0, 0], &[0, 1, 0]], &[&[1, 0, 0], &[0, 1, 0]]).unwrap();
        assert_eq!(inst.excess_rank(), 2);
        let c = inst.verify_excess_tor(w(0, 4));
        assert!(c.passed(), "{:?}", c.mismatches());
        assert_eq!(c.left.row(-2), vec![0, 0, 1, 1, 1]);
    }

    #[test]
    fn hkr_kernel_twists() {
        let s = self_line();
        let window = w(-2, 4);
        let plain = s.verify_hkr_kernel(&[0], window);
        assert!(plain.passed());
        let twisted = s.verify_hkr_kernel(&[-1], window);
        assert!(twisted.passed());
        assert_eq!(plain.left.row(0), vec![0, 0, 1, 1, 1, 1, 1]);
        assert_eq!(twisted.left.row(0), vec![0, 0, 0, 1, 1, 1, 1]);
        assert_eq!(twisted.left.row(-1), vec![0, 0, 0, 0, 1, 1, 1]);
    }

    #[test]
    fn ext_transversal_and_self_line() {
        let window = w(-4, 4);
        let c = transversal().ext_table(&[0], &[0], window);
        assert!(c.passed(), "{:?}", c.mismatches());
        assert_eq!(c.left.entries().collect::<Vec<_>>(), vec![((1, -1), 1)]);
        let c = self_line().ext_table(&[0], &[0], window);
        assert!(c.passed(), "{:?}", c.mismatches());
        assert_eq!(c.left.row(0), vec![0, 0, 0, 0, 1, 1, 1, 1, 1]);
        assert_eq!(c.left.row(1), vec![0, 0, 0, 1, 1, 1, 1, 1, 1]);
    }

    #[test]
    fn ext_twist_equivariance() {
        let p = planes();
        let window = w(-6, 4);
        let base = p.ext_table(&[0], &[0], window);
        let shifted = p.ext_table(&[0], &[-2], window);
        assert!(shifted.passed());
        assert_eq!(shifted.left.restricted(w(-4, 4)), base.left.shifted(0, -2).restricted(w(-4, 4)));
    }

    #[test]
    fn euler_characteristic() {
        for inst in [transversal(), self_line(), planes()] {
            let e = inst.verify_euler_characteristic(w(0, 5));
            assert!(e.passed(), "{e:?}");
        }
    }

    #[test]
    fn symmetric_in_x_and_y() {
        let p = planes();
        let window = w(0, 4);
        assert_eq!(p.tor_table(TorRoute::ResolveX, window), p.swapped().tor_table(TorRoute::ResolveX, window));
    }
}
