//! Brute-force computations that cross-check the closed-form sides.
//!
//! Everything here is built from Koszul complexes, base change and monomial
//! enumeration directly. Twisted sectors use the diagonal of `Z × Z` in
//! variables `(x, y)`, resolved by the regular sequence `x_i - y_i`, against
//! the graph `y = g·x`. The centralizer of `g` acts on every term of the
//! resulting complexes; its traces on homology are recorded per bidegree.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::complex::{GradedChainComplex, HilbertTable, LinearSubspace, Poly, Window};
use crate::error::Error;
use crate::exact::{exterior_power_action, index_of, monomials, rat, symmetric_power_action, to_dimension, Rational, RationalMatrix};
use crate::group::FiniteMatrixGroup;
use crate::intersection::IntersectionInstance;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OracleSide {
    /// `Ext_{Z×Z}(O_Δ, O_{Δ^g})`, in nonnegative cohomological degrees.
    Ext,
    /// `Tor^{Z×Z}(O_Δ, O_{Δ^g})`, `Tor_k` in cohomological degree `-k`.
    Tor,
}

/// One twisted sector computed from scratch, with centralizer traces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedSectorOracleResult {
    pub g: usize,
    pub side: OracleSide,
    pub table: HilbertTable,
    /// Elements of the centralizer of `g`, in group order.
    pub centralizer: Vec<usize>,
    /// Per bidegree, the trace of each centralizer element (aligned with `centralizer`).
    pub traces: BTreeMap<(i64, i64), Vec<Rational>>,
}

impl TwistedSectorOracleResult {
    /// Traces at the identity, which must reproduce the table.
    pub fn identity_traces_match(&self) -> bool {
        let pos = self.centralizer.iter().position(|&h| h == 0).expect("identity centralizes everything");
        let window = self.table.window();
        let mut from_traces = HilbertTable::new(window);
        for (&(i, t), tr) in &self.traces {
            match to_dimension(&tr[pos]) {
                Some(d) => from_traces.set(i, t, d),
                None => return false,
            }
        }
        from_traces == self.table
    }
}

/// Koszul resolution of the diagonal of `𝔸ⁿ × 𝔸ⁿ` by `x_i - y_i`.
pub fn diagonal_resolution(n: usize) -> GradedChainComplex {
    let forms: Vec<Poly> = (0..n).map(|i| &Poly::var(2 * n, i) - &Poly::var(2 * n, n + i)).collect();
    GradedChainComplex::koszul(2 * n, &forms).expect("linear forms are homogeneous")
}

/// The graph `{(x, g·x)}` parametrised by `x`.
pub fn graph(g: &RationalMatrix) -> LinearSubspace {
    let n = g.rows();
    LinearSubspace::from_basis(&RationalMatrix::identity(n).vstack(g)).expect("a graph is parametrised injectively")
}

/// `Tor^{S×S}(O_{X×Y}, O_Δ)`: the diagonal resolution restricted to `X × Y`.
pub fn tor_via_diagonal(instance: &IntersectionInstance, window: Window) -> HilbertTable {
    let n = instance.n();
    let (bx, by) = (instance.x().basis(), instance.y().basis());
    let (dx, dy) = (bx.cols(), by.cols());
    let mut product = RationalMatrix::zeros(2 * n, dx + dy);
    for r in 0..n {
        for c in 0..dx {
            product.set(r, c, bx.get(r, c).clone());
        }
        for c in 0..dy {
            product.set(n + r, dx + c, by.get(r, c).clone());
        }
    }
    let target = LinearSubspace::from_basis(&product).expect("X × Y is parametrised injectively");
    diagonal_resolution(n).base_change(&target).homology_table(window)
}

fn sector_complex(g: &RationalMatrix, side: OracleSide) -> GradedChainComplex {
    let resolution = diagonal_resolution(g.rows());
    match side {
        OracleSide::Tor => resolution.base_change(&graph(g)),
        OracleSide::Ext => resolution.hom_into(&graph(g), 0),
    }
}

/// Action of `h` on the internal-degree-`t` piece of term `i`. Functions on the
/// graph transform by `(h⁻¹)ᵀ`; Koszul generators transform like the forms
/// `x_i - y_i`, and their duals contragrediently.
fn term_action(complex: &GradedChainComplex, side: OracleSide, i: i64, t: i64, h: &RationalMatrix) -> RationalMatrix {
    let Some(term) = complex.term(i) else {
        return RationalMatrix::zeros(0, 0);
    };
    let j = i.unsigned_abs() as usize;
    let functions = h.inverse().expect("group elements are invertible").transpose();
    let generators = match side {
        OracleSide::Tor => exterior_power_action(&functions, j),
        OracleSide::Ext => exterior_power_action(h, j),
    };
    let deg = term.degrees[0];
    assert!(term.degrees.iter().all(|&d| d == deg), "Koszul terms of linear forms have equal generator degrees");
    if t - deg < 0 {
        return RationalMatrix::zeros(0, 0);
    }
    generators.kron(&symmetric_power_action(&functions, (t - deg) as usize))
}

/// Dimension and per-centralizer traces at one bidegree.
type SectorEntry = ((i64, i64), u64, Vec<Rational>);

fn sector(group: &FiniteMatrixGroup, g: usize, side: OracleSide, window: Window) -> TwistedSectorOracleResult {
    let complex = sector_complex(group.element(g), side);
    let centralizer = group.centralizer(g);
    let per_degree: Vec<Vec<SectorEntry>> = window
        .degrees()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|t| {
            let images: BTreeMap<i64, (usize, RationalMatrix)> = complex
                .degrees()
                .map(|i| {
                    let d = complex.evaluate(i, t);
                    let ki = d.rank_kernel_image();
                    (i, (ki.rank, RationalMatrix::from_columns(d.rows(), &ki.image)))
                })
                .collect();
            let empty = (0usize, RationalMatrix::zeros(0, 0));
            let actions: Vec<BTreeMap<i64, RationalMatrix>> = centralizer
                .iter()
                .map(|&h| complex.degrees().map(|i| (i, term_action(&complex, side, i, t, group.element(h)))).collect())
                .collect();
            complex
                .degrees()
                .filter_map(|i| {
                    let dim = complex.term(i).map_or(0, |m| m.piece_dim(t));
                    let (out_rank, _) = images.get(&i).unwrap_or(&empty);
                    let (in_rank, in_image) = images.get(&(i - 1)).unwrap_or(&empty);
                    let h_dim = dim - *out_rank as u64 - *in_rank as u64;
                    if dim == 0 {
                        return None;
                    }
                    let traces = actions
                        .iter()
                        .map(|act| {
                            let here = &act[&i];
                            let mut tr = here.trace();
                            if let (Some((_, out_image)), Some(next)) = (images.get(&i), act.get(&(i + 1))) {
                                tr -= RationalMatrix::restricted_trace(out_image, next).expect("image is stable under the centralizer");
                            }
                            if *in_rank > 0 {
                                tr -= RationalMatrix::restricted_trace(in_image, here).expect("image is stable under the centralizer");
                            }
                            tr
                        })
                        .collect();
                    Some(((i, t), h_dim, traces))
                })
                .collect()
        })
        .collect();
    let mut table = HilbertTable::new(window);
    let mut traces = BTreeMap::new();
    for ((i, t), dim, tr) in per_degree.into_iter().flatten() {
        table.set(i, t, dim);
        if tr.iter().any(|x: &Rational| !x.is_zero()) {
            traces.insert((i, t), tr);
        }
    }
    TwistedSectorOracleResult { g, side, table, centralizer, traces }
}

pub fn twisted_ext_oracle(group: &FiniteMatrixGroup, g: usize, window: Window) -> TwistedSectorOracleResult {
    sector(group, g, OracleSide::Ext, window)
}

pub fn twisted_tor_oracle(group: &FiniteMatrixGroup, g: usize, window: Window) -> TwistedSectorOracleResult {
    sector(group, g, OracleSide::Tor, window)
}

/// Invariants of `G` on `⊕_g sector(g)`. An element `h` permutes the sectors
/// by conjugation, so only sectors it fixes contribute to its trace.
pub fn invariant_table(group: &FiniteMatrixGroup, sectors: &[TwistedSectorOracleResult], window: Window) -> Result<HilbertTable, Error> {
    let mut sums: BTreeMap<(i64, i64), Rational> = BTreeMap::new();
    for s in sectors {
        for (key, tr) in &s.traces {
            let total: Rational = tr.iter().sum();
            *sums.entry(*key).or_insert_with(Rational::zero) += total;
        }
    }
    let order = rat(group.order() as i64);
    let mut table = HilbertTable::new(window);
    for ((i, t), total) in sums {
        let avg = total / &order;
        let d = to_dimension(&avg).ok_or_else(|| Error::NotAGroup(format!("invariant count {avg} at ({i}, {t}) is not a dimension")))?;
        table.set(i, t, d);
    }
    Ok(table)
}

/// All sectors on one side, in group order.
pub fn all_sectors(group: &FiniteMatrixGroup, side: OracleSide, window: Window) -> Vec<TwistedSectorOracleResult> {
    (0..group.order()).into_par_iter().map(|g| sector(group, g, side, window)).collect()
}

/// `G`-invariants of the twisted Ext sector sum.
pub fn orbifold_cohomology_oracle(group: &FiniteMatrixGroup, window: Window) -> Result<HilbertTable, Error> {
    invariant_table(group, &all_sectors(group, OracleSide::Ext, window), window)
}

/// `G`-invariants of the twisted Tor sector sum.
pub fn orbifold_homology_oracle(group: &FiniteMatrixGroup, window: Window) -> Result<HilbertTable, Error> {
    invariant_table(group, &all_sectors(group, OracleSide::Tor, window), window)
}

/// Dimension of the degree-`d` polynomials fixed by every generator, by
/// solving `(ρ(s) - I)v = 0` over the monomial basis.
pub fn invariants_by_enumeration(group: &FiniteMatrixGroup, d: usize) -> u64 {
    let n = group.dim();
    let basis = monomials(n, d as i64);
    let index = index_of(&basis);
    let mut stacked = RationalMatrix::zeros(0, basis.len());
    for s in group.generators() {
        let mut rho = RationalMatrix::zeros(basis.len(), basis.len());
        for (col, mono) in basis.iter().enumerate() {
            let image = Poly::term(n, mono.clone(), Rational::one()).substitute(s);
            for (e, c) in image.terms() {
                rho.set(index[e], col, c.clone());
            }
        }
        stacked = stacked.vstack(&(&rho - &RationalMatrix::identity(basis.len())));
    }
    stacked.nullity() as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intersection::{instance_from_i64, TorRoute};

    fn w(lo: i64, hi: i64) -> Window {
        Window::new(lo, hi).unwrap()
    }

    fn group(gens: &[&[&[i64]]]) -> FiniteMatrixGroup {
        let gens: Vec<RationalMatrix> = gens.iter().map(|g| RationalMatrix::from_i64(g)).collect();
        FiniteMatrixGroup::build(&gens, 48).unwrap()
    }

    fn sign() -> FiniteMatrixGroup {
        group(&[&[&[-1]]])
    }

    #[test]
    fn diagonal_route_examples() {
        let window = w(0, 4);
        let transversal = instance_from_i64(2, &[&[1, 0]], &[&[0, 1]]).unwrap();
        assert_eq!(tor_via_diagonal(&transversal, window).entries().collect::<Vec<_>>(), vec![((0, 0), 1)]);
        let line = instance_from_i64(2, &[&[0, 1]], &[&[0, 1]]).unwrap();
        assert_eq!(tor_via_diagonal(&line, window), line.tor_table(TorRoute::ResolveX, window));
        let planes = instance_from_i64(4, &[&[0, 0, 1, 0], &[0, 0, 0, 1]], &[&[0, 1, 0, 0], &[0, 0, 0, 1]]).unwrap();
        assert_eq!(tor_via_diagonal(&planes, window), planes.tor_table(TorRoute::ResolveY, window));
    }

    #[test]
    fn identity_sector_on_the_line() {
        let g = group(&[&[&[1]]]);
        let ext = twisted_ext_oracle(&g, 0, w(-3, 3));
        assert_eq!(ext.table.row(0), vec![0, 0, 0, 1, 1, 1, 1]);
        assert_eq!(ext.table.row(1), vec![0, 0, 1, 1, 1, 1, 1]);
        let tor = twisted_tor_oracle(&g, 0, w(0, 3));
        assert_eq!(tor.table.row(-1), vec![0, 1, 1, 1]);
    }

    #[test]
    fn sign_sector_is_the_origin() {
        let g = sign();
        let ext = twisted_ext_oracle(&g, 1, w(-3, 3));
        assert_eq!(ext.table.entries().collect::<Vec<_>>(), vec![((1, -1), 1)]);
        assert_eq!(ext.traces[&(1, -1)], vec![rat(1), rat(-1)]);
        let tor = twisted_tor_oracle(&g, 1, w(-3, 3));
        assert_eq!(tor.table.entries().collect::<Vec<_>>(), vec![((0, 0), 1)]);
    }

    #[test]
    fn order_three_sector_is_a_point() {
        let g = group(&[&[&[0, -1], &[1, -1]]]);
        let tor = twisted_tor_oracle(&g, 1, w(0, 5));
        assert_eq!(tor.table.entries().collect::<Vec<_>>(), vec![((0, 0), 1)]);
    }

    #[test]
    fn reflection_sector_matches_forms_on_the_line() {
        let g = group(&[&[&[1, 0], &[0, -1]]]);
        let tor = twisted_tor_oracle(&g, 1, w(0, 4));
        assert_eq!(tor.table.row(0), vec![1, 1, 1, 1, 1]);
        assert_eq!(tor.table.row(-1), vec![0, 1, 1, 1, 1]);
        assert_eq!(tor.table.row(-2), vec![0; 5]);
    }

    #[test]
    fn identity_traces_are_dimensions() {
        let g = group(&[&[&[0, 1], &[1, 0]]]);
        for x in 0..g.order() {
            assert!(twisted_ext_oracle(&g, x, w(-4, 3)).identity_traces_match());
            assert!(twisted_tor_oracle(&g, x, w(-4, 3)).identity_traces_match());
        }
    }

    #[test]
    fn actions_commute_with_differentials() {
        let g = group(&[&[&[0, -1], &[1, 0]]]);
        for side in [OracleSide::Ext, OracleSide::Tor] {
            for x in 0..g.order() {
                let complex = sector_complex(g.element(x), side);
                for h in g.centralizer(x) {
                    for t in -3..=3 {
                        for i in complex.degrees() {
                            if complex.term(i + 1).is_none() {
                                continue;
                            }
                            let d = complex.evaluate(i, t);
                            let (a, b) = (term_action(&complex, side, i, t, g.element(h)), term_action(&complex, side, i + 1, t, g.element(h)));
                            if d.rows() == 0 || d.cols() == 0 {
                                continue;
                            }
                            assert_eq!(&d * &a, &b * &d, "side {side:?}, g={x}, h={h}, i={i}, t={t}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(invariants_by_enumeration(&group(&[&[&[1, 0], &[0, 1]]]), 3), 4);
        assert_eq!(invariants_by_enumeration(&sign(), 4), 1);
        assert_eq!(invariants_by_enumeration(&sign(), 3), 0);
        assert_eq!(invariants_by_enumeration(&group(&[&[&[0, 1], &[1, 0]]]), 2), 2);
    }

    #[test]
    fn sign_group_homology_invariants() {
        let g = sign();
        let window = w(-3, 4);
        let hh = orbifold_homology_oracle(&g, window).unwrap();
        // even functions plus the twisted point; odd-degree forms x^k dx with k odd
        assert_eq!(hh.row(0), vec![0, 0, 0, 2, 0, 1, 0, 1]);
        assert_eq!(hh.row(-1), vec![0, 0, 0, 0, 0, 1, 0, 1]);
    }
}
