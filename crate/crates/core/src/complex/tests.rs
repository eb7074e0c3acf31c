use proptest::prelude::*;

use super::*;
use crate::exact::{monomial_count, rat, RationalMatrix};

fn forms(rows: &[&[i64]]) -> Vec<Poly> {
    rows.iter().map(|r| Poly::linear(&r.iter().map(|&x| rat(x)).collect::<Vec<_>>())).collect()
}

fn w(lo: i64, hi: i64) -> Window {
    Window::new(lo, hi).unwrap()
}

fn subspace(n: usize, rows: &[&[i64]]) -> LinearSubspace {
    let m = if rows.is_empty() { RationalMatrix::zeros(0, n) } else { RationalMatrix::from_i64(rows) };
    LinearSubspace::from_forms(n, &m).unwrap()
}

#[test]
fn koszul_of_one_form() {
    let k = GradedChainComplex::koszul(2, &forms(&[&[0, 1]])).unwrap();
    assert_eq!((k.lo(), k.hi()), (-1, 0));
    assert_eq!(k.term(-1).unwrap().degrees, vec![1]);
    let h = k.homology_table(w(0, 4));
    assert_eq!(h.row(0), vec![1, 1, 1, 1, 1]);
    assert_eq!(h.row(-1), vec![0; 5]);
}

#[test]
fn koszul_of_two_coordinates_resolves_the_point() {
    let k = GradedChainComplex::koszul(2, &forms(&[&[1, 0], &[0, 1]])).unwrap();
    let ranks: Vec<usize> = k.degrees().map(|i| k.term(i).unwrap().rank()).collect();
    assert_eq!(ranks, vec![1, 2, 1]);
    let h = k.homology_table(w(0, 5));
    assert_eq!(h.entries().collect::<Vec<_>>(), vec![((0, 0), 1)]);
}

#[test]
fn koszul_of_nothing_is_the_ring() {
    let k = GradedChainComplex::koszul(3, &[]).unwrap();
    assert_eq!(k, GradedChainComplex::structure(3));
}

#[test]
fn base_change_transversal_and_self_intersection() {
    let k = GradedChainComplex::koszul(2, &forms(&[&[0, 1]])).unwrap();
    let h = k.base_change(&subspace(2, &[&[1, 0]])).homology_table(w(0, 4));
    assert_eq!(h.entries().collect::<Vec<_>>(), vec![((0, 0), 1)]);
    let h = k.base_change(&subspace(2, &[&[0, 1]])).homology_table(w(0, 3));
    assert_eq!(h.row(0), vec![1, 1, 1, 1]);
    assert_eq!(h.row(-1), vec![0, 1, 1, 1]);
}

#[test]
fn base_change_along_identity() {
    let k = GradedChainComplex::koszul(2, &forms(&[&[1, 2], &[0, 1]])).unwrap();
    assert_eq!(k.base_change(&LinearSubspace::whole(2)), k);
    assert_eq!(k.base_change(&subspace(2, &[])), k);
}

#[test]
fn hom_into_a_line_from_the_point_resolution() {
    let k = GradedChainComplex::koszul(2, &forms(&[&[1, 0], &[0, 1]])).unwrap();
    let ext = k.hom_into(&subspace(2, &[&[0, 1]]), 0).homology_table(w(-4, 4));
    assert_eq!(ext.row(0), vec![0; 9]);
    assert_eq!(ext.entries().collect::<Vec<_>>(), vec![((1, -1), 1), ((2, -2), 1)]);
}

#[test]
fn hom_from_the_ring_is_the_target() {
    let o = GradedChainComplex::structure(2);
    let y = subspace(2, &[&[0, 1]]);
    let ext = o.hom_into(&y, 1).homology_table(w(-3, 3));
    let expected = HilbertTable::from_fn(w(-3, 3), [0], |_, t| monomial_count(1, t + 1));
    assert_eq!(ext, expected);
}

#[test]
fn hom_between_transversal_lines() {
    let k = GradedChainComplex::koszul(2, &forms(&[&[0, 1]])).unwrap();
    let ext = k.hom_into(&subspace(2, &[&[1, 0]]), 0).homology_table(w(-4, 4));
    assert_eq!(ext.entries().collect::<Vec<_>>(), vec![((1, -1), 1)]);
}

#[test]
fn regular_sequences_are_acyclic() {
    let all: [&[i64]; 4] = [&[1, 0, 0, 0], &[1, 1, 0, 0], &[0, 2, -1, 0], &[3, 0, 1, 1]];
    for c in 0..=4 {
        let k = GradedChainComplex::koszul(4, &forms(&all[..c])).unwrap();
        let h = k.homology_table(w(0, 4));
        for ((i, t), v) in h.entries() {
            assert_eq!(i, 0, "c={c}: homology in degree {i}");
            assert_eq!(v, monomial_count(4 - c, t));
        }
    }
}

#[test]
fn rejects_bad_complexes() {
    assert!(matches!(
        GradedChainComplex::koszul(2, &[&Poly::var(2, 0) + &(&Poly::var(2, 1) * &Poly::var(2, 1))]),
        Err(crate::Error::NotHomogeneous(_))
    ));
    // x·x ≠ 0 as a two-step complex
    let m = |n| GradedFreeModule::new(1, vec![n]);
    let mut d0 = PolyMatrix::zeros(1, 1, 1);
    d0.set(0, 0, Poly::var(1, 0));
    let d1 = d0.clone();
    let err = GradedChainComplex::new(1, 0, vec![m(2), m(1), m(0)], vec![d0, d1]).unwrap_err();
    assert_eq!(err, crate::Error::NotAComplex(0));
}

#[test]
fn tensor_of_koszul_complexes_is_koszul() {
    let f = forms(&[&[1, 0, 0], &[0, 1, 1], &[1, 1, 0]]);
    let whole = GradedChainComplex::koszul(3, &f).unwrap();
    let split = GradedChainComplex::koszul(3, &f[..1]).unwrap().tensor(&GradedChainComplex::koszul(3, &f[1..]).unwrap());
    let window = w(0, 4);
    assert_eq!(split.term_table(window), whole.term_table(window));
    assert_eq!(split.homology_table(window), whole.homology_table(window));
}

#[test]
fn direct_sum_adds_tables() {
    let a = GradedChainComplex::koszul(2, &forms(&[&[0, 1]])).unwrap();
    let b = GradedChainComplex::koszul(2, &forms(&[&[1, 0], &[0, 1]])).unwrap().twisted(1);
    let window = w(-2, 3);
    assert_eq!(a.direct_sum(&b).homology_table(window), a.homology_table(window).sum(&b.homology_table(window)));
}

fn euler(table: &HilbertTable, t: i64) -> i64 {
    table.entries().filter(|((_, u), _)| *u == t).map(|((i, _), v)| if i % 2 == 0 { v as i64 } else { -(v as i64) }).sum()
}

fn arbitrary_koszul() -> impl Strategy<Value = GradedChainComplex> {
    (1usize..4, 0usize..4).prop_flat_map(|(n, c)| {
        proptest::collection::vec(-2i64..3, n * c).prop_map(move |coeffs| {
            let f: Vec<Poly> = coeffs.chunks(n.max(1)).take(c).map(|r| Poly::linear(&r.iter().map(|&x| rat(x)).collect::<Vec<_>>())).collect();
            GradedChainComplex::koszul(n, &f).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn shifts_commute_with_homology(k in arbitrary_koszul(), s in -3i64..4, a in -3i64..4) {
        let window = w(-2, 3);
        let moved = k.shifted(s).twisted(a);
        prop_assert_eq!(moved.homology_table(window.shifted(-a)), k.homology_table(window).shifted(s, a));
    }

    #[test]
    fn euler_characteristic_is_preserved(k in arbitrary_koszul()) {
        let window = w(-1, 4);
        let terms = k.term_table(window);
        let homology = k.homology_table(window);
        for t in window.degrees() {
            prop_assert_eq!(euler(&terms, t), euler(&homology, t));
        }
    }

    #[test]
    fn squares_to_zero_after_base_change(k in arbitrary_koszul(), row in proptest::collection::vec(-2i64..3, 3)) {
        let n = k.nvars();
        let r: Vec<_> = row.iter().take(n).map(|&x| rat(x)).collect();
        prop_assume!(r.len() == n && r.iter().any(|x| *x != rat(0)));
        let target = LinearSubspace::from_forms(n, &RationalMatrix::from_rows(&[r], n).unwrap()).unwrap();
        let b = k.base_change(&target);
        for i in b.degrees() {
            if let (Some(d0), Some(d1)) = (b.differential(i), b.differential(i + 1)) {
                prop_assert!(d1.compose(d0).is_zero());
            }
        }
    }
}
