use std::collections::HashMap;

use rayon::prelude::*;

use super::poly::Poly;
use super::table::{HilbertTable, Window};
use crate::error::Error;
use crate::exact::{monomial_count, monomials, subsets, Exponents, RationalMatrix};

/// Free graded module `⊕ O(-d_i)` over `k[x_1..x_n]`; generator `i` sits in internal degree `d_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedFreeModule {
    pub nvars: usize,
    pub degrees: Vec<i64>,
}

impl GradedFreeModule {
    pub fn new(nvars: usize, degrees: Vec<i64>) -> Self {
        Self { nvars, degrees }
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    pub fn piece_dim(&self, t: i64) -> u64 {
        self.degrees.iter().map(|&d| monomial_count(self.nvars, t - d)).sum()
    }

    /// Basis of the degree-`t` piece: generator-major, monomials in the global order.
    pub fn piece_basis(&self, t: i64) -> Vec<(usize, Exponents)> {
        self.degrees
            .iter()
            .enumerate()
            .flat_map(|(g, &d)| monomials(self.nvars, t - d).into_iter().map(move |m| (g, m)))
            .collect()
    }
}

/// Matrix of polynomials; rows index target generators, columns source generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    nvars: usize,
    entries: Vec<Poly>,
}

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize, nvars: usize) -> Self {
        Self { rows, cols, nvars, entries: vec![Poly::zero(nvars); rows * cols] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn get(&self, r: usize, c: usize) -> &Poly {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, p: Poly) {
        assert_eq!(p.nvars(), self.nvars);
        self.entries[r * self.cols + c] = p;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Poly::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows, self.nvars);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn map(&self, f: impl Fn(&Poly) -> Poly) -> Self {
        let entries: Vec<Poly> = self.entries.iter().map(f).collect();
        let nvars = entries.first().map_or(self.nvars, Poly::nvars);
        Self { rows: self.rows, cols: self.cols, nvars, entries }
    }

    pub fn compose(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "polynomial matrix product shape mismatch");
        let mut out = Self::zeros(self.rows, rhs.cols, self.nvars);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = Poly::zero(self.nvars);
                for k in 0..self.cols {
                    let (a, b) = (self.get(i, k), rhs.get(k, j));
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                out.set(i, j, acc);
            }
        }
        out
    }
}

/// A linear subspace `L ⊆ 𝔸ⁿ` through the origin, carried both as the
/// independent linear forms cutting it out and as a parametrisation `x = P·u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSubspace {
    ambient: usize,
    forms: RationalMatrix,
    basis: RationalMatrix,
}

impl LinearSubspace {
    /// The subspace cut out by the rows of `forms`, which must be independent.
    pub fn from_forms(ambient: usize, forms: &RationalMatrix) -> Result<Self, Error> {
        if forms.cols() != ambient {
            return Err(Error::Dimension(format!("forms have {} coefficients, ambient dimension is {ambient}", forms.cols())));
        }
        if forms.rank() != forms.rows() {
            return Err(Error::DependentForms(format!("{forms}")));
        }
        Ok(Self { ambient, forms: forms.clone(), basis: forms.kernel_matrix() })
    }

    /// The subspace spanned by the independent columns of `basis`, whose
    /// coordinates become the variables of the restricted ring.
    pub fn from_basis(basis: &RationalMatrix) -> Result<Self, Error> {
        if basis.rank() != basis.cols() {
            return Err(Error::DependentForms(format!("parametrisation {basis} is not injective")));
        }
        let forms = basis.transpose().kernel_matrix().transpose();
        Ok(Self { ambient: basis.rows(), forms, basis: basis.clone() })
    }

    pub fn whole(ambient: usize) -> Self {
        Self { ambient, forms: RationalMatrix::zeros(0, ambient), basis: RationalMatrix::identity(ambient) }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn forms(&self) -> &RationalMatrix {
        &self.forms
    }

    pub fn basis(&self) -> &RationalMatrix {
        &self.basis
    }

    pub fn form_polys(&self) -> Vec<Poly> {
        (0..self.forms.rows()).map(|r| Poly::linear(self.forms.row(r))).collect()
    }
}

/// Bounded cochain complex of graded free modules over `k[x_1..x_n]`.
///
/// `terms[k]` sits in cohomological degree `lo + k`; `diffs[k]` maps
/// `terms[k] → terms[k+1]`. Each differential entry from a generator of
/// degree `a` to one of degree `b` is homogeneous of degree `a - b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedChainComplex {
    nvars: usize,
    lo: i64,
    terms: Vec<GradedFreeModule>,
    diffs: Vec<PolyMatrix>,
}

impl GradedChainComplex {
    /// Validates shapes, homogeneity and `d ∘ d = 0` (symbolically).
    pub fn new(nvars: usize, lo: i64, terms: Vec<GradedFreeModule>, diffs: Vec<PolyMatrix>) -> Result<Self, Error> {
        if diffs.len() + 1 != terms.len().max(1) {
            return Err(Error::Dimension(format!("{} terms need {} differentials, got {}", terms.len(), terms.len().saturating_sub(1), diffs.len())));
        }
        for (k, term) in terms.iter().enumerate() {
            if term.nvars != nvars {
                return Err(Error::Dimension(format!("term {k} lives over {} variables, complex over {nvars}", term.nvars)));
            }
        }
        for (k, d) in diffs.iter().enumerate() {
            let (src, tgt) = (&terms[k], &terms[k + 1]);
            if d.rows() != tgt.rank() || d.cols() != src.rank() || d.nvars() != nvars {
                return Err(Error::Dimension(format!(
                    "differential at degree {} is {}x{}, expected {}x{}",
                    lo + k as i64,
                    d.rows(),
                    d.cols(),
                    tgt.rank(),
                    src.rank()
                )));
            }
            for r in 0..d.rows() {
                for c in 0..d.cols() {
                    if let Some(deg) = d.get(r, c).homogeneous_degree()? {
                        let expected = src.degrees[c] - tgt.degrees[r];
                        if deg != expected {
                            return Err(Error::NotHomogeneous(format!(
                                "entry ({r},{c}) of the differential at degree {} has degree {deg}, expected {expected}",
                                lo + k as i64
                            )));
                        }
                    }
                }
            }
        }
        for k in 1..diffs.len() {
            if !diffs[k].compose(&diffs[k - 1]).is_zero() {
                return Err(Error::NotAComplex(lo + k as i64 - 1));
            }
        }
        Ok(Self { nvars, lo, terms, diffs })
    }

    /// The ring itself, concentrated in cohomological degree 0.
    pub fn structure(nvars: usize) -> Self {
        Self { nvars, lo: 0, terms: vec![GradedFreeModule::new(nvars, vec![0])], diffs: Vec::new() }
    }

    /// Koszul complex of homogeneous forms `f_1..f_c`.
    ///
    /// The term in cohomological degree `-j` has one generator `e_S` per
    /// `j`-subset `S` (lexicographic), of internal degree `Σ_{s∈S} deg f_s`,
    /// and `d(e_S) = Σ_k (-1)^k f_{s_k} e_{S∖s_k}`. A zero form counts as linear.
    pub fn koszul(nvars: usize, forms: &[Poly]) -> Result<Self, Error> {
        let mut degs = Vec::with_capacity(forms.len());
        for f in forms {
            if f.nvars() != nvars {
                return Err(Error::Dimension(format!("form {f} is not over {nvars} variables")));
            }
            degs.push(f.homogeneous_degree()?.unwrap_or(1));
        }
        let c = forms.len();
        let bases: Vec<Vec<Vec<usize>>> = (0..=c).rev().map(|j| subsets(c, j)).collect();
        let terms = bases
            .iter()
            .map(|b| GradedFreeModule::new(nvars, b.iter().map(|s| s.iter().map(|&i| degs[i]).sum()).collect()))
            .collect();
        let mut diffs = Vec::with_capacity(c);
        for k in 0..c {
            let (src, tgt) = (&bases[k], &bases[k + 1]);
            let index: HashMap<&[usize], usize> = tgt.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect();
            let mut d = PolyMatrix::zeros(tgt.len(), src.len(), nvars);
            for (col, s) in src.iter().enumerate() {
                for pos in 0..s.len() {
                    let mut rest = s.clone();
                    let removed = rest.remove(pos);
                    let entry = if pos % 2 == 0 { forms[removed].clone() } else { -&forms[removed] };
                    d.set(index[rest.as_slice()], col, entry);
                }
            }
            diffs.push(d);
        }
        Self::new(nvars, -(c as i64), terms, diffs)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Lowest cohomological degree with a term.
    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.terms.len() as i64 - 1
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        self.lo..=self.hi()
    }

    pub fn term(&self, i: i64) -> Option<&GradedFreeModule> {
        usize::try_from(i - self.lo).ok().and_then(|k| self.terms.get(k))
    }

    /// Differential from cohomological degree `i` to `i + 1`.
    pub fn differential(&self, i: i64) -> Option<&PolyMatrix> {
        usize::try_from(i - self.lo).ok().and_then(|k| self.diffs.get(k))
    }

    /// `C ⊗ O(a)`: every generator degree drops by `a`.
    pub fn twisted(&self, a: i64) -> Self {
        let mut out = self.clone();
        for t in &mut out.terms {
            for d in &mut t.degrees {
                *d -= a;
            }
        }
        out
    }

    /// `C[s]`: the term in degree `i` is the old term in degree `i + s`, and the
    /// differential picks up the sign `(-1)^s`.
    pub fn shifted(&self, s: i64) -> Self {
        let mut out = self.clone();
        out.lo -= s;
        if s % 2 != 0 {
            out.diffs = out.diffs.iter().map(|d| d.map(|p| -p)).collect();
        }
        out
    }

    /// Restriction to a linear subspace: substitutes `x = P·u` in every differential.
    pub fn base_change(&self, target: &LinearSubspace) -> Self {
        assert_eq!(target.ambient(), self.nvars, "base change target lives in a different ambient space");
        let k = target.dim();
        let map = target.basis();
        Self {
            nvars: k,
            lo: self.lo,
            terms: self.terms.iter().map(|t| GradedFreeModule::new(k, t.degrees.clone())).collect(),
            diffs: self.diffs.iter().map(|d| substitute_matrix(d, map, k)).collect(),
        }
    }

    /// `Hom(C, O)`: degree `p` holds the dual of degree `-p`; differentials transpose.
    pub fn dual(&self) -> Self {
        let terms: Vec<GradedFreeModule> = self
            .terms
            .iter()
            .rev()
            .map(|t| GradedFreeModule::new(self.nvars, t.degrees.iter().map(|d| -d).collect()))
            .collect();
        let diffs = self.diffs.iter().rev().map(PolyMatrix::transpose).collect();
        Self { nvars: self.nvars, lo: -self.hi(), terms, diffs }
    }

    /// `Hom(C, O_L(b))` for a linear subspace `L`, as a complex of free modules over `O_L`.
    pub fn hom_into(&self, target: &LinearSubspace, twist: i64) -> Self {
        self.dual().base_change(target).twisted(twist)
    }

    /// Tensor product over the common ring, with `d(a⊗b) = da⊗b + (-1)^{|a|} a⊗db`.
    pub fn tensor(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "tensor product over different rings");
        let n = self.nvars;
        let lo = self.lo + other.lo;
        let hi = self.hi() + other.hi();
        // blocks[k] lists (i, j, offset) with i + j = lo + k
        let mut blocks: Vec<Vec<(i64, i64, usize)>> = Vec::new();
        let mut terms = Vec::new();
        for total in lo..=hi {
            let mut degrees = Vec::new();
            let mut block = Vec::new();
            for i in self.degrees() {
                let j = total - i;
                let Some(b) = other.term(j) else { continue };
                let a = self.term(i).unwrap();
                block.push((i, j, degrees.len()));
                for da in &a.degrees {
                    for db in &b.degrees {
                        degrees.push(da + db);
                    }
                }
            }
            blocks.push(block);
            terms.push(GradedFreeModule::new(n, degrees));
        }
        let mut diffs = Vec::new();
        for k in 0..terms.len().saturating_sub(1) {
            let mut d = PolyMatrix::zeros(terms[k + 1].rank(), terms[k].rank(), n);
            let target_offset = |i: i64, j: i64| blocks[k + 1].iter().find(|b| b.0 == i && b.1 == j).map(|b| b.2);
            for &(i, j, off) in &blocks[k] {
                let (a, b) = (self.term(i).unwrap(), other.term(j).unwrap());
                let nb = b.rank();
                if let (Some(da), Some(toff)) = (self.differential(i), target_offset(i + 1, j)) {
                    for ra in 0..da.rows() {
                        for ca in 0..da.cols() {
                            let p = da.get(ra, ca);
                            if p.is_zero() {
                                continue;
                            }
                            for g in 0..nb {
                                d.set(toff + ra * nb + g, off + ca * nb + g, p.clone());
                            }
                        }
                    }
                }
                if let (Some(db), Some(toff)) = (other.differential(j), target_offset(i, j + 1)) {
                    let nb_target = other.term(j + 1).unwrap().rank();
                    for g in 0..a.rank() {
                        for rb in 0..db.rows() {
                            for cb in 0..db.cols() {
                                let p = db.get(rb, cb);
                                if p.is_zero() {
                                    continue;
                                }
                                let entry = if i % 2 == 0 { p.clone() } else { -p };
                                d.set(toff + g * nb_target + rb, off + g * nb + cb, entry);
                            }
                        }
                    }
                }
            }
            diffs.push(d);
        }
        Self::new(n, lo, terms, diffs).expect("tensor product of complexes is a complex")
    }

    /// Direct sum; the result spans the union of both degree ranges.
    pub fn direct_sum(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "direct sum over different rings");
        let n = self.nvars;
        let lo = self.lo.min(other.lo);
        let hi = self.hi().max(other.hi());
        let empty = GradedFreeModule::new(n, Vec::new());
        let term = |c: &Self, i: i64| c.term(i).cloned().unwrap_or_else(|| empty.clone());
        let terms: Vec<GradedFreeModule> = (lo..=hi)
            .map(|i| {
                let mut degrees = term(self, i).degrees;
                degrees.extend(term(other, i).degrees);
                GradedFreeModule::new(n, degrees)
            })
            .collect();
        let mut diffs = Vec::new();
        for i in lo..hi {
            let (s0, s1) = (term(self, i).rank(), term(self, i + 1).rank());
            let (o0, o1) = (term(other, i).rank(), term(other, i + 1).rank());
            let mut d = PolyMatrix::zeros(s1 + o1, s0 + o0, n);
            if let Some(ds) = self.differential(i) {
                for r in 0..s1 {
                    for c in 0..s0 {
                        d.set(r, c, ds.get(r, c).clone());
                    }
                }
            }
            if let Some(dother) = other.differential(i) {
                for r in 0..o1 {
                    for c in 0..o0 {
                        d.set(s1 + r, s0 + c, dother.get(r, c).clone());
                    }
                }
            }
            diffs.push(d);
        }
        Self::new(n, lo, terms, diffs).expect("direct sum of complexes is a complex")
    }

    /// The differential from degree `i` to `i + 1`, evaluated on the internal
    /// degree `t` pieces (bases from [`GradedFreeModule::piece_basis`]).
    pub fn evaluate(&self, i: i64, t: i64) -> RationalMatrix {
        let (Some(src), Some(tgt)) = (self.term(i), self.term(i + 1)) else {
            let rows = self.term(i + 1).map_or(0, |m| m.piece_dim(t) as usize);
            let cols = self.term(i).map_or(0, |m| m.piece_dim(t) as usize);
            return RationalMatrix::zeros(rows, cols);
        };
        let d = self.differential(i).expect("consecutive terms have a differential");
        let source = src.piece_basis(t);
        let mut offsets = Vec::with_capacity(tgt.rank());
        let mut index: HashMap<i64, HashMap<Exponents, usize>> = HashMap::new();
        let mut total = 0usize;
        for &deg in &tgt.degrees {
            offsets.push(total);
            let basis = monomials(self.nvars, t - deg);
            total += basis.len();
            index.entry(t - deg).or_insert_with(|| basis.into_iter().enumerate().map(|(k, m)| (m, k)).collect());
        }
        let mut out = RationalMatrix::zeros(total, source.len());
        for (col, (g, mono)) in source.iter().enumerate() {
            for r in 0..d.rows() {
                let p = d.get(r, *g);
                if p.is_zero() {
                    continue;
                }
                let lookup = &index[&(t - tgt.degrees[r])];
                for (e, c) in p.terms() {
                    let m: Exponents = mono.iter().zip(e).map(|(a, b)| a + b).collect();
                    let row = offsets[r] + lookup[&m];
                    let v = out.get(row, col) + c;
                    out.set(row, col, v);
                }
            }
        }
        out
    }

    /// Dimensions of the terms themselves (no differentials).
    pub fn term_table(&self, window: Window) -> HilbertTable {
        HilbertTable::from_fn(window, self.degrees(), |i, t| self.term(i).map_or(0, |m| m.piece_dim(t)))
    }

    /// `dim H^i` in every cohomological degree and every internal degree of
    /// the window. Internal degrees are processed in parallel.
    pub fn homology_table(&self, window: Window) -> HilbertTable {
        let rows: Vec<Vec<(i64, i64, u64)>> = window
            .degrees()
            .collect::<Vec<_>>()
            .into_par_iter()
            .map(|t| {
                let ranks: HashMap<i64, u64> = self.degrees().map(|i| (i, self.evaluate(i, t).rank() as u64)).collect();
                self.degrees()
                    .map(|i| {
                        let dim = self.term(i).map_or(0, |m| m.piece_dim(t));
                        let out = ranks.get(&i).copied().unwrap_or(0);
                        let inc = ranks.get(&(i - 1)).copied().unwrap_or(0);
                        (i, t, dim - out - inc)
                    })
                    .collect()
            })
            .collect();
        let mut table = HilbertTable::new(window);
        for (i, t, v) in rows.into_iter().flatten() {
            table.set(i, t, v);
        }
        table
    }
}

fn substitute_matrix(d: &PolyMatrix, map: &RationalMatrix, k: usize) -> PolyMatrix {
    let mut out = PolyMatrix::zeros(d.rows(), d.cols(), k);
    for r in 0..d.rows() {
        for c in 0..d.cols() {
            let p = d.get(r, c);
            if !p.is_zero() {
                out.set(r, c, p.substitute(map));
            }
        }
    }
    out
}
