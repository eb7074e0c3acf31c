//! Derived fixed loci of finite-order linear automorphisms of `Z = 𝔸ⁿ`.
//!
//! The derived fixed locus is the derived intersection of the diagonal with
//! the graph of `φ` inside `Z × Z`. Its excess bundle is identified with
//! `T_W` for `W = Z^φ` through the averaging map `t ↦ (1/k)·Σ_{i=1..k} φⁱ(t)`,
//! so its Tor table must match the forms table of `W`.

use crate::complex::{HilbertTable, Window};
use crate::error::Error;
use crate::exact::{binomial, monomial_count, rat, RationalMatrix};
use crate::intersection::{IntersectionInstance, TorRoute};

pub const DEFAULT_ORDER_BOUND: u32 = 24;

/// A square rational matrix of verified finite order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automorphism {
    matrix: RationalMatrix,
    order: u32,
}

impl Automorphism {
    /// Finds the smallest `k ≤ bound` with `matrix^k = I`.
    pub fn new(matrix: RationalMatrix, bound: u32) -> Result<Self, Error> {
        if !matrix.is_square() {
            return Err(Error::Dimension(format!("automorphism {matrix} is not square")));
        }
        let mut power = matrix.clone();
        for k in 1..=bound {
            if power.is_identity() {
                return Ok(Self { matrix, order: k });
            }
            power = &power * &matrix;
        }
        Err(Error::OrderBoundExceeded(bound))
    }

    pub fn matrix(&self) -> &RationalMatrix {
        &self.matrix
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn n(&self) -> usize {
        self.matrix.rows()
    }

    /// `(1/k)·Σ_{i=1..k} φⁱ`, the projector onto the fixed subspace.
    pub fn averaging(&self) -> RationalMatrix {
        let n = self.n();
        let mut sum = RationalMatrix::zeros(n, n);
        let mut power = RationalMatrix::identity(n);
        for _ in 0..self.order {
            power = &power * &self.matrix;
            sum = &sum + &power;
        }
        sum.scale(&(rat(1) / rat(i64::from(self.order))))
    }

    /// Diagonal and graph of `φ` as linear subvarieties of `Z × Z` in
    /// variables `(x, y)`: `X = {x = y}`, `Y = {y = φ·x}`.
    pub fn graph_instance(&self) -> IntersectionInstance {
        let n = self.n();
        let mut diagonal = RationalMatrix::zeros(n, 2 * n);
        let mut graph = RationalMatrix::zeros(n, 2 * n);
        for i in 0..n {
            diagonal.set(i, i, rat(1));
            diagonal.set(i, n + i, rat(-1));
            graph.set(i, n + i, rat(1));
            for j in 0..n {
                graph.set(i, j, -self.matrix.get(i, j));
            }
        }
        IntersectionInstance::new(2 * n, &diagonal, &graph).expect("diagonal and graph forms are independent")
    }
}

/// Fixed subspace, coinvariants and the averaging splitting between them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedData {
    /// Columns span `W = ker(φ - I)`.
    pub w_basis: RationalMatrix,
    /// Codimension of `W`.
    pub codim: usize,
    /// `T_Z → (T_Z)_φ`; rows span the annihilator of `im(φ - I)`.
    pub coinv_proj: RationalMatrix,
    /// `(T_Z)_φ → T_Z` through the averaging map.
    pub avg_split: RationalMatrix,
    /// `(T_Z)_φ ≅ T_W`, in the coordinates of `w_basis`.
    pub iso: RationalMatrix,
}

impl FixedData {
    pub fn new(phi: &Automorphism) -> Self {
        let n = phi.n();
        let shifted = phi.matrix() - &RationalMatrix::identity(n);
        let w_basis = shifted.kernel_matrix();
        let coinv_proj = shifted.transpose().kernel_matrix().transpose();
        let lift = coinv_proj.right_inverse().expect("coinvariant projection is surjective");
        let avg_split = &phi.averaging() * &lift;
        let iso = w_basis.solve(&avg_split).expect("averaged vectors are fixed");
        Self { codim: n - w_basis.cols(), w_basis, coinv_proj, avg_split, iso }
    }

    pub fn dim_w(&self) -> usize {
        self.w_basis.cols()
    }

    /// `coinv_proj ∘ avg_split = id`.
    pub fn retraction_holds(&self) -> bool {
        (&self.coinv_proj * &self.avg_split).is_identity()
    }

    /// The splitting lands in the fixed subspace, fills it, and `iso` is invertible.
    pub fn image_is_fixed_subspace(&self, phi: &Automorphism) -> bool {
        let moved = &(phi.matrix() * &self.avg_split) - &self.avg_split;
        moved.is_zero() && self.avg_split.rank() == self.dim_w() && self.iso.inverse().is_some()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedLocusCheck {
    pub tor: HilbertTable,
    pub forms: HilbertTable,
    pub dim_w: usize,
    pub excess_rank: usize,
    pub retraction: bool,
    pub image: bool,
}

impl FixedLocusCheck {
    pub fn tables_agree(&self) -> bool {
        self.tor == self.forms
    }

    pub fn passed(&self) -> bool {
        self.tables_agree() && self.excess_rank == self.dim_w && self.retraction && self.image
    }
}

/// `Tor^{Z×Z}(O_Δ, O_{Δ^φ})` against `Ω^k_W`, which has `C(w, k)·t^k·H_W(t)`.
pub fn derived_fixed_locus_table(phi: &Automorphism, window: Window) -> FixedLocusCheck {
    let data = FixedData::new(phi);
    let instance = phi.graph_instance();
    let tor = instance.tor_table(TorRoute::ResolveX, window);
    let w = data.dim_w();
    let forms = HilbertTable::from_fn(window, (0..=w as i64).map(|k| -k), |i, t| {
        let k = -i;
        binomial(w as u64, k as u64) * monomial_count(w, t - k)
    });
    FixedLocusCheck {
        tor,
        forms,
        dim_w: w,
        excess_rank: instance.excess_rank(),
        retraction: data.retraction_holds(),
        image: data.image_is_fixed_subspace(phi),
    }
}
