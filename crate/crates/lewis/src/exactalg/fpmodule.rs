//! Finitely presented modules in diagonal form `⊕ R/(d_i)`.
//!
//! `d_i = 0` is a free summand; any other stored order is a nonunit. Elements are
//! coordinate vectors; maps between modules are matrices on generators.

use super::coeff::Coeff;
use super::linalg::{column_echelon, image_basis, kernel};
use super::matrix::Matrix;
use super::snf::smith_normal_form;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FpModule<E> {
    orders: Vec<E>,
}

/// A module obtained as a quotient of a coordinate space, with the
/// projection onto the new generators and a section lifting them back.
#[derive(Clone, Debug)]
pub struct Presented<E> {
    pub module: FpModule<E>,
    pub proj: Matrix<E>,
    pub section: Matrix<E>,
}

/// A submodule with its inclusion matrix into the ambient generators.
#[derive(Clone, Debug)]
pub struct Sub<E> {
    pub module: FpModule<E>,
    pub inclusion: Matrix<E>,
}

impl<E: Clone + PartialEq> FpModule<E> {
    pub fn free<R: Coeff<El = E>>(ring: &R, n: usize) -> Self {
        FpModule { orders: vec![ring.zero(); n] }
    }

    pub fn zero() -> Self {
        FpModule { orders: Vec::new() }
    }

    /// Trusts that no order is a unit.
    pub fn from_orders(orders: Vec<E>) -> Self {
        FpModule { orders }
    }

    pub fn gens(&self) -> usize {
        self.orders.len()
    }

    pub fn orders(&self) -> &[E] {
        &self.orders
    }

    pub fn is_trivial(&self) -> bool {
        self.orders.is_empty()
    }

    pub fn is_free<R: Coeff<El = E>>(&self, ring: &R) -> bool {
        self.orders.iter().all(|d| ring.is_zero(d))
    }

    pub fn free_rank<R: Coeff<El = E>>(&self, ring: &R) -> usize {
        self.orders.iter().filter(|d| ring.is_zero(d)).count()
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut orders = self.orders.clone();
        orders.extend(other.orders.iter().cloned());
        FpModule { orders }
    }

    pub fn power(&self, k: usize) -> Self {
        let mut orders = Vec::with_capacity(self.orders.len() * k);
        for _ in 0..k {
            orders.extend(self.orders.iter().cloned());
        }
        FpModule { orders }
    }

    pub fn reduce_vec<R: Coeff<El = E>>(&self, ring: &R, v: &[E]) -> Vec<E> {
        v.iter().zip(&self.orders).map(|(x, d)| ring.reduce(x, d)).collect()
    }

    /// Reduces each row of a map into this module.
    pub fn reduce_map<R: Coeff<El = E>>(&self, ring: &R, m: &Matrix<E>) -> Matrix<E> {
        assert_eq!(m.rows(), self.gens(), "map target mismatch");
        Matrix::from_fn(m.rows(), m.cols(), |i, j| ring.reduce(m.get(i, j), &self.orders[i]))
    }

    /// Columns `d_i e_i` for the nonzero orders.
    pub fn relation_matrix<R: Coeff<El = E>>(&self, ring: &R) -> Matrix<E> {
        let idx: Vec<usize> = (0..self.gens()).filter(|&i| !ring.is_zero(&self.orders[i])).collect();
        Matrix::from_fn(self.gens(), idx.len(), |i, j| if i == idx[j] { self.orders[i].clone() } else { ring.zero() })
    }

    pub fn is_zero_vec<R: Coeff<El = E>>(&self, ring: &R, v: &[E]) -> bool {
        v.iter().zip(&self.orders).all(|(x, d)| ring.is_zero(&ring.reduce(x, d)))
    }

    pub fn maps_equal<R: Coeff<El = E>>(&self, ring: &R, a: &Matrix<E>, b: &Matrix<E>) -> bool {
        a.shape() == b.shape() && self.reduce_map(ring, &a.sub(ring, b)).is_zero(ring)
    }

    /// Whether `f` (from `src` into this module) is well defined on `src`.
    pub fn well_defined_from<R: Coeff<El = E>>(&self, ring: &R, src: &Self, f: &Matrix<E>) -> bool {
        let rel = src.relation_matrix(ring);
        self.reduce_map(ring, &f.mul(ring, &rel)).is_zero(ring)
    }

    /// Solves `a x ≡ v` modulo the relations of this module.
    pub fn solve_in<R: Coeff<El = E>>(&self, ring: &R, a: &Matrix<E>, v: &[E]) -> Option<Vec<E>> {
        let stacked = a.hstack(&self.relation_matrix(ring));
        let x = column_echelon(ring, &stacked).solve(ring, v)?;
        Some(x[..a.cols()].to_vec())
    }

    /// Free rank and nonunit invariant factors, canonical up to the ring's associates.
    pub fn invariants<R: Coeff<El = E>>(&self, ring: &R) -> (usize, Vec<E>) {
        let snf = smith_normal_form(ring, &self.relation_matrix(ring));
        let tors: Vec<E> = snf.diagonal().into_iter().filter(|d| !ring.is_zero(d) && !ring.is_unit(d)).collect();
        (self.gens() - snf.rank, tors)
    }

    pub fn isomorphic<R: Coeff<El = E>>(&self, ring: &R, other: &Self) -> bool {
        self.invariants(ring) == other.invariants(ring)
    }

    /// Dimension over a field base; over `Z` the number of generators.
    pub fn dim(&self) -> usize {
        self.gens()
    }
}

/// `R^gens / span(columns of rel)` in diagonal form.
pub fn from_relations<R: Coeff>(ring: &R, gens: usize, rel: &Matrix<R::El>) -> Presented<R::El> {
    assert_eq!(rel.rows(), gens, "relation rows must match generators");
    let snf = smith_normal_form(ring, rel);
    let diag = snf.diagonal();
    let mut keep = Vec::new();
    let mut orders = Vec::new();
    for i in 0..gens {
        let d = diag.get(i).cloned().unwrap_or_else(|| ring.zero());
        if ring.is_zero(&d) || !ring.is_unit(&d) {
            keep.push(i);
            orders.push(d);
        }
    }
    let module = FpModule { orders };
    let proj = module.reduce_map(ring, &snf.u.select_rows(&keep));
    let section = snf.u_inv.select_columns(&keep);
    Presented { module, proj, section }
}

/// The quotient `M / span(vectors)`.
pub fn quotient<R: Coeff>(ring: &R, m: &FpModule<R::El>, vectors: &Matrix<R::El>) -> Presented<R::El> {
    let rel = m.relation_matrix(ring).hstack(vectors);
    from_relations(ring, m.gens(), &rel)
}

/// The submodule of `M` spanned by the given columns.
pub fn submodule<R: Coeff>(ring: &R, m: &FpModule<R::El>, vectors: &Matrix<R::El>) -> Sub<R::El> {
    assert_eq!(vectors.rows(), m.gens(), "span vectors must lie in the module");
    let relm = m.relation_matrix(ring);
    let basis = image_basis(ring, &vectors.hstack(&relm));
    let k = basis.cols();
    let ech = column_echelon(ring, &basis);
    let rel_cols: Vec<Vec<R::El>> =
        relm.columns().iter().map(|o| ech.solve(ring, o).expect("relations lie in the span")).collect();
    let rel = Matrix::from_columns(&rel_cols, k);
    let pres = from_relations(ring, k, &rel);
    let inclusion = m.reduce_map(ring, &basis.mul(ring, &pres.section));
    Sub { module: pres.module, inclusion }
}

/// Submodule spanned by `span` and the corresponding quotient.
pub fn module_subquotient<R: Coeff>(
    ring: &R,
    m: &FpModule<R::El>,
    span: &Matrix<R::El>,
) -> Result<(Sub<R::El>, Presented<R::El>)> {
    if span.rows() != m.gens() {
        return Err(Error::Dimension(format!(
            "span vectors have length {}, module has {} generators",
            span.rows(),
            m.gens()
        )));
    }
    Ok((submodule(ring, m, span), quotient(ring, m, span)))
}

/// Kernel of `f : src -> dst` as a submodule of `src`.
pub fn map_kernel<R: Coeff>(ring: &R, src: &FpModule<R::El>, dst: &FpModule<R::El>, f: &Matrix<R::El>) -> Sub<R::El> {
    let stacked = f.hstack(&dst.relation_matrix(ring));
    let k = kernel(ring, &stacked);
    let vecs = k.block(0, 0, src.gens(), k.cols());
    submodule(ring, src, &vecs)
}

/// Matrix of the map induced between subquotients.
///
/// Given `g` from `sub_src` (a submodule of the source, inclusion `inc_src`)
/// this expresses `f ∘ inc_src` in the generators of `sub_dst`.
pub fn restrict_to_sub<R: Coeff>(
    ring: &R,
    dst_ambient: &FpModule<R::El>,
    inc_dst: &Matrix<R::El>,
    dst: &FpModule<R::El>,
    image: &Matrix<R::El>,
) -> Option<Matrix<R::El>> {
    let stacked = inc_dst.hstack(&dst_ambient.relation_matrix(ring));
    let ech = column_echelon(ring, &stacked);
    let mut cols = Vec::with_capacity(image.cols());
    for c in image.columns() {
        let x = ech.solve(ring, &c)?;
        cols.push(dst.reduce_vec(ring, &x[..inc_dst.cols()]));
    }
    Some(Matrix::from_columns(&cols, inc_dst.cols()))
}
