use super::coeff::Coeff;
use super::matrix::Matrix;
use crate::error::{Error, Result};
use crate::report::CheckReport;

/// Finite-rank ring given by structure constants on a basis.
///
/// `orders` records the additive order of each basis element (zero = free), so
/// torsion quotients such as `Z/p` are representable.
#[derive(Clone, Debug, PartialEq)]
pub struct BasedRing<R: Coeff> {
    pub base: R,
    rank: usize,
    mult: Vec<R::El>,
    unit: Vec<R::El>,
    pub labels: Vec<String>,
    orders: Vec<R::El>,
}

impl<R: Coeff> BasedRing<R> {
    /// `product(i, j)` gives the coordinates of `e_i e_j`.
    pub fn new(
        base: R,
        rank: usize,
        product: impl FnMut(usize, usize) -> Vec<R::El>,
        unit: Vec<R::El>,
        labels: Vec<String>,
    ) -> Result<Self> {
        let orders = vec![base.zero(); rank];
        Self::with_orders(base, rank, product, unit, labels, orders)
    }

    pub fn with_orders(
        base: R,
        rank: usize,
        mut product: impl FnMut(usize, usize) -> Vec<R::El>,
        unit: Vec<R::El>,
        labels: Vec<String>,
        orders: Vec<R::El>,
    ) -> Result<Self> {
        if unit.len() != rank || labels.len() != rank || orders.len() != rank {
            return Err(Error::Dimension(format!("based ring of rank {rank} with mismatched data")));
        }
        let mut mult = Vec::with_capacity(rank * rank * rank);
        for i in 0..rank {
            for j in 0..rank {
                let v = product(i, j);
                if v.len() != rank {
                    return Err(Error::Dimension(format!("product e{i}*e{j} has wrong length")));
                }
                mult.extend(v);
            }
        }
        let mut r = BasedRing { base, rank, mult, unit, labels, orders };
        r.mult = r.mult.chunks(rank.max(1)).flat_map(|c| r.reduce(c)).collect();
        if rank == 0 {
            r.mult.clear();
        }
        Ok(r)
    }

    pub fn zero_ring(base: R) -> Self {
        BasedRing { base, rank: 0, mult: vec![], unit: vec![], labels: vec![], orders: vec![] }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn unit(&self) -> &[R::El] {
        &self.unit
    }

    pub fn orders(&self) -> &[R::El] {
        &self.orders
    }

    pub fn structure(&self, i: usize, j: usize) -> &[R::El] {
        let s = (i * self.rank + j) * self.rank;
        &self.mult[s..s + self.rank]
    }

    pub fn basis(&self, i: usize) -> Vec<R::El> {
        (0..self.rank).map(|k| if k == i { self.base.one() } else { self.base.zero() }).collect()
    }

    pub fn reduce(&self, v: &[R::El]) -> Vec<R::El> {
        v.iter().zip(&self.orders).map(|(x, d)| self.base.reduce(x, d)).collect()
    }

    pub fn eq_elements(&self, a: &[R::El], b: &[R::El]) -> bool {
        let d: Vec<R::El> = a.iter().zip(b).map(|(x, y)| self.base.sub(x, y)).collect();
        self.reduce(&d).iter().all(|x| self.base.is_zero(x))
    }

    pub fn mul(&self, a: &[R::El], b: &[R::El]) -> Vec<R::El> {
        let ring = &self.base;
        let mut out = vec![ring.zero(); self.rank];
        for (i, x) in a.iter().enumerate() {
            if ring.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if ring.is_zero(y) {
                    continue;
                }
                let c = ring.mul(x, y);
                for (o, s) in out.iter_mut().zip(self.structure(i, j)) {
                    if !ring.is_zero(s) {
                        *o = ring.add(o, &ring.mul(&c, s));
                    }
                }
            }
        }
        self.reduce(&out)
    }

    pub fn add(&self, a: &[R::El], b: &[R::El]) -> Vec<R::El> {
        self.reduce(&a.iter().zip(b).map(|(x, y)| self.base.add(x, y)).collect::<Vec<_>>())
    }

    /// Matrix of `x ↦ a x`.
    pub fn left_mul_matrix(&self, a: &[R::El]) -> Matrix<R::El> {
        let cols: Vec<Vec<R::El>> = (0..self.rank).map(|j| self.mul(a, &self.basis(j))).collect();
        Matrix::from_columns(&cols, self.rank)
    }

    pub fn is_zero_element(&self, a: &[R::El]) -> bool {
        self.reduce(a).iter().all(|x| self.base.is_zero(x))
    }

    /// Whether every basis element has free additive order.
    pub fn is_torsion_free(&self) -> bool {
        self.orders.iter().all(|d| self.base.is_zero(d))
    }

    /// Whether this ring is a field, decided by exhaustive search when it is small.
    pub fn is_field(&self) -> Option<bool> {
        if self.rank == 0 {
            return Some(false);
        }
        let q = self.base.cardinality()?;
        let total = q.checked_pow(self.rank as u32)?;
        if total > 1 << 16 {
            return None;
        }
        for code in 1..total {
            let x = self.element_from_code(code, q);
            let m = self.left_mul_matrix(&x);
            if crate::exactalg::linalg::rank(&self.base, &m) < self.rank {
                return Some(false);
            }
        }
        Some(true)
    }

    pub(crate) fn element_from_code(&self, mut code: u64, q: u64) -> Vec<R::El> {
        (0..self.rank)
            .map(|_| {
                let e = self.base.element(code % q);
                code /= q;
                e
            })
            .collect()
    }
}

/// Associativity, optional commutativity and two-sided unit on all basis tuples.
pub fn based_ring_check<R: Coeff>(r: &BasedRing<R>, commutative: bool) -> CheckReport {
    let mut report = CheckReport::new();
    let n = r.rank();
    for i in 0..n {
        let ei = r.basis(i);
        if !r.eq_elements(&r.mul(r.unit(), &ei), &ei) || !r.eq_elements(&r.mul(&ei, r.unit()), &ei) {
            report.fail("unit", None, vec![i], r.labels[i].to_string());
            return report;
        }
    }
    if commutative {
        for i in 0..n {
            for j in i + 1..n {
                if !r.eq_elements(r.structure(i, j), r.structure(j, i)) {
                    report.fail("commutativity", None, vec![i, j], String::new());
                    return report;
                }
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            let ij = r.structure(i, j).to_vec();
            for k in 0..n {
                let ek = r.basis(k);
                let left = r.mul(&ij, &ek);
                let right = r.mul(&r.basis(i), r.structure(j, k));
                if !r.eq_elements(&left, &right) {
                    report.fail("associativity", None, vec![i, j, k], String::new());
                    return report;
                }
            }
        }
    }
    report
}
