//! Column echelon forms over a Euclidean coefficient ring.
//!
//! `A V = L` with `V` unimodular and `L` in column echelon form: column `j < rank`
//! has its first nonzero entry in row `pivot_rows[j]`, strictly increasing in `j`,
//! and the trailing columns are zero. Kernels, solutions, images and determinants
//! all come from this one decomposition.

use super::coeff::Coeff;
use super::matrix::Matrix;

pub struct ColumnEchelon<R: Coeff> {
    /// Columns of `L`.
    pub reduced: Vec<Vec<R::El>>,
    /// Columns of `V`.
    pub transform: Vec<Vec<R::El>>,
    pub pivot_rows: Vec<usize>,
    /// Determinant of `V`, a unit.
    pub det_transform: R::El,
    rows: usize,
}

fn col_axpy<R: Coeff>(ring: &R, cols: &mut [Vec<R::El>], dst: usize, src: usize, q: &R::El) {
    // cols[dst] -= q * cols[src]
    let (a, b) = if dst < src {
        let (lo, hi) = cols.split_at_mut(src);
        (&mut lo[dst], &hi[0])
    } else {
        let (lo, hi) = cols.split_at_mut(dst);
        (&mut hi[0], &lo[src])
    };
    for (x, y) in a.iter_mut().zip(b.iter()) {
        if !ring.is_zero(y) {
            *x = ring.sub(x, &ring.mul(q, y));
        }
    }
}

pub fn column_echelon<R: Coeff>(ring: &R, a: &Matrix<R::El>) -> ColumnEchelon<R> {
    let (m, n) = a.shape();
    let mut l = a.columns();
    let mut v: Vec<Vec<R::El>> =
        (0..n).map(|j| (0..n).map(|i| if i == j { ring.one() } else { ring.zero() }).collect()).collect();
    let mut det = ring.one();
    let mut pivots = Vec::new();
    let mut c = 0;
    for i in 0..m {
        if c == n {
            break;
        }
        let mut found = false;
        loop {
            let mut best: Option<usize> = None;
            for j in c..n {
                if !ring.is_zero(&l[j][i]) && best.is_none_or(|b| ring.size_cmp(&l[j][i], &l[b][i]).is_lt()) {
                    best = Some(j);
                }
            }
            let Some(b) = best else { break };
            found = true;
            if b != c {
                l.swap(b, c);
                v.swap(b, c);
                det = ring.neg(&det);
            }
            let mut clean = true;
            for j in c + 1..n {
                if ring.is_zero(&l[j][i]) {
                    continue;
                }
                let (q, r) = ring.div_rem(&l[j][i], &l[c][i]);
                col_axpy(ring, &mut l, j, c, &q);
                col_axpy(ring, &mut v, j, c, &q);
                if !ring.is_zero(&r) {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if found {
            let u = ring.normalizer(&l[c][i]);
            if !ring.is_one(&u) {
                for x in l[c].iter_mut().chain(v[c].iter_mut()) {
                    *x = ring.mul(&u, x);
                }
                det = ring.mul(&det, &u);
            }
            pivots.push(i);
            c += 1;
        }
    }
    ColumnEchelon { reduced: l, transform: v, pivot_rows: pivots, det_transform: det, rows: m }
}

impl<R: Coeff> ColumnEchelon<R> {
    pub fn rank(&self) -> usize {
        self.pivot_rows.len()
    }

    /// Basis of the solution lattice of `A x = 0`, as columns.
    pub fn kernel(&self) -> Matrix<R::El> {
        let n = self.transform.len();
        Matrix::from_columns(&self.transform[self.rank()..], n)
    }

    /// Basis of the lattice spanned by the columns of `A`.
    pub fn image(&self) -> Matrix<R::El> {
        Matrix::from_columns(&self.reduced[..self.rank()], self.rows)
    }

    /// Some `x` with `A x = b`, if one exists over the coefficient ring.
    pub fn solve(&self, ring: &R, b: &[R::El]) -> Option<Vec<R::El>> {
        assert_eq!(b.len(), self.rows, "right-hand side length");
        let n = self.transform.len();
        let r = self.rank();
        let mut resid = b.to_vec();
        let mut y = Vec::with_capacity(r);
        for j in 0..r {
            let p = self.pivot_rows[j];
            let yj = ring.exact_div(&resid[p], &self.reduced[j][p])?;
            if !ring.is_zero(&yj) {
                for (x, l) in resid.iter_mut().zip(&self.reduced[j]) {
                    if !ring.is_zero(l) {
                        *x = ring.sub(x, &ring.mul(&yj, l));
                    }
                }
            }
            y.push(yj);
        }
        if resid.iter().any(|x| !ring.is_zero(x)) {
            return None;
        }
        let mut x = vec![ring.zero(); n];
        for (j, yj) in y.iter().enumerate() {
            if ring.is_zero(yj) {
                continue;
            }
            for (xi, vi) in x.iter_mut().zip(&self.transform[j]) {
                if !ring.is_zero(vi) {
                    *xi = ring.add(xi, &ring.mul(yj, vi));
                }
            }
        }
        Some(x)
    }
}

pub fn kernel<R: Coeff>(ring: &R, a: &Matrix<R::El>) -> Matrix<R::El> {
    column_echelon(ring, a).kernel()
}

pub fn image_basis<R: Coeff>(ring: &R, a: &Matrix<R::El>) -> Matrix<R::El> {
    column_echelon(ring, a).image()
}

pub fn rank<R: Coeff>(ring: &R, a: &Matrix<R::El>) -> usize {
    column_echelon(ring, a).rank()
}

pub fn solve<R: Coeff>(ring: &R, a: &Matrix<R::El>, b: &[R::El]) -> Option<Vec<R::El>> {
    column_echelon(ring, a).solve(ring, b)
}

/// Solves `A X = B` column by column.
pub fn solve_matrix<R: Coeff>(ring: &R, a: &Matrix<R::El>, b: &Matrix<R::El>) -> Option<Matrix<R::El>> {
    let ech = column_echelon(ring, a);
    let cols: Option<Vec<Vec<R::El>>> = b.columns().iter().map(|c| ech.solve(ring, c)).collect();
    Some(Matrix::from_columns(&cols?, a.cols()))
}

pub fn determinant<R: Coeff>(ring: &R, a: &Matrix<R::El>) -> R::El {
    assert_eq!(a.rows(), a.cols(), "determinant of a non-square matrix");
    let n = a.rows();
    let ech = column_echelon(ring, a);
    if ech.rank() < n {
        return ring.zero();
    }
    let mut d = ring.one();
    for j in 0..n {
        d = ring.mul(&d, &ech.reduced[j][j]);
    }
    let inv = ring.unit_inverse(&ech.det_transform).expect("transform is unimodular");
    ring.mul(&d, &inv)
}

pub fn inverse<R: Coeff>(ring: &R, a: &Matrix<R::El>) -> Option<Matrix<R::El>> {
    if a.rows() != a.cols() {
        return None;
    }
    solve_matrix(ring, a, &Matrix::identity(ring, a.rows()))
}

pub fn is_invertible<R: Coeff>(ring: &R, a: &Matrix<R::El>) -> bool {
    a.rows() == a.cols() && ring.is_unit(&determinant(ring, a))
}
