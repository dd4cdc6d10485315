use super::coeff::Coeff;
use super::matrix::Matrix;

/// `U A V = D` with `D` diagonal and `d_i | d_{i+1}`; inverses are tracked too.
#[derive(Clone, Debug)]
pub struct SmithForm<E> {
    pub u: Matrix<E>,
    pub u_inv: Matrix<E>,
    pub d: Matrix<E>,
    pub v: Matrix<E>,
    pub v_inv: Matrix<E>,
    pub rank: usize,
}

impl<E: Clone + PartialEq> SmithForm<E> {
    /// Diagonal entries `d_0 .. d_{min(m,n)-1}`.
    pub fn diagonal(&self) -> Vec<E> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d.get(i, i).clone()).collect()
    }
}

struct Work<'a, R: Coeff> {
    ring: &'a R,
    a: Matrix<R::El>,
    u: Matrix<R::El>,
    u_inv: Matrix<R::El>,
    v: Matrix<R::El>,
    v_inv: Matrix<R::El>,
}

impl<R: Coeff> Work<'_, R> {
    /// row_i += q * row_j
    fn row_add(&mut self, i: usize, j: usize, q: &R::El) {
        let r = self.ring;
        for m in [&mut self.a, &mut self.u] {
            for c in 0..m.cols() {
                let x = r.add(m.get(i, c), &r.mul(q, m.get(j, c)));
                m.set(i, c, x);
            }
        }
        let ui = &mut self.u_inv;
        for row in 0..ui.rows() {
            let x = r.sub(ui.get(row, j), &r.mul(q, ui.get(row, i)));
            ui.set(row, j, x);
        }
    }

    /// col_j += q * col_i
    fn col_add(&mut self, j: usize, i: usize, q: &R::El) {
        let r = self.ring;
        for m in [&mut self.a, &mut self.v] {
            for row in 0..m.rows() {
                let x = r.add(m.get(row, j), &r.mul(q, m.get(row, i)));
                m.set(row, j, x);
            }
        }
        let vi = &mut self.v_inv;
        for c in 0..vi.cols() {
            let x = r.sub(vi.get(i, c), &r.mul(q, vi.get(j, c)));
            vi.set(i, c, x);
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for m in [&mut self.a, &mut self.u] {
            for c in 0..m.cols() {
                let t = m.get(i, c).clone();
                m.set(i, c, m.get(j, c).clone());
                m.set(j, c, t);
            }
        }
        let ui = &mut self.u_inv;
        for row in 0..ui.rows() {
            let t = ui.get(row, i).clone();
            ui.set(row, i, ui.get(row, j).clone());
            ui.set(row, j, t);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for m in [&mut self.a, &mut self.v] {
            for row in 0..m.rows() {
                let t = m.get(row, i).clone();
                m.set(row, i, m.get(row, j).clone());
                m.set(row, j, t);
            }
        }
        let vi = &mut self.v_inv;
        for c in 0..vi.cols() {
            let t = vi.get(i, c).clone();
            vi.set(i, c, vi.get(j, c).clone());
            vi.set(j, c, t);
        }
    }

    fn scale_row(&mut self, i: usize, unit: &R::El) {
        let r = self.ring;
        let inv = r.unit_inverse(unit).expect("scaling by a unit");
        for m in [&mut self.a, &mut self.u] {
            for c in 0..m.cols() {
                let x = r.mul(unit, m.get(i, c));
                m.set(i, c, x);
            }
        }
        let ui = &mut self.u_inv;
        for row in 0..ui.rows() {
            let x = r.mul(&inv, ui.get(row, i));
            ui.set(row, i, x);
        }
    }
}

/// Smith normal form with a deterministic pivot rule: the smallest nonzero entry
/// of the active block, ties broken row-major.
pub fn smith_normal_form<R: Coeff>(ring: &R, a: &Matrix<R::El>) -> SmithForm<R::El> {
    let (m, n) = a.shape();
    let mut w = Work {
        ring,
        a: a.clone(),
        u: Matrix::identity(ring, m),
        u_inv: Matrix::identity(ring, m),
        v: Matrix::identity(ring, n),
        v_inv: Matrix::identity(ring, n),
    };
    let mut t = 0;
    while t < m.min(n) {
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                let x = w.a.get(i, j);
                if !ring.is_zero(x) && best.is_none_or(|(bi, bj)| ring.size_cmp(x, w.a.get(bi, bj)).is_lt()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        w.swap_rows(t, bi);
        w.swap_cols(t, bj);
        loop {
            let mut clean = true;
            for i in t + 1..m {
                if ring.is_zero(w.a.get(i, t)) {
                    continue;
                }
                let (q, r) = ring.div_rem(w.a.get(i, t), w.a.get(t, t));
                w.row_add(i, t, &ring.neg(&q));
                clean &= ring.is_zero(&r);
            }
            for j in t + 1..n {
                if ring.is_zero(w.a.get(t, j)) {
                    continue;
                }
                let (q, r) = ring.div_rem(w.a.get(t, j), w.a.get(t, t));
                w.col_add(j, t, &ring.neg(&q));
                clean &= ring.is_zero(&r);
            }
            if !clean {
                let mut best = (t, t);
                for i in t + 1..m {
                    let x = w.a.get(i, t);
                    if !ring.is_zero(x) && ring.size_cmp(x, w.a.get(best.0, best.1)).is_lt() {
                        best = (i, t);
                    }
                }
                for j in t + 1..n {
                    let x = w.a.get(t, j);
                    if !ring.is_zero(x) && ring.size_cmp(x, w.a.get(best.0, best.1)).is_lt() {
                        best = (t, j);
                    }
                }
                w.swap_rows(t, best.0);
                w.swap_cols(t, best.1);
                continue;
            }
            let mut offender = None;
            'scan: for i in t + 1..m {
                for j in t + 1..n {
                    if !ring.divides(w.a.get(t, t), w.a.get(i, j)) {
                        offender = Some(i);
                        break 'scan;
                    }
                }
            }
            match offender {
                Some(i) => w.row_add(t, i, &ring.one()),
                None => break,
            }
        }
        let u = ring.normalizer(w.a.get(t, t));
        if !ring.is_one(&u) {
            w.scale_row(t, &u);
        }
        t += 1;
    }
    SmithForm { u: w.u, u_inv: w.u_inv, d: w.a, v: w.v, v_inv: w.v_inv, rank: t }
}
