use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::cyclic::{burnside_quotient, burnside_ring, BurnsideElement, BurnsideQuotient, CyclicGroup};
use crate::error::{Error, Result};
use crate::exactalg::linalg::{column_echelon, determinant, kernel};
use crate::exactalg::{Coeff, Integers, Matrix};
use crate::functors::free_module;
use crate::green::GreenFunctor;

/// The largest `r` such that `C_{p^r}` acts trivially on `k(G/e)`.
pub fn stabilizer_level<R: Coeff>(k: &GreenFunctor<R>) -> usize {
    let g = k.group();
    let base = k.base();
    (0..=g.n).rev().find(|&r| k.mackey.weyl_pow(0, g.pow(g.n - r)).is_identity(base)).unwrap_or(0)
}

/// Every level is a field (a Green meadow) and finite over the top level.
pub fn check_rfd_meadow<R: Coeff>(k: &GreenFunctor<R>) -> Result<()> {
    if !k.base().is_field() {
        return Err(Error::Unsupported("relative finiteness is checked over a field base".into()));
    }
    let top = k.rings[k.n()].rank();
    for (s, l) in k.rings.iter().enumerate() {
        if l.is_field() == Some(false) {
            return Err(Error::Invalid(format!("level {s} is not a field")));
        }
        if top == 0 || l.rank() % top != 0 {
            return Err(Error::NotRelativelyFinite { level: s });
        }
    }
    Ok(())
}

/// `α[s][i] = dim_{k(G/G)} F_i(G/C_{p^s})`, computed from the free modules themselves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionMatrix {
    pub p: u64,
    pub n: usize,
    pub stabilizer_level: usize,
    /// Column labels: `F0..Fr`, then `k` when `r < n`.
    pub columns: Vec<String>,
    pub alpha: Vec<Vec<u64>>,
    /// Rows `0..=r` of the columns `F0..F(r-1), k`, scaled as in the uniqueness argument.
    pub gamma: Matrix<BigInt>,
    pub gamma_det: BigInt,
}

impl DimensionMatrix {
    /// Level dimensions of `⊕ F_i^{m_i}` for multiplicities indexed like the columns.
    pub fn apply(&self, mults: &[u64]) -> Vec<u64> {
        self.alpha.iter().map(|row| row.iter().zip(mults).map(|(a, m)| a * m).sum()).collect()
    }

    /// `γ` after replacing column `i-1` by column `i-1` minus column `i`.
    pub fn triangularized(&self) -> Matrix<BigInt> {
        let g = &self.gamma;
        Matrix::from_fn(g.rows(), g.cols(), |s, i| {
            if i + 1 < g.cols() {
                g.get(s, i) - g.get(s, i + 1)
            } else {
                g.get(s, i).clone()
            }
        })
    }

    /// Whether the triangularized `γ` is upper triangular with nonzero diagonal.
    pub fn gamma_is_triangular(&self) -> bool {
        let t = self.triangularized();
        (0..t.rows()).all(|s| !t.get(s, s).is_zero() && (0..s).all(|i| t.get(s, i).is_zero()))
    }
}

impl fmt::Display for DimensionMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "stabilizer C{}", self.p.pow(self.stabilizer_level as u32))?;
        writeln!(f, "     {}", self.columns.join(" "))?;
        for (s, row) in self.alpha.iter().enumerate() {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            writeln!(f, "s={s}: {}", cells.join(" "))?;
        }
        write!(f, "det gamma = {}", self.gamma_det)
    }
}

pub fn dim_matrix<R: Coeff>(k: &GreenFunctor<R>) -> Result<DimensionMatrix> {
    check_rfd_meadow(k)?;
    let g = k.group();
    let (p, n) = (g.p, g.n);
    let r = stabilizer_level(k);
    let top = k.rings[n].rank() as u64;
    let mut cols: Vec<Vec<u64>> = Vec::new();
    let mut columns = Vec::new();
    for i in 0..=r {
        let f = free_module(k, i)?;
        cols.push(f.dims().iter().map(|&d| d as u64 / top).collect());
        columns.push(format!("F{i}"));
    }
    if r < n {
        cols.push(k.dims().iter().map(|&d| d as u64 / top).collect());
        columns.push("k".to_string());
    }
    let alpha: Vec<Vec<u64>> = (0..=n).map(|s| cols.iter().map(|c| c[s]).collect()).collect();
    // columns F0..F(r-1) are divided by p^{2(n-r)}, the k column by p^{n-r}
    let scale_f = p.pow(2 * (n - r) as u32);
    let scale_k = p.pow((n - r) as u32);
    let mut picked: Vec<(usize, u64)> = (0..r).map(|i| (i, scale_f)).collect();
    picked.push((cols.len() - 1, scale_k));
    let mut gamma = Matrix::filled(r + 1, r + 1, BigInt::zero());
    for s in 0..=r {
        for (j, &(c, scale)) in picked.iter().enumerate() {
            if !alpha[s][c].is_multiple_of(scale) {
                return Err(Error::Failed(format!(
                    "dimension {} at level {s} is not divisible by {scale}",
                    alpha[s][c]
                )));
            }
            gamma.set(s, j, BigInt::from(alpha[s][c] / scale));
        }
    }
    let gamma_det = determinant(&Integers, &gamma);
    Ok(DimensionMatrix { p, n, stabilizer_level: r, columns, alpha, gamma, gamma_det })
}

/// `K_0^{free}(FP(L))` for stabilizer `C_{p^r}`: `A(C_{p^n})` modulo
/// `[C_{p^n}/C_{p^s}] - p^{n-s}` for all `s ≥ r`.
pub fn k0_free_fixed_point(p: u64, n: usize, r: usize) -> Result<BurnsideQuotient> {
    let g = CyclicGroup::new(p, n)?;
    g.check_level(r)?;
    let gens: Vec<BurnsideElement> =
        (r..=n).map(|s| BurnsideElement::orbit(g, s).sub(&BurnsideElement::one(g).scale(g.index(s) as i64))).collect();
    burnside_quotient(&burnside_ring(g), g, &gens)
}

/// Folds every `F_i` with `r ≤ i < n` into `p^{n-i}` copies of `F_n = k`.
///
/// Only justified in characteristic `p` unless the action is trivial (`r = n`).
pub fn classify_free(p: u64, n: usize, r: usize, char_is_p: bool, mults: &[u64]) -> Result<Vec<u64>> {
    if r > n {
        return Err(Error::LevelOutOfRange { level: r, max: n });
    }
    if mults.len() != n + 1 {
        return Err(Error::Dimension(format!("expected {} multiplicities", n + 1)));
    }
    if !char_is_p && r < n {
        return Err(Error::Unsupported(
            "folding F_i into copies of k is only established in characteristic p or for trivial actions".into(),
        ));
    }
    let mut out = mults.to_vec();
    for i in r..n {
        out[n] += out[i] * p.pow((n - i) as u32);
        out[i] = 0;
    }
    Ok(out)
}

/// `classify_free` with `p, n, r` and the characteristic read off a Green meadow.
pub fn classify_free_for<R: Coeff>(k: &GreenFunctor<R>, mults: &[u64]) -> Result<Vec<u64>> {
    let g = k.group();
    classify_free(g.p, g.n, stabilizer_level(k), k.base().characteristic() == g.p, mults)
}

/// The kernel of `A(C_{p^n}) → K_0^{free}`, `X ↦ ⊕ F_s^{a_s}`, computed through
/// canonical forms, as a lattice basis in orbit coordinates.
pub fn k0_kernel_lattice(p: u64, n: usize, r: usize) -> Result<Matrix<BigInt>> {
    let z = Integers;
    let mut cols = Vec::with_capacity(n + 1);
    for s in 0..=n {
        let mut e = vec![0u64; n + 1];
        e[s] = 1;
        cols.push(classify_free(p, n, r, true, &e)?.into_iter().map(BigInt::from).collect::<Vec<_>>());
    }
    let map = Matrix::from_columns(&cols, n + 1);
    Ok(kernel(&z, &map))
}

/// Whether two lattices in `Z^d` (given by spanning columns) coincide.
pub fn same_lattice(a: &Matrix<BigInt>, b: &Matrix<BigInt>) -> bool {
    let z = Integers;
    let inside = |x: &Matrix<BigInt>, y: &Matrix<BigInt>| {
        let ech = column_echelon(&z, y);
        x.columns().iter().all(|c| ech.solve(&z, c).is_some())
    };
    a.rows() == b.rows() && inside(a, b) && inside(b, a)
}
