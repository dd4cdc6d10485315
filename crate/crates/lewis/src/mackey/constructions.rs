use num_bigint::BigInt;

use super::functor::MackeyFunctor;
use crate::cyclic::{restrict_gset, CyclicGroup, FiniteGSet};
use crate::error::{Error, Result};
use crate::exactalg::linalg::{column_echelon, kernel};
use crate::exactalg::{Coeff, FpModule, Integers, Matrix};

/// Constant functor: res = id, tr = multiplication by `p`, trivial Weyl action.
pub fn constant_mackey<R: Coeff>(base: &R, a: &FpModule<R::El>, g: CyclicGroup) -> MackeyFunctor<R> {
    let d = a.gens();
    let id = Matrix::identity(base, d);
    let p = Matrix::scalar(base, d, &base.from_i64(g.p as i64));
    MackeyFunctor::new(
        g,
        base.clone(),
        vec![a.clone(); g.levels()],
        vec![id.clone(); g.n],
        vec![p; g.n],
        vec![id; g.levels()],
    )
    .expect("constant functor shapes")
}

/// Fixed-point functor of a free module with a `C_{p^n}`-action `rho`.
///
/// Level `s` is the kernel of `rho^{p^{n-s}} - 1`; the Weyl action is `rho`
/// restricted and transfers sum over coset representatives.
pub fn fixed_point_mackey<R: Coeff>(base: &R, rho: &Matrix<R::El>, g: CyclicGroup) -> Result<MackeyFunctor<R>> {
    Ok(fixed_point_with_bases(base, rho, g)?.0)
}

/// As [`fixed_point_mackey`], also returning the fixed-point bases as columns.
pub fn fixed_point_with_bases<R: Coeff>(
    base: &R,
    rho: &Matrix<R::El>,
    g: CyclicGroup,
) -> Result<(MackeyFunctor<R>, Vec<Matrix<R::El>>)> {
    let d = rho.rows();
    if rho.cols() != d {
        return Err(Error::Dimension("action must be square".into()));
    }
    let id = Matrix::identity(base, d);
    if rho.pow(base, g.order()) != id {
        return Err(Error::Invalid(format!("action does not have order dividing {}", g.order())));
    }
    let n = g.n;
    let bases: Vec<Matrix<R::El>> = (0..=n).map(|s| kernel(base, &rho.pow(base, g.index(s)).sub(base, &id))).collect();
    let express = |s: usize, v: &Matrix<R::El>| -> Matrix<R::El> {
        let ech = column_echelon(base, &bases[s]);
        let cols: Vec<Vec<R::El>> =
            v.columns().iter().map(|c| ech.solve(base, c).expect("vector lies in the fixed points")).collect();
        Matrix::from_columns(&cols, bases[s].cols())
    };
    let levels = bases.iter().map(|b| FpModule::free(base, b.cols())).collect();
    let weyl = (0..=n).map(|s| express(s, &rho.mul(base, &bases[s]))).collect();
    let res = (0..n).map(|s| express(s, &bases[s + 1])).collect();
    let tr = (0..n)
        .map(|s| {
            let step = rho.pow(base, g.pow(n - s - 1));
            let mut sum = Matrix::zeros(base, d, d);
            let mut term = id.clone();
            for _ in 0..g.p {
                sum = sum.add(base, &term);
                term = term.mul(base, &step);
            }
            express(s + 1, &sum.mul(base, &bases[s]))
        })
        .collect();
    Ok((MackeyFunctor::new(g, base.clone(), levels, res, tr, weyl)?, bases))
}

/// Burnside functor: level `s` is `A(C_{p^s})` on the orbit basis.
pub fn burnside_mackey_over<R: Coeff>(base: &R, g: CyclicGroup) -> MackeyFunctor<R> {
    let n = g.n;
    let levels = (0..=n).map(|s| FpModule::free(base, s + 1)).collect();
    let res = (0..n)
        .map(|s| {
            // columns: restriction of C_{p^{s+1}}/C_{p^t} to C_{p^s}
            let h = g.subgroup(s + 1);
            Matrix::from_fn(s + 1, s + 2, |i, t| {
                let orbit = FiniteGSet::orbit(h, t).expect("level in range");
                let r = restrict_gset(&orbit, s).expect("level in range");
                base.from_bigint(&BigInt::from(r.mult[i]))
            })
        })
        .collect();
    let tr =
        (0..n).map(|s| Matrix::from_fn(s + 2, s + 1, |i, t| if i == t { base.one() } else { base.zero() })).collect();
    let weyl = (0..=n).map(|s| Matrix::identity(base, s + 1)).collect();
    MackeyFunctor::new(g, base.clone(), levels, res, tr, weyl).expect("burnside shapes")
}

pub fn burnside_mackey(g: CyclicGroup) -> MackeyFunctor<Integers> {
    burnside_mackey_over(&Integers, g)
}

/// The twisted Burnside functor over `C_5`: top `Z^2`, bottom `Z`,
/// `res = (2, 5)`, `tr = (0, 1)^T`.
pub fn twisted_burnside_c5() -> MackeyFunctor<Integers> {
    let z = Integers;
    let g = CyclicGroup { p: 5, n: 1 };
    MackeyFunctor::new(
        g,
        z,
        vec![FpModule::free(&z, 1), FpModule::free(&z, 2)],
        vec![Matrix::from_ints(&z, &[&[2, 5]])],
        vec![Matrix::from_ints(&z, &[&[0], &[1]])],
        vec![Matrix::identity(&z, 1), Matrix::identity(&z, 2)],
    )
    .expect("twisted burnside shapes")
}
