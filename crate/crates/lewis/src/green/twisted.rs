use crate::error::{Error, Result};
use crate::exactalg::{based_ring_check, BasedRing, Coeff, Matrix};
use crate::report::CheckReport;

use super::constructions::check_ring_automorphism;
use super::functor::GreenFunctor;

/// `R_θ[C_{p^m}]`: basis `e_i w^j` stored at index `j * rank(R) + i`.
#[derive(Clone, Debug, PartialEq)]
pub struct TwistedGroupRing<R: Coeff> {
    pub coefficient: BasedRing<R>,
    pub p: u64,
    pub m: usize,
    pub theta: Matrix<R::El>,
    pub ring: BasedRing<R>,
}

impl<R: Coeff> TwistedGroupRing<R> {
    pub fn group_order(&self) -> u64 {
        self.p.pow(self.m as u32)
    }

    pub fn theta_is_trivial(&self) -> bool {
        self.theta.is_identity(&self.coefficient.base)
    }

    /// Associativity and unit; commutativity is not required.
    pub fn check(&self) -> CheckReport {
        based_ring_check(&self.ring, false)
    }
}

pub fn twisted_group_ring<R: Coeff>(
    coefficient: &BasedRing<R>,
    p: u64,
    m: usize,
    theta: &Matrix<R::El>,
) -> Result<TwistedGroupRing<R>> {
    check_ring_automorphism(coefficient, theta)?;
    let base = &coefficient.base;
    let order = p.pow(m as u32);
    if !theta.pow(base, order).is_identity(base) {
        return Err(Error::Invalid(format!("theta does not have order dividing {order}")));
    }
    let r = coefficient.rank();
    let ord = order as usize;
    let powers: Vec<Matrix<R::El>> = (0..ord).map(|j| theta.pow(base, j as u64)).collect();
    let rank = r * ord;
    let ring = BasedRing::with_orders(
        base.clone(),
        rank,
        |x, y| {
            let (a, j) = (x % r, x / r);
            let (b, k) = (y % r, y / r);
            let coeff = coefficient.mul(&coefficient.basis(a), &powers[j].apply(base, &coefficient.basis(b)));
            let mut out = vec![base.zero(); rank];
            let slot = (j + k) % ord;
            for (i, c) in coeff.into_iter().enumerate() {
                out[slot * r + i] = c;
            }
            out
        },
        {
            let mut u = vec![base.zero(); rank];
            u[..r].clone_from_slice(coefficient.unit());
            u
        },
        (0..rank)
            .map(|x| {
                let (a, j) = (x % r, x / r);
                match j {
                    0 => coefficient.labels[a].clone(),
                    _ if r == 1 && coefficient.labels[a] == "1" => format!("w^{j}"),
                    _ => format!("{}*w^{j}", coefficient.labels[a]),
                }
            })
            .collect(),
        (0..rank).map(|x| coefficient.orders()[x % r].clone()).collect(),
    )?;
    Ok(TwistedGroupRing { coefficient: coefficient.clone(), p, m, theta: theta.clone(), ring })
}

/// `R(G/C_{p^s})_θ[C_{p^{n-s}}]` with `θ` the Weyl action on level `s`.
pub fn level_twisted_ring<R: Coeff>(r: &GreenFunctor<R>, s: usize) -> Result<TwistedGroupRing<R>> {
    r.group().check_level(s)?;
    if !r.base().is_field() {
        return Err(Error::Unsupported("twisted group rings of levels need a field base".into()));
    }
    twisted_group_ring(&r.rings[s], r.group().p, r.n() - s, &r.mackey.weyl[s])
}
