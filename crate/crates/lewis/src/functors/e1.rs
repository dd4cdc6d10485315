use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::error::Result;
use crate::exactalg::linalg::{column_echelon, kernel};
use crate::exactalg::{quotient, Coeff, Matrix};
use crate::green::{twisted_group_ring, GreenFunctor, TwistedGroupRing};
use crate::mackey::{lll, HomSystem, MackeyMorphism};

use super::truncation::{geometric_fixed_points_green_with_proj, phi_ring, tau_green, PhiRing};

const MAX_RANK: usize = 4;
const BOUND: i64 = 5;
const MAX_POINTS: u64 = 100_000;

/// One column `t` of the E₁ page: `Φ^{C_{p^t}}(R)_θ[C_{p^{n-t}}]`.
#[derive(Clone, Debug)]
pub struct E1Entry<R: Coeff> {
    pub t: usize,
    pub phi: PhiRing<R>,
    /// Present for field bases when `Φ` is nonzero.
    pub twisted: Option<TwistedGroupRing<R>>,
}

impl<R: Coeff> E1Entry<R> {
    pub fn weyl_order(&self) -> u64 {
        self.phi.weyl_order
    }

    pub fn theta(&self) -> &Matrix<R::El> {
        &self.phi.weyl
    }

    /// `F2[C2]`, `F4_theta[C2]`, `Z`, ...
    pub fn name(&self) -> String {
        let inner = self.phi.name();
        let order = self.phi.weyl_order;
        if order == 1 || self.phi.is_zero() {
            return inner;
        }
        if self.phi.weyl.is_identity(&self.phi.ring.base) {
            format!("{inner}[C{order}]")
        } else {
            format!("{inner}_theta[C{order}]")
        }
    }
}

#[derive(Clone, Debug)]
pub struct E1PageDescriptor<R: Coeff> {
    pub entries: Vec<E1Entry<R>>,
    pub transfers_zero: bool,
    pub transfers_surjective: bool,
    /// `None` when the bounded search was inconclusive.
    pub section_exists: Option<bool>,
    /// A ring-map section `Φ^{C_p}(R) → τ≥1 R`, when one was found.
    pub section: Option<MackeyMorphism<R>>,
}

impl<R: Coeff> E1PageDescriptor<R> {
    /// Names of the nonzero rings, `t = 0` first.
    pub fn rings(&self) -> Vec<String> {
        self.entries.iter().filter(|e| !e.phi.is_zero()).map(|e| e.name()).collect()
    }
}

fn flag(b: Option<bool>) -> &'static str {
    match b {
        Some(true) => "yes",
        Some(false) => "no",
        None => "unknown",
    }
}

impl<R: Coeff> fmt::Display for E1PageDescriptor<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            writeln!(f, "t={}: {}", e.t, e.name())?;
        }
        writeln!(f, "transfers zero: {}", flag(Some(self.transfers_zero)))?;
        writeln!(f, "transfers surjective: {}", flag(Some(self.transfers_surjective)))?;
        write!(f, "section: {}", flag(self.section_exists))
    }
}

pub fn transfers_zero<R: Coeff>(r: &GreenFunctor<R>) -> bool {
    r.mackey.tr.iter().all(|t| t.is_zero(r.base()))
}

pub fn transfers_surjective<R: Coeff>(r: &GreenFunctor<R>) -> bool {
    let base = r.base();
    (0..r.n()).all(|s| quotient(base, &r.mackey.levels[s + 1], &r.mackey.tr[s]).module.is_trivial())
}

pub fn e1_page<R: Coeff>(r: &GreenFunctor<R>) -> Result<E1PageDescriptor<R>> {
    let g = r.group();
    let mut entries = Vec::with_capacity(g.n + 1);
    for t in 0..=g.n {
        let phi = phi_ring(r, t)?;
        let twisted = if r.base().is_field() && !phi.is_zero() {
            Some(twisted_group_ring(&phi.ring, g.p, g.n - t, &phi.weyl)?)
        } else {
            None
        };
        entries.push(E1Entry { t, phi, twisted });
    }
    let zero = transfers_zero(r);
    let (section_exists, section) = if zero {
        let section = if g.n == 0 { None } else { Some(MackeyMorphism::identity(&tau_green(r)?.mackey)) };
        (Some(true), section)
    } else {
        find_section(r)?
    };
    Ok(E1PageDescriptor {
        entries,
        transfers_zero: zero,
        transfers_surjective: transfers_surjective(r),
        section_exists,
        section,
    })
}

/// Bounded search for a unital multiplicative Mackey map `σ : Φ^{C_p} R → τ≥1 R`
/// with `π σ = id`.
pub fn find_section<R: Coeff>(r: &GreenFunctor<R>) -> Result<(Option<bool>, Option<MackeyMorphism<R>>)> {
    if r.n() == 0 {
        return Ok((Some(true), None));
    }
    let base = r.base();
    let t = tau_green(r)?;
    let (phi, proj) = geometric_fixed_points_green_with_proj(r)?;
    if phi.rings.iter().any(|l| l.rank() > MAX_RANK) {
        return Ok((None, None));
    }
    if !phi.mackey.is_levelwise_free() || !t.mackey.is_levelwise_free() {
        return Ok((None, None));
    }
    let sys = HomSystem::new(base, &phi.mackey, &t.mackey);
    let mut a = sys.matrix();
    let mut rhs = vec![base.zero(); a.rows()];
    let mut extra = Vec::new();
    for s in 0..=phi.n() {
        let (dp, dt) = (phi.mackey.levels[s].gens(), t.mackey.levels[s].gens());
        for i in 0..dp {
            for j in 0..dp {
                let mut row = vec![base.zero(); sys.unknowns()];
                for c in 0..dt {
                    row[sys.var(s, c, j)] = proj.maps[s].get(i, c).clone();
                }
                extra.push(row);
                rhs.push(if i == j { base.one() } else { base.zero() });
            }
        }
    }
    a = a.vstack(&Matrix::from_rows(extra, sys.unknowns()));
    let particular = match column_echelon(base, &a).solve(base, &rhs) {
        Some(x) => x,
        None => return Ok((Some(false), None)),
    };
    let mut kern = kernel(base, &a).columns();
    let mut particular = particular;
    if base.cardinality().is_none() {
        (particular, kern) = reduce_integral(base, particular, kern);
    }
    let d = kern.len();
    let (range, exhaustive): (Vec<R::El>, bool) = match base.cardinality() {
        Some(q) => ((0..q).map(|i| base.element(i)).collect(), true),
        None => ((-BOUND..=BOUND).map(|v| base.from_i64(v)).collect(), false),
    };
    let width = range.len() as u64;
    let total = match width.checked_pow(d as u32) {
        Some(t) if t <= MAX_POINTS => t,
        _ => return Ok((None, None)),
    };
    for mut code in 0..total {
        let mut x = particular.clone();
        for k in &kern {
            let c = &range[(code % width) as usize];
            code /= width;
            if !base.is_zero(c) {
                for (xi, ki) in x.iter_mut().zip(k) {
                    *xi = base.add(xi, &base.mul(c, ki));
                }
            }
        }
        let sigma = sys.unpack(&x);
        if is_ring_map(&phi, &t, &sigma) {
            return Ok((Some(true), Some(sigma)));
        }
    }
    Ok((if exhaustive { Some(false) } else { None }, None))
}

fn is_ring_map<R: Coeff>(src: &GreenFunctor<R>, dst: &GreenFunctor<R>, f: &MackeyMorphism<R>) -> bool {
    let base = src.base();
    (0..=src.n()).all(|s| {
        let (a, b) = (&src.rings[s], &dst.rings[s]);
        let m = &f.maps[s];
        if !b.eq_elements(&m.apply(base, a.unit()), b.unit()) {
            return false;
        }
        (0..a.rank()).all(|i| {
            (i..a.rank()).all(|j| {
                let lhs = m.apply(base, a.structure(i, j));
                let rhs = b.mul(&m.apply(base, &a.basis(i)), &m.apply(base, &a.basis(j)));
                b.eq_elements(&lhs, &rhs)
            })
        })
    })
}

/// LLL-reduces the kernel lattice and moves the particular solution close to the origin.
fn reduce_integral<R: Coeff>(base: &R, x: Vec<R::El>, kern: Vec<Vec<R::El>>) -> (Vec<R::El>, Vec<Vec<R::El>>) {
    let to_int = |v: &[R::El]| -> Option<Vec<BigInt>> { v.iter().map(|e| base.to_integer(e)).collect() };
    let (Some(mut xi), Some(ki)) = (to_int(&x), kern.iter().map(|k| to_int(k)).collect::<Option<Vec<_>>>()) else {
        return (x, kern);
    };
    let ki = lll(ki);
    for k in ki.iter().rev() {
        let kk: BigInt = k.iter().map(|a| a * a).sum();
        if kk.is_zero() {
            continue;
        }
        let dot: BigInt = xi.iter().zip(k).map(|(a, b)| a * b).sum();
        let num: BigInt = dot * 2 + &kk;
        let c = num.div_floor(&(kk * 2));
        for (a, b) in xi.iter_mut().zip(k) {
            *a -= &c * b;
        }
    }
    let back = |v: &[BigInt]| v.iter().map(|e| base.from_bigint(e)).collect::<Vec<_>>();
    (back(&xi), ki.iter().map(|k| back(k)).collect())
}
