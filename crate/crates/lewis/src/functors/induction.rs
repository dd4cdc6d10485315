use crate::cyclic::CyclicGroup;
use crate::error::{Error, Result};
use crate::exactalg::{Coeff, Matrix};
use crate::green::{GreenFunctor, GreenModule};
use crate::mackey::{MackeyFunctor, MackeyMorphism};

/// Restriction to `C_{p^m}`: the same levels `0..=m`, with `g^{p^{n-m}}` as the new generator.
pub fn restrict_mackey<R: Coeff>(m: &MackeyFunctor<R>, target: usize) -> Result<MackeyFunctor<R>> {
    if target > m.n() {
        return Err(Error::LevelOutOfRange { level: target, max: m.n() });
    }
    let step = m.group.pow(m.n() - target);
    MackeyFunctor::new(
        m.group.subgroup(target),
        m.base.clone(),
        m.levels[..=target].to_vec(),
        m.res[..target].to_vec(),
        m.tr[..target].to_vec(),
        (0..=target).map(|s| m.weyl_pow(s, step)).collect(),
    )
}

pub fn restrict_green<R: Coeff>(r: &GreenFunctor<R>, target: usize) -> Result<GreenFunctor<R>> {
    GreenFunctor::new(restrict_mackey(&r.mackey, target)?, r.rings[..=target].to_vec())
}

fn block<R: Coeff>(ring: &R, out: &mut Matrix<R::El>, bi: usize, bj: usize, blk: &Matrix<R::El>) {
    let (h, w) = blk.shape();
    for r in 0..h {
        for c in 0..w {
            out.set(bi * h + r, bj * w + c, blk.get(r, c).clone());
        }
    }
    let _ = ring;
}

/// Induction from `C_{p^m}` to `C_{p^n}`.
///
/// Level `s` is `M_{min(m,s)}` repeated `p^{n-max(m,s)}` times, one copy per
/// coset representative `g^j`. Below `m` the generator moves copy `j` to `j+1`
/// and applies the Weyl action of `M` when it wraps around; from `m` on it
/// permutes the copies cyclically.
pub fn induce_mackey<R: Coeff>(m: &MackeyFunctor<R>, n: usize) -> Result<MackeyFunctor<R>> {
    let mm = m.n();
    if mm > n {
        return Err(Error::Invalid(format!("cannot induce from C{} to a smaller group", m.group.order())));
    }
    let ring = &m.base;
    let g = CyclicGroup::new(m.group.p, n)?;
    let copies = |s: usize| g.pow(n - mm.max(s)) as usize;
    let inner = |s: usize| s.min(mm);
    let levels = (0..=n).map(|s| m.levels[inner(s)].power(copies(s))).collect();
    let mut res = Vec::with_capacity(n);
    let mut tr = Vec::with_capacity(n);
    for s in 0..n {
        let (c0, c1) = (copies(s), copies(s + 1));
        if s < mm {
            let r = vec![m.res[s].clone(); c0];
            let t = vec![m.tr[s].clone(); c0];
            res.push(Matrix::block_diag(ring, &r));
            tr.push(Matrix::block_diag(ring, &t));
        } else {
            let d = m.levels[mm].gens();
            let id = Matrix::identity(ring, d);
            let mut r = Matrix::zeros(ring, c0 * d, c1 * d);
            let mut t = Matrix::zeros(ring, c1 * d, c0 * d);
            for j in 0..c0 {
                block(ring, &mut r, j, j % c1, &id);
                block(ring, &mut t, j % c1, j, &id);
            }
            res.push(r);
            tr.push(t);
        }
    }
    let weyl = (0..=n)
        .map(|s| {
            let c = copies(s);
            let d = m.levels[inner(s)].gens();
            let id = Matrix::identity(ring, d);
            let mut w = Matrix::zeros(ring, c * d, c * d);
            for j in 0..c {
                let blk = if j + 1 == c && s < mm { m.weyl[s].clone() } else { id.clone() };
                block(ring, &mut w, (j + 1) % c, j, &blk);
            }
            w
        })
        .collect();
    MackeyFunctor::new(g, ring.clone(), levels, res, tr, weyl)
}

/// The free `R`-module `F_i` on one generator at level `i`, as `Ind Res R`.
///
/// The generator is the unit of `R_i` in copy `0` of level `i`.
pub fn free_module<R: Coeff>(r: &GreenFunctor<R>, i: usize) -> Result<GreenModule<R>> {
    let n = r.n();
    r.group().check_level(i)?;
    let ring = r.base();
    let g = r.group();
    let mackey = induce_mackey(&restrict_mackey(&r.mackey, i)?, n)?;
    let actions = (0..=n)
        .map(|s| {
            let low = s.min(i);
            let copies = g.pow(n - s.max(i)) as usize;
            let order = g.index(s);
            (0..r.rings[s].rank())
                .map(|b| {
                    let e = r.rings[s].basis(b);
                    let blocks: Vec<Matrix<R::El>> = (0..copies)
                        .map(|j| {
                            let back = (order - (j as u64 % order)) % order;
                            let moved = r.mackey.weyl_pow(s, back).apply(ring, &e);
                            let x = r.mackey.res_composite(low, s).apply(ring, &moved);
                            r.rings[low].left_mul_matrix(&x)
                        })
                        .collect();
                    Matrix::block_diag(ring, &blocks)
                })
                .collect()
        })
        .collect();
    GreenModule::new(r.clone(), mackey, actions)
}

/// The free generator of `F_i` as a vector in level `i`.
pub fn free_generator<R: Coeff>(f: &GreenModule<R>, i: usize) -> Vec<R::El> {
    let ring = f.base();
    let mut v = vec![ring.zero(); f.mackey.levels[i].gens()];
    v[..f.ring.rings[i].rank()].clone_from_slice(f.ring.rings[i].unit());
    v
}

/// The module map `F_i → M` sending the free generator to `x ∈ M_i`.
pub fn yoneda_map<R: Coeff>(m: &GreenModule<R>, i: usize, x: &[R::El]) -> Result<MackeyMorphism<R>> {
    let n = m.n();
    m.mackey.group.check_level(i)?;
    if x.len() != m.mackey.levels[i].gens() {
        return Err(Error::Dimension("element has the wrong length".into()));
    }
    let ring = m.base();
    let k = &m.ring;
    let g = m.mackey.group;
    let maps = (0..=n)
        .map(|s| {
            let copies = g.pow(n - s.max(i)) as usize;
            let mut cols = Vec::new();
            for j in 0..copies {
                let w = m.mackey.weyl_pow(s, j as u64);
                if s <= i {
                    let rx = m.mackey.res_composite(s, i).apply(ring, x);
                    for b in 0..k.rings[s].rank() {
                        cols.push(w.apply(ring, &m.act(s, &k.rings[s].basis(b), &rx)));
                    }
                } else {
                    let up = m.mackey.tr_composite(i, s);
                    for b in 0..k.rings[i].rank() {
                        cols.push(w.apply(ring, &up.apply(ring, &m.act(i, &k.rings[i].basis(b), x))));
                    }
                }
            }
            let map = Matrix::from_columns(&cols, m.mackey.levels[s].gens());
            m.mackey.levels[s].reduce_map(ring, &map)
        })
        .collect();
    Ok(MackeyMorphism { maps })
}
