use crate::error::{Error, Result};
use crate::exactalg::fpmodule::{from_relations, Presented};
use crate::exactalg::{Coeff, Matrix};
use crate::mackey::{MackeyFunctor, MackeyMorphism};

use super::functor::{check_green_map, GreenFunctor, GreenMap, GreenModule};

/// A box product presented on symbols `[m ⊗ n]_t`, `t ≤ s`, at each level `s`.
///
/// The symbol `[m ⊗ n]_t` at level `s` stands for `Tr^s_t(m ⊗ n)`.
#[derive(Clone, Debug)]
pub struct BoxProduct<R: Coeff> {
    pub functor: MackeyFunctor<R>,
    dm: Vec<usize>,
    dn: Vec<usize>,
    offsets: Vec<Vec<usize>>,
    pres: Vec<Presented<R::El>>,
}

impl<R: Coeff> BoxProduct<R> {
    fn gens(&self, s: usize) -> usize {
        self.offsets[s][s] + self.dm[s] * self.dn[s]
    }

    /// The class of `[x ⊗ y]_t` in level `s`.
    pub fn symbol(&self, s: usize, t: usize, x: &[R::El], y: &[R::El]) -> Vec<R::El> {
        let ring = &self.functor.base;
        let mut v = vec![ring.zero(); self.gens(s)];
        for (i, a) in x.iter().enumerate() {
            for (j, b) in y.iter().enumerate() {
                v[self.offsets[s][t] + i * self.dn[t] + j] = ring.mul(a, b);
            }
        }
        self.functor.levels[s].reduce_vec(ring, &self.pres[s].proj.apply(ring, &v))
    }

    /// Map induced on classes by a map of symbol spaces.
    fn induced(&self, target: &BoxProduct<R>, s: usize, t: usize, f: &Matrix<R::El>) -> Matrix<R::El> {
        let ring = &self.functor.base;
        target.pres[t].proj.mul(ring, &f.mul(ring, &self.pres[s].section))
    }
}

fn kron_pair<R: Coeff>(ring: &R, a: &Matrix<R::El>, b: &Matrix<R::El>) -> Matrix<R::El> {
    a.kron(ring, b)
}

/// Core presentation; `balance[t]` lists pairs `(r on M_t, r on N_t)` to be identified.
fn box_core<R: Coeff>(
    m: &MackeyFunctor<R>,
    n: &MackeyFunctor<R>,
    balance: &[Vec<(Matrix<R::El>, Matrix<R::El>)>],
) -> Result<BoxProduct<R>> {
    if m.group != n.group || m.base != n.base {
        return Err(Error::Invalid("box product of functors over different groups or bases".into()));
    }
    let ring = &m.base;
    let g = m.group;
    let top = g.n;
    let dm = m.dims();
    let dn = n.dims();
    let offsets: Vec<Vec<usize>> = (0..=top)
        .map(|s| {
            let mut acc = 0;
            (0..=s)
                .map(|t| {
                    let o = acc;
                    acc += dm[t] * dn[t];
                    o
                })
                .collect()
        })
        .collect();
    let gens: Vec<usize> = (0..=top).map(|s| offsets[s][s] + dm[s] * dn[s]).collect();
    let id = |d: usize| Matrix::identity(ring, d);
    // embed block matrices (rows indexed by block t) into the symbol space of level s
    let place = |s: usize, parts: &[(usize, Matrix<R::El>)]| -> Matrix<R::El> {
        let cols = parts[0].1.cols();
        let mut out = Matrix::zeros(ring, gens[s], cols);
        for (t, blk) in parts {
            for i in 0..blk.rows() {
                for j in 0..cols {
                    let v = blk.get(i, j);
                    if !ring.is_zero(v) {
                        let cur = out.get(offsets[s][*t] + i, j).clone();
                        out.set(offsets[s][*t] + i, j, ring.add(&cur, v));
                    }
                }
            }
        }
        out
    };

    let mut pres = Vec::with_capacity(top + 1);
    for s in 0..=top {
        let mut rel = Matrix::zeros(ring, gens[s], 0);
        for t in 0..=s {
            let size = dm[t] * dn[t];
            let mut tors = Vec::new();
            for i in 0..dm[t] {
                for j in 0..dn[t] {
                    for ord in [&m.levels[t].orders()[i], &n.levels[t].orders()[j]] {
                        if !ring.is_zero(ord) {
                            let mut v = vec![ring.zero(); size];
                            v[i * dn[t] + j] = ord.clone();
                            tors.push(v);
                        }
                    }
                }
            }
            if !tors.is_empty() {
                rel = rel.hstack(&place(s, &[(t, Matrix::from_columns(&tors, size))]));
            }
            if size > 0 && t < s {
                let h = g.index(s);
                let w = kron_pair(ring, &m.weyl_pow(t, h), &n.weyl_pow(t, h)).sub(ring, &id(size));
                rel = rel.hstack(&place(s, &[(t, w)]));
            }
            if t < s {
                if dm[t] * dn[t + 1] > 0 {
                    let up = kron_pair(ring, &m.tr[t], &id(dn[t + 1]));
                    let down = kron_pair(ring, &id(dm[t]), &n.res[t]).neg(ring);
                    rel = rel.hstack(&place(s, &[(t + 1, up), (t, down)]));
                }
                if dm[t + 1] * dn[t] > 0 {
                    let up = kron_pair(ring, &id(dm[t + 1]), &n.tr[t]);
                    let down = kron_pair(ring, &m.res[t], &id(dn[t])).neg(ring);
                    rel = rel.hstack(&place(s, &[(t + 1, up), (t, down)]));
                }
            }
            if size > 0 {
                for (a, b) in balance.get(t).into_iter().flatten() {
                    let r = kron_pair(ring, a, &id(dn[t])).sub(ring, &kron_pair(ring, &id(dm[t]), b));
                    rel = rel.hstack(&place(s, &[(t, r)]));
                }
            }
        }
        pres.push(from_relations(ring, gens[s], &rel));
    }

    let mut weyl_g = Vec::new();
    let mut res_g = Vec::new();
    let mut tr_g = Vec::new();
    for s in 0..=top {
        let mut w = Matrix::zeros(ring, gens[s], gens[s]);
        for t in 0..=s {
            let blk = kron_pair(ring, &m.weyl[t], &n.weyl[t]);
            w = w.add(
                ring,
                &place(s, &[(t, blk)]).mul(ring, &select_block(ring, gens[s], offsets[s][t], dm[t] * dn[t])),
            );
        }
        weyl_g.push(w);
        if s < top {
            // tr: same symbol one level up
            let mut tr = Matrix::zeros(ring, gens[s + 1], gens[s]);
            for i in 0..gens[s] {
                tr.set(i, i, ring.one());
            }
            tr_g.push(tr);
            let mut r = Matrix::zeros(ring, gens[s], gens[s + 1]);
            let hi = s + 1;
            let blk = kron_pair(ring, &m.res[s], &n.res[s]);
            r = r.add(
                ring,
                &place(s, &[(s, blk)]).mul(ring, &select_block(ring, gens[hi], offsets[hi][hi], dm[hi] * dn[hi])),
            );
            let step = g.pow(top - s - 1);
            for t in 0..=s {
                let size = dm[t] * dn[t];
                if size == 0 {
                    continue;
                }
                let mut sum = Matrix::zeros(ring, size, size);
                for k in 0..g.p {
                    sum = sum.add(ring, &kron_pair(ring, &m.weyl_pow(t, k * step), &n.weyl_pow(t, k * step)));
                }
                r = r.add(ring, &place(s, &[(t, sum)]).mul(ring, &select_block(ring, gens[hi], offsets[hi][t], size)));
            }
            res_g.push(r);
        }
    }
    let skeleton = BoxProduct { functor: MackeyFunctor::zero(g, ring.clone()), dm, dn, offsets, pres };
    let levels = skeleton.pres.iter().map(|p| p.module.clone()).collect();
    let weyl = (0..=top).map(|s| skeleton.induced(&skeleton, s, s, &weyl_g[s])).collect();
    let res = (0..top).map(|s| skeleton.induced(&skeleton, s + 1, s, &res_g[s])).collect();
    let tr = (0..top).map(|s| skeleton.induced(&skeleton, s, s + 1, &tr_g[s])).collect();
    let functor = MackeyFunctor::new(g, ring.clone(), levels, res, tr, weyl)?;
    Ok(BoxProduct { functor, ..skeleton })
}

/// `size × gens` matrix picking out the block starting at `offset`.
fn select_block<R: Coeff>(ring: &R, gens: usize, offset: usize, size: usize) -> Matrix<R::El> {
    let mut out = Matrix::zeros(ring, size, gens);
    for i in 0..size {
        out.set(i, offset + i, ring.one());
    }
    out
}

/// Box product for `C_p`; larger groups are routed to [`box_product_general`].
pub fn box_product_cp<R: Coeff>(m: &MackeyFunctor<R>, n: &MackeyFunctor<R>) -> Result<BoxProduct<R>> {
    if m.n() > 1 {
        return box_product_general(m, n);
    }
    box_core(m, n, &[])
}

/// Box product for `C_{p^n}`; needs a field base once `n > 1`.
pub fn box_product_general<R: Coeff>(m: &MackeyFunctor<R>, n: &MackeyFunctor<R>) -> Result<BoxProduct<R>> {
    if m.n() > 1 && !m.base.is_field() {
        return Err(Error::Unsupported("box products over Z are only supported for C_p".into()));
    }
    box_core(m, n, &[])
}

pub fn box_product<R: Coeff>(m: &MackeyFunctor<R>, n: &MackeyFunctor<R>) -> Result<BoxProduct<R>> {
    if m.n() <= 1 {
        box_product_cp(m, n)
    } else {
        box_product_general(m, n)
    }
}

/// Base change `l ⊠_k M` along a Green map `f : k → l`, as an `l`-module.
pub fn base_change<R: Coeff>(
    k: &GreenFunctor<R>,
    l: &GreenFunctor<R>,
    f: &GreenMap<R>,
    m: &GreenModule<R>,
) -> Result<(GreenModule<R>, BoxProduct<R>)> {
    let report = check_green_map(k, l, f);
    if !report.passed() {
        return Err(Error::Invalid(format!("not a map of Green functors: {report}")));
    }
    if m.ring != *k {
        return Err(Error::Invalid("module is not over the source of the Green map".into()));
    }
    let ring = k.base();
    let top = k.n();
    let balance: Vec<Vec<(Matrix<R::El>, Matrix<R::El>)>> = (0..=top)
        .map(|t| {
            (0..k.rings[t].rank())
                .map(|i| {
                    let fr = f.maps[t].apply(ring, &k.rings[t].basis(i));
                    (m.actions[t][i].clone(), l.rings[t].left_mul_matrix(&fr))
                })
                .collect()
        })
        .collect();
    if top > 1 && !ring.is_field() {
        return Err(Error::Unsupported("base change over Z is only supported for C_p".into()));
    }
    let bp = box_core(&m.mackey, &l.mackey, &balance)?;
    let actions = (0..=top)
        .map(|s| {
            (0..l.rings[s].rank())
                .map(|i| {
                    let x = l.rings[s].basis(i);
                    let mut a = Matrix::zeros(ring, bp.gens(s), bp.gens(s));
                    for t in 0..=s {
                        let size = bp.dm[t] * bp.dn[t];
                        if size == 0 {
                            continue;
                        }
                        let rx = l.mackey.res_composite(t, s).apply(ring, &x);
                        let blk = Matrix::identity(ring, bp.dm[t]).kron(ring, &l.rings[t].left_mul_matrix(&rx));
                        for r in 0..size {
                            for c in 0..size {
                                a.set(bp.offsets[s][t] + r, bp.offsets[s][t] + c, blk.get(r, c).clone());
                            }
                        }
                    }
                    bp.induced(&bp, s, s, &a)
                })
                .collect()
        })
        .collect();
    let module = GreenModule::new(l.clone(), bp.functor.clone(), actions)?;
    Ok((module, bp))
}

/// [`base_change`] restricted to `C_p`.
pub fn base_change_cp<R: Coeff>(
    k: &GreenFunctor<R>,
    l: &GreenFunctor<R>,
    f: &GreenMap<R>,
    m: &GreenModule<R>,
) -> Result<(GreenModule<R>, BoxProduct<R>)> {
    if k.n() != 1 {
        return Err(Error::Invalid(format!("base_change_cp needs C_p, got C{}", k.group().order())));
    }
    base_change(k, l, f, m)
}

/// The map `l ⊠_k M → l ⊠_k M'` induced by a module map `φ : M → M'`.
pub fn base_change_map<R: Coeff>(
    src: &BoxProduct<R>,
    dst: &BoxProduct<R>,
    phi: &MackeyMorphism<R>,
) -> MackeyMorphism<R> {
    let ring = &src.functor.base;
    let top = src.functor.n();
    let maps = (0..=top)
        .map(|s| {
            let mut a = Matrix::zeros(ring, dst.gens(s), src.gens(s));
            for t in 0..=s {
                let blk = phi.maps[t].kron(ring, &Matrix::identity(ring, src.dn[t]));
                for r in 0..blk.rows() {
                    for c in 0..blk.cols() {
                        a.set(dst.offsets[s][t] + r, src.offsets[s][t] + c, blk.get(r, c).clone());
                    }
                }
            }
            src.induced(dst, s, s, &a)
        })
        .collect();
    MackeyMorphism { maps }
}
