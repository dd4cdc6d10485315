use crate::cyclic::CyclicGroup;
use crate::error::{Error, Result};
use crate::exactalg::fpmodule::{restrict_to_sub, submodule};
use crate::exactalg::{based_ring_check, BasedRing, Coeff, Matrix};
use crate::mackey::{check_axioms, check_morphism, saturate, subfunctor, HomSystem, MackeyFunctor, MackeyMorphism};
use crate::report::CheckReport;

/// A Mackey functor with a commutative ring structure on every level.
///
/// `rings[s]` lives on the generators of `mackey.levels[s]`.
#[derive(Clone, Debug, PartialEq)]
pub struct GreenFunctor<R: Coeff> {
    pub mackey: MackeyFunctor<R>,
    pub rings: Vec<BasedRing<R>>,
}

impl<R: Coeff> GreenFunctor<R> {
    pub fn new(mackey: MackeyFunctor<R>, rings: Vec<BasedRing<R>>) -> Result<Self> {
        if rings.len() != mackey.levels.len() {
            return Err(Error::Dimension("one ring per level is required".into()));
        }
        for (s, (r, l)) in rings.iter().zip(&mackey.levels).enumerate() {
            if r.rank() != l.gens() || r.orders() != l.orders() {
                return Err(Error::Dimension(format!("ring at level {s} does not match the level module")));
            }
        }
        Ok(GreenFunctor { mackey, rings })
    }

    pub fn group(&self) -> CyclicGroup {
        self.mackey.group
    }

    pub fn base(&self) -> &R {
        &self.mackey.base
    }

    pub fn n(&self) -> usize {
        self.mackey.n()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.mackey.dims()
    }

    pub fn unit(&self, s: usize) -> &[R::El] {
        self.rings[s].unit()
    }

    pub fn mul(&self, s: usize, a: &[R::El], b: &[R::El]) -> Vec<R::El> {
        self.rings[s].mul(a, b)
    }
}

fn unit_vec<R: Coeff>(ring: &R, d: usize, i: usize) -> Vec<R::El> {
    (0..d).map(|k| if k == i { ring.one() } else { ring.zero() }).collect()
}

fn show<R: Coeff>(ring: &R, v: &[R::El]) -> String {
    let parts: Vec<String> = v.iter().map(|x| ring.format(x)).collect();
    format!("({})", parts.join(","))
}

/// Ring axioms per level, ring-map property of res and weyl, and Frobenius reciprocity.
pub fn check_green<R: Coeff>(r: &GreenFunctor<R>) -> CheckReport {
    let mut report = check_axioms(&r.mackey);
    if !report.passed() {
        return report;
    }
    let ring = r.base();
    let m = &r.mackey;
    let n = r.n();
    for s in 0..=n {
        let rs = &r.rings[s];
        let mut sub = based_ring_check(rs, true);
        for v in &mut sub.violations {
            v.level = Some(s);
        }
        report.merge(sub);
        let d = rs.rank();
        let w = |x: &[R::El]| m.weyl[s].apply(ring, x);
        if !rs.eq_elements(&w(rs.unit()), rs.unit()) {
            report.fail("weyl preserves the unit", Some(s), vec![], show(ring, &w(rs.unit())));
        }
        for i in 0..d {
            for j in 0..d {
                let (a, b) = (unit_vec(ring, d, i), unit_vec(ring, d, j));
                let lhs = w(&rs.mul(&a, &b));
                let rhs = rs.mul(&w(&a), &w(&b));
                if !rs.eq_elements(&lhs, &rhs) {
                    report.fail("weyl is multiplicative", Some(s), vec![i, j], show(ring, &lhs));
                }
            }
        }
    }
    for s in 0..n {
        let (lo, hi) = (&r.rings[s], &r.rings[s + 1]);
        let res = |x: &[R::El]| m.res[s].apply(ring, x);
        let tr = |x: &[R::El]| m.tr[s].apply(ring, x);
        if !lo.eq_elements(&res(hi.unit()), lo.unit()) {
            report.fail("res preserves the unit", Some(s), vec![], show(ring, &res(hi.unit())));
        }
        for i in 0..hi.rank() {
            for j in 0..hi.rank() {
                let (a, b) = (unit_vec(ring, hi.rank(), i), unit_vec(ring, hi.rank(), j));
                let lhs = res(&hi.mul(&a, &b));
                let rhs = lo.mul(&res(&a), &res(&b));
                if !lo.eq_elements(&lhs, &rhs) {
                    report.fail("res is multiplicative", Some(s), vec![i, j], show(ring, &lhs));
                }
            }
        }
        for i in 0..lo.rank() {
            for j in 0..hi.rank() {
                let x = unit_vec(ring, lo.rank(), i);
                let y = unit_vec(ring, hi.rank(), j);
                let lhs = hi.mul(&tr(&x), &y);
                let rhs = tr(&lo.mul(&x, &res(&y)));
                if !hi.eq_elements(&lhs, &rhs) {
                    report.fail("Frobenius reciprocity tr(x)y = tr(x res y)", Some(s), vec![i, j], show(ring, &lhs));
                }
                let lhs = hi.mul(&y, &tr(&x));
                let rhs = tr(&lo.mul(&res(&y), &x));
                if !hi.eq_elements(&lhs, &rhs) {
                    report.fail("Frobenius reciprocity y tr(x) = tr(res(y) x)", Some(s), vec![i, j], show(ring, &lhs));
                }
            }
        }
    }
    // non-adjacent reciprocity follows from the adjacent one; spot-check it for small n
    if n <= 3 {
        for s in 0..n {
            for t in s + 2..=n {
                let (lo, hi) = (&r.rings[s], &r.rings[t]);
                let up = m.tr_composite(s, t);
                let down = m.res_composite(s, t);
                for i in 0..lo.rank() {
                    for j in 0..hi.rank() {
                        let x = unit_vec(ring, lo.rank(), i);
                        let y = unit_vec(ring, hi.rank(), j);
                        let lhs = hi.mul(&up.apply(ring, &x), &y);
                        let rhs = up.apply(ring, &lo.mul(&x, &down.apply(ring, &y)));
                        if !hi.eq_elements(&lhs, &rhs) {
                            report.fail("Frobenius reciprocity (composite)", Some(t), vec![s, i, j], show(ring, &lhs));
                        }
                    }
                }
            }
        }
    }
    report
}

/// A module over a Green functor: `actions[s][i]` is multiplication by the
/// `i`-th basis element of `ring.rings[s]` on `mackey.levels[s]`.
#[derive(Clone, Debug, PartialEq)]
pub struct GreenModule<R: Coeff> {
    pub ring: GreenFunctor<R>,
    pub mackey: MackeyFunctor<R>,
    pub actions: Vec<Vec<Matrix<R::El>>>,
}

impl<R: Coeff> GreenModule<R> {
    pub fn new(ring: GreenFunctor<R>, mackey: MackeyFunctor<R>, actions: Vec<Vec<Matrix<R::El>>>) -> Result<Self> {
        if ring.group() != mackey.group || ring.base() != &mackey.base {
            return Err(Error::Invalid("module and ring over different groups or bases".into()));
        }
        if actions.len() != mackey.levels.len() {
            return Err(Error::Dimension("one action list per level is required".into()));
        }
        for s in 0..actions.len() {
            let d = mackey.levels[s].gens();
            if actions[s].len() != ring.rings[s].rank() || actions[s].iter().any(|a| a.shape() != (d, d)) {
                return Err(Error::Dimension(format!("action matrices at level {s} have the wrong shape")));
            }
        }
        let actions = actions
            .into_iter()
            .enumerate()
            .map(|(s, l)| l.iter().map(|a| mackey.levels[s].reduce_map(&mackey.base, a)).collect())
            .collect();
        Ok(GreenModule { ring, mackey, actions })
    }

    /// The ring as a module over itself.
    pub fn regular(ring: &GreenFunctor<R>) -> Self {
        let actions =
            ring.rings.iter().map(|r| (0..r.rank()).map(|i| r.left_mul_matrix(&r.basis(i))).collect()).collect();
        GreenModule { ring: ring.clone(), mackey: ring.mackey.clone(), actions }
    }

    pub fn n(&self) -> usize {
        self.mackey.n()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.mackey.dims()
    }

    pub fn base(&self) -> &R {
        &self.mackey.base
    }

    /// Matrix of multiplication by a ring element `r` on level `s`.
    pub fn action_matrix(&self, s: usize, r: &[R::El]) -> Matrix<R::El> {
        let ring = self.base();
        let d = self.mackey.levels[s].gens();
        let mut acc = Matrix::zeros(ring, d, d);
        for (c, a) in r.iter().zip(&self.actions[s]) {
            if !ring.is_zero(c) {
                acc = acc.add(ring, &a.scale(ring, c));
            }
        }
        self.mackey.levels[s].reduce_map(ring, &acc)
    }

    pub fn act(&self, s: usize, r: &[R::El], x: &[R::El]) -> Vec<R::El> {
        self.mackey.levels[s].reduce_vec(self.base(), &self.action_matrix(s, r).apply(self.base(), x))
    }

    /// Direct sum of modules over the same ring.
    pub fn direct_sum(parts: &[&GreenModule<R>]) -> Result<Self> {
        let first = parts.first().ok_or_else(|| Error::Invalid("empty direct sum".into()))?;
        let mackey = MackeyFunctor::direct_sum(&parts.iter().map(|p| &p.mackey).collect::<Vec<_>>())?;
        let ring = first.base();
        let actions = (0..=first.n())
            .map(|s| {
                (0..first.ring.rings[s].rank())
                    .map(|i| {
                        Matrix::block_diag(ring, &parts.iter().map(|p| p.actions[s][i].clone()).collect::<Vec<_>>())
                    })
                    .collect()
            })
            .collect();
        GreenModule::new(first.ring.clone(), mackey, actions)
    }
}

/// Module axioms: unit, associativity, compatibility with res and weyl, and reciprocity.
pub fn check_green_module<R: Coeff>(m: &GreenModule<R>) -> CheckReport {
    let mut report = check_axioms(&m.mackey);
    if !report.passed() {
        return report;
    }
    let ring = m.base();
    let mk = &m.mackey;
    let k = &m.ring;
    let n = m.n();
    for s in 0..=n {
        let lv = &mk.levels[s];
        let rs = &k.rings[s];
        let d = lv.gens();
        for (i, a) in m.actions[s].iter().enumerate() {
            if !lv.well_defined_from(ring, lv, a) {
                report.fail("action well defined", Some(s), vec![i], "");
            }
            let ord = &rs.orders()[i];
            if !ring.is_zero(ord) && !lv.reduce_map(ring, &a.scale(ring, ord)).is_zero(ring) {
                report.fail("action respects additive order", Some(s), vec![i], "");
            }
        }
        if !lv.maps_equal(ring, &m.action_matrix(s, rs.unit()), &Matrix::identity(ring, d)) {
            report.fail("unit acts as identity", Some(s), vec![], "");
        }
        for i in 0..rs.rank() {
            for j in 0..rs.rank() {
                let prod = rs.mul(&rs.basis(i), &rs.basis(j));
                let lhs = m.action_matrix(s, &prod);
                let rhs = m.actions[s][i].mul(ring, &m.actions[s][j]);
                if !lv.maps_equal(ring, &lhs, &rhs) {
                    report.fail("action is associative", Some(s), vec![i, j], "");
                }
            }
            let wr = k.mackey.weyl[s].apply(ring, &rs.basis(i));
            let lhs = mk.weyl[s].mul(ring, &m.actions[s][i]);
            let rhs = m.action_matrix(s, &wr).mul(ring, &mk.weyl[s]);
            if !lv.maps_equal(ring, &lhs, &rhs) {
                report.fail("weyl(r m) = weyl(r) weyl(m)", Some(s), vec![i], "");
            }
        }
    }
    for s in 0..n {
        let (lo, hi) = (&mk.levels[s], &mk.levels[s + 1]);
        for i in 0..k.rings[s + 1].rank() {
            let e = k.rings[s + 1].basis(i);
            let rr = k.mackey.res[s].apply(ring, &e);
            let lhs = mk.res[s].mul(ring, &m.actions[s + 1][i]);
            let rhs = m.action_matrix(s, &rr).mul(ring, &mk.res[s]);
            if !lo.maps_equal(ring, &lhs, &rhs) {
                report.fail("res(r m) = res(r) res(m)", Some(s), vec![i], "");
            }
            let lhs = mk.tr[s].mul(ring, &m.action_matrix(s, &rr));
            let rhs = m.actions[s + 1][i].mul(ring, &mk.tr[s]);
            if !hi.maps_equal(ring, &lhs, &rhs) {
                report.fail("Frobenius reciprocity tr(res(r) m) = r tr(m)", Some(s), vec![i], "");
            }
        }
        for i in 0..k.rings[s].rank() {
            let e = k.rings[s].basis(i);
            let tr_r = k.mackey.tr[s].apply(ring, &e);
            let lhs = mk.tr[s].mul(ring, &m.actions[s][i].mul(ring, &mk.res[s]));
            let rhs = m.action_matrix(s + 1, &tr_r);
            if !hi.maps_equal(ring, &lhs, &rhs) {
                report.fail("Frobenius reciprocity tr(r res(m)) = tr(r) m", Some(s), vec![i], "");
            }
        }
    }
    report
}

/// Levelwise ring maps `k_s → l_s` forming a map of Green functors.
#[derive(Clone, Debug, PartialEq)]
pub struct GreenMap<R: Coeff> {
    pub maps: Vec<Matrix<R::El>>,
}

impl<R: Coeff> GreenMap<R> {
    pub fn identity(k: &GreenFunctor<R>) -> Self {
        GreenMap { maps: MackeyMorphism::identity(&k.mackey).maps }
    }

    pub fn as_morphism(&self) -> MackeyMorphism<R> {
        MackeyMorphism { maps: self.maps.clone() }
    }
}

pub fn check_green_map<R: Coeff>(k: &GreenFunctor<R>, l: &GreenFunctor<R>, f: &GreenMap<R>) -> CheckReport {
    let mut report = check_morphism(&k.mackey, &l.mackey, &f.as_morphism());
    if !report.passed() {
        return report;
    }
    let ring = k.base();
    for s in 0..=k.n() {
        let (a, b) = (&k.rings[s], &l.rings[s]);
        let fs = |x: &[R::El]| f.maps[s].apply(ring, x);
        if !b.eq_elements(&fs(a.unit()), b.unit()) {
            report.fail("ring map preserves the unit", Some(s), vec![], "");
        }
        for i in 0..a.rank() {
            for j in 0..a.rank() {
                let lhs = fs(&a.mul(&a.basis(i), &a.basis(j)));
                let rhs = b.mul(&fs(&a.basis(i)), &fs(&a.basis(j)));
                if !b.eq_elements(&lhs, &rhs) {
                    report.fail("ring map is multiplicative", Some(s), vec![i, j], "");
                }
            }
        }
    }
    report
}

/// Restriction of scalars along `f : k → l`.
pub fn restrict_scalars<R: Coeff>(k: &GreenFunctor<R>, f: &GreenMap<R>, m: &GreenModule<R>) -> Result<GreenModule<R>> {
    let ring = k.base();
    let actions = (0..=k.n())
        .map(|s| {
            (0..k.rings[s].rank()).map(|i| m.action_matrix(s, &f.maps[s].apply(ring, &k.rings[s].basis(i)))).collect()
        })
        .collect();
    GreenModule::new(k.clone(), m.mackey.clone(), actions)
}

/// Basis of module homomorphisms `M → N` (Mackey maps commuting with the action).
pub fn module_hom_basis<R: Coeff>(m: &GreenModule<R>, n: &GreenModule<R>) -> Result<Vec<MackeyMorphism<R>>> {
    crate::mackey::hom_basis(&m.mackey, &n.mackey)?;
    let ring = m.base();
    let mut sys = HomSystem::new(ring, &m.mackey, &n.mackey);
    for s in 0..=m.n() {
        for (a, b) in n.actions[s].iter().zip(&m.actions[s]) {
            sys.commute(a, s, s, b);
        }
    }
    Ok(sys.solutions())
}

/// The submodule generated by levelwise spans, with its inclusion.
pub fn green_submodule<R: Coeff>(
    m: &GreenModule<R>,
    spans: Vec<Matrix<R::El>>,
) -> Result<(GreenModule<R>, MackeyMorphism<R>)> {
    let ring = m.base();
    let closed = saturate(&m.mackey, spans, &m.actions);
    let subs: Vec<_> = (0..=m.n()).map(|s| submodule(ring, &m.mackey.levels[s], &closed[s])).collect();
    let (sub, inc) = subfunctor(
        &m.mackey,
        subs.iter().map(|x| x.module.clone()).collect(),
        subs.iter().map(|x| x.inclusion.clone()).collect(),
    )?;
    let actions = (0..=m.n())
        .map(|s| {
            m.actions[s]
                .iter()
                .map(|a| {
                    restrict_to_sub(ring, &m.mackey.levels[s], &inc.maps[s], &sub.levels[s], &a.mul(ring, &inc.maps[s]))
                        .ok_or_else(|| Error::Failed(format!("span not closed under the action at level {s}")))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((GreenModule::new(m.ring.clone(), sub, actions)?, inc))
}
