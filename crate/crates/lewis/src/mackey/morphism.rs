use super::functor::MackeyFunctor;
use crate::error::{Error, Result};
use crate::exactalg::fpmodule::{map_kernel, quotient, restrict_to_sub, submodule};
use crate::exactalg::linalg::{column_echelon, image_basis, kernel};
use crate::exactalg::{Coeff, FpModule, Matrix};
use crate::report::CheckReport;

/// Levelwise matrices `f_s : M_s → N_s`.
#[derive(Clone, Debug, PartialEq)]
pub struct MackeyMorphism<R: Coeff> {
    pub maps: Vec<Matrix<R::El>>,
}

impl<R: Coeff> MackeyMorphism<R> {
    pub fn identity(m: &MackeyFunctor<R>) -> Self {
        MackeyMorphism { maps: m.levels.iter().map(|l| Matrix::identity(&m.base, l.gens())).collect() }
    }

    pub fn zero(m: &MackeyFunctor<R>, n: &MackeyFunctor<R>) -> Self {
        MackeyMorphism {
            maps: m.levels.iter().zip(&n.levels).map(|(a, b)| Matrix::zeros(&m.base, b.gens(), a.gens())).collect(),
        }
    }

    /// `other ∘ self`.
    pub fn then(&self, ring: &R, other: &Self) -> Self {
        MackeyMorphism { maps: self.maps.iter().zip(&other.maps).map(|(f, g)| g.mul(ring, f)).collect() }
    }

    pub fn add(&self, ring: &R, other: &Self) -> Self {
        MackeyMorphism { maps: self.maps.iter().zip(&other.maps).map(|(f, g)| f.add(ring, g)).collect() }
    }

    pub fn scale(&self, ring: &R, c: &R::El) -> Self {
        MackeyMorphism { maps: self.maps.iter().map(|f| f.scale(ring, c)).collect() }
    }

    /// `Σ c_k basis_k`.
    pub fn combination(ring: &R, basis: &[Self], coeffs: &[R::El], template: &Self) -> Self {
        let mut acc =
            MackeyMorphism { maps: template.maps.iter().map(|m| Matrix::zeros(ring, m.rows(), m.cols())).collect() };
        for (b, c) in basis.iter().zip(coeffs) {
            if !ring.is_zero(c) {
                acc = acc.add(ring, &b.scale(ring, c));
            }
        }
        acc
    }

    /// Block sum `⊕ f_k : ⊕ M_k → N` given maps out of each summand.
    pub fn hstack(parts: &[Self]) -> Self {
        let levels = parts[0].maps.len();
        MackeyMorphism {
            maps: (0..levels)
                .map(|s| parts[1..].iter().fold(parts[0].maps[s].clone(), |acc, f| acc.hstack(&f.maps[s])))
                .collect(),
        }
    }
}

pub fn check_morphism<R: Coeff>(m: &MackeyFunctor<R>, n: &MackeyFunctor<R>, f: &MackeyMorphism<R>) -> CheckReport {
    let mut report = CheckReport::new();
    let ring = &m.base;
    if f.maps.len() != m.levels.len() || m.group != n.group {
        report.fail("shape", None, vec![], "level count mismatch");
        return report;
    }
    for s in 0..=m.n() {
        if f.maps[s].shape() != (n.levels[s].gens(), m.levels[s].gens()) {
            report.fail("shape", Some(s), vec![], "map dimensions");
            return report;
        }
        if !n.levels[s].well_defined_from(ring, &m.levels[s], &f.maps[s]) {
            report.fail("well defined", Some(s), vec![], "");
        }
        let a = n.weyl[s].mul(ring, &f.maps[s]);
        let b = f.maps[s].mul(ring, &m.weyl[s]);
        if !n.levels[s].maps_equal(ring, &a, &b) {
            report.fail("commutes with weyl", Some(s), vec![], "");
        }
        if s < m.n() {
            let a = n.res[s].mul(ring, &f.maps[s + 1]);
            let b = f.maps[s].mul(ring, &m.res[s]);
            if !n.levels[s].maps_equal(ring, &a, &b) {
                report.fail("commutes with res", Some(s), vec![], "");
            }
            let a = n.tr[s].mul(ring, &f.maps[s]);
            let b = f.maps[s + 1].mul(ring, &m.tr[s]);
            if !n.levels[s + 1].maps_equal(ring, &a, &b) {
                report.fail("commutes with tr", Some(s), vec![], "");
            }
        }
    }
    report
}

/// Linear equations in the entries of a levelwise map `f : M → N`.
///
/// Over `Z` an equation into a torsion generator of order `d` only has to hold mod `d`.
pub struct HomSystem<'a, R: Coeff> {
    ring: &'a R,
    rows_m: Vec<usize>,
    cols_m: Vec<usize>,
    offsets: Vec<usize>,
    unknowns: usize,
    targets: Vec<FpModule<R::El>>,
    sources: Vec<FpModule<R::El>>,
    /// Each equation with the order of the target generator it lives in.
    equations: Vec<(Vec<(usize, R::El)>, R::El)>,
}

impl<'a, R: Coeff> HomSystem<'a, R> {
    pub fn new(ring: &'a R, m: &MackeyFunctor<R>, n: &MackeyFunctor<R>) -> Self {
        let rows_m: Vec<usize> = n.dims();
        let cols_m: Vec<usize> = m.dims();
        let mut offsets = Vec::new();
        let mut total = 0;
        for (r, c) in rows_m.iter().zip(&cols_m) {
            offsets.push(total);
            total += r * c;
        }
        let mut sys = HomSystem {
            ring,
            rows_m,
            cols_m,
            offsets,
            unknowns: total,
            targets: n.levels.clone(),
            sources: m.levels.clone(),
            equations: Vec::new(),
        };
        for s in 0..=m.n() {
            sys.commute(&n.weyl[s], s, s, &m.weyl[s]);
            if s < m.n() {
                sys.commute(&n.res[s], s + 1, s, &m.res[s]);
                sys.commute(&n.tr[s], s, s + 1, &m.tr[s]);
            }
        }
        sys
    }

    pub fn unknowns(&self) -> usize {
        self.unknowns
    }

    /// Index of the unknown for entry `(i, j)` of the map at `level`.
    pub fn var(&self, level: usize, i: usize, j: usize) -> usize {
        self.offsets[level] + i * self.cols_m[level] + j
    }

    /// Adds `a · f_x = f_y · b`.
    pub fn commute(&mut self, a: &Matrix<R::El>, x: usize, y: usize, b: &Matrix<R::El>) {
        let ring = self.ring;
        let rows = self.rows_m[y];
        let cols = self.cols_m[x];
        assert_eq!(a.shape(), (rows, self.rows_m[x]), "left factor shape");
        assert_eq!(b.shape(), (self.cols_m[y], cols), "right factor shape");
        for i in 0..rows {
            for j in 0..cols {
                let mut eq = Vec::new();
                for c in 0..self.rows_m[x] {
                    let v = a.get(i, c);
                    if !ring.is_zero(v) {
                        eq.push((self.var(x, c, j), v.clone()));
                    }
                }
                for d in 0..self.cols_m[y] {
                    let v = b.get(d, j);
                    if !ring.is_zero(v) {
                        eq.push((self.var(y, i, d), ring.neg(v)));
                    }
                }
                if !eq.is_empty() {
                    self.equations.push((eq, self.targets[y].orders()[i].clone()));
                }
            }
        }
    }

    /// The equations as a matrix in the unknowns, with one slack column per
    /// congruence and rows making `f` well defined on torsion generators.
    pub fn matrix(&self) -> Matrix<R::El> {
        let ring = self.ring;
        let mut rows: Vec<Vec<(usize, R::El)>> = Vec::new();
        let mut slack = self.unknowns;
        for (eq, d) in &self.equations {
            let mut row = eq.clone();
            if !ring.is_zero(d) {
                row.push((slack, ring.neg(d)));
                slack += 1;
            }
            rows.push(row);
        }
        for s in 0..self.sources.len() {
            for (j, a) in self.sources[s].orders().iter().enumerate() {
                if ring.is_zero(a) {
                    continue;
                }
                for (i, b) in self.targets[s].orders().iter().enumerate() {
                    let mut row = vec![(self.var(s, i, j), a.clone())];
                    if !ring.is_zero(b) {
                        row.push((slack, ring.neg(b)));
                        slack += 1;
                    }
                    rows.push(row);
                }
            }
        }
        let mut m = Matrix::zeros(ring, rows.len(), slack);
        for (r, eq) in rows.iter().enumerate() {
            for (v, c) in eq {
                let cur = m.get(r, *v).clone();
                m.set(r, *v, ring.add(&cur, c));
            }
        }
        m
    }

    pub fn unpack(&self, x: &[R::El]) -> MackeyMorphism<R> {
        MackeyMorphism {
            maps: (0..self.rows_m.len())
                .map(|s| Matrix::from_fn(self.rows_m[s], self.cols_m[s], |i, j| x[self.var(s, i, j)].clone()))
                .collect(),
        }
    }

    /// A basis of the solutions; over `Z` with torsion, generators of the hom group.
    pub fn solutions(&self) -> Vec<MackeyMorphism<R>> {
        let ring = self.ring;
        let system = self.matrix();
        let k = kernel(ring, &system);
        let gens = if system.cols() == self.unknowns {
            k
        } else {
            image_basis(ring, &k.select_rows(&(0..self.unknowns).collect::<Vec<_>>()))
        };
        gens.columns()
            .iter()
            .map(|c| {
                let f = self.unpack(c);
                MackeyMorphism { maps: f.maps.iter().zip(&self.targets).map(|(x, t)| t.reduce_map(ring, x)).collect() }
            })
            .filter(|f| !f.maps.iter().all(|x| x.is_zero(ring)))
            .collect()
    }
}

/// Basis of Mackey morphisms `M → N`: a lattice basis over `Z` when the levels
/// are free, otherwise generators of the hom group.
pub fn hom_basis<R: Coeff>(m: &MackeyFunctor<R>, n: &MackeyFunctor<R>) -> Result<Vec<MackeyMorphism<R>>> {
    check_hom_inputs(m, n)?;
    Ok(HomSystem::new(&m.base, m, n).solutions())
}

pub(crate) fn check_hom_inputs<R: Coeff>(m: &MackeyFunctor<R>, n: &MackeyFunctor<R>) -> Result<()> {
    if m.group != n.group || m.base != n.base {
        return Err(Error::Invalid("hom between functors over different groups or bases".into()));
    }
    Ok(())
}

/// Levelwise inverse, if `f` is an isomorphism.
pub fn invert<R: Coeff>(
    m: &MackeyFunctor<R>,
    n: &MackeyFunctor<R>,
    f: &MackeyMorphism<R>,
) -> Option<MackeyMorphism<R>> {
    let ring = &m.base;
    let mut maps = Vec::new();
    for s in 0..=m.n() {
        let (a, b) = (&m.levels[s], &n.levels[s]);
        let fs = &f.maps[s];
        let mut cols = Vec::new();
        for j in 0..b.gens() {
            let e: Vec<R::El> = (0..b.gens()).map(|i| if i == j { ring.one() } else { ring.zero() }).collect();
            cols.push(a.reduce_vec(ring, &b.solve_in(ring, fs, &e)?));
        }
        let g = Matrix::from_columns(&cols, a.gens());
        if !a.maps_equal(ring, &g.mul(ring, fs), &Matrix::identity(ring, a.gens())) {
            return None;
        }
        maps.push(g);
    }
    Some(MackeyMorphism { maps })
}

/// A subfunctor (given levelwise by inclusions) as a functor in its own right.
pub fn subfunctor<R: Coeff>(
    m: &MackeyFunctor<R>,
    modules: Vec<FpModule<R::El>>,
    inclusions: Vec<Matrix<R::El>>,
) -> Result<(MackeyFunctor<R>, MackeyMorphism<R>)> {
    let ring = &m.base;
    let n = m.n();
    let induced = |s: usize, image: Matrix<R::El>| -> Result<Matrix<R::El>> {
        restrict_to_sub(ring, &m.levels[s], &inclusions[s], &modules[s], &image)
            .ok_or_else(|| Error::Failed(format!("subfunctor not closed at level {s}")))
    };
    let mut res = Vec::new();
    let mut tr = Vec::new();
    let mut weyl = Vec::new();
    for s in 0..=n {
        weyl.push(induced(s, m.weyl[s].mul(ring, &inclusions[s]))?);
        if s < n {
            res.push(induced(s, m.res[s].mul(ring, &inclusions[s + 1]))?);
            tr.push(induced(s + 1, m.tr[s].mul(ring, &inclusions[s]))?);
        }
    }
    let sub = MackeyFunctor::new(m.group, ring.clone(), modules, res, tr, weyl)?;
    Ok((sub, MackeyMorphism { maps: inclusions }))
}

/// The quotient of `m` by levelwise spans closed under the structure maps.
pub fn quotient_functor<R: Coeff>(
    m: &MackeyFunctor<R>,
    spans: &[Matrix<R::El>],
) -> Result<(MackeyFunctor<R>, MackeyMorphism<R>, Vec<Matrix<R::El>>)> {
    let ring = &m.base;
    let n = m.n();
    let pres: Vec<_> = (0..=n).map(|s| quotient(ring, &m.levels[s], &spans[s])).collect();
    let induced = |s: usize, t: usize, f: &Matrix<R::El>| -> Matrix<R::El> {
        pres[t].proj.mul(ring, &f.mul(ring, &pres[s].section))
    };
    let weyl = (0..=n).map(|s| induced(s, s, &m.weyl[s])).collect();
    let res = (0..n).map(|s| induced(s + 1, s, &m.res[s])).collect();
    let tr = (0..n).map(|s| induced(s, s + 1, &m.tr[s])).collect();
    let q = MackeyFunctor::new(m.group, ring.clone(), pres.iter().map(|p| p.module.clone()).collect(), res, tr, weyl)?;
    let proj = MackeyMorphism { maps: pres.iter().map(|p| p.proj.clone()).collect() };
    // the spans must be closed for the induced maps to be well defined
    let check = check_morphism(m, &q, &proj);
    if !check.passed() {
        return Err(Error::Failed(format!("quotient by a non-closed span: {check}")));
    }
    let sections = pres.iter().map(|p| p.section.clone()).collect();
    Ok((q, proj, sections))
}

/// Closes levelwise spans under res, tr, weyl and any extra per-level operators.
pub fn saturate<R: Coeff>(
    m: &MackeyFunctor<R>,
    spans: Vec<Matrix<R::El>>,
    extra: &[Vec<Matrix<R::El>>],
) -> Vec<Matrix<R::El>> {
    let ring = &m.base;
    let n = m.n();
    let rel: Vec<Matrix<R::El>> = m.levels.iter().map(|l| l.relation_matrix(ring)).collect();
    let mut cur: Vec<Matrix<R::El>> =
        spans.iter().enumerate().map(|(s, v)| image_basis(ring, &v.hstack(&rel[s]))).collect();
    loop {
        let mut changed = false;
        let mut next = Vec::with_capacity(n + 1);
        for s in 0..=n {
            let mut cand = cur[s].hstack(&m.weyl[s].mul(ring, &cur[s]));
            if s < n {
                cand = cand.hstack(&m.res[s].mul(ring, &cur[s + 1]));
            }
            if s > 0 {
                cand = cand.hstack(&m.tr[s - 1].mul(ring, &cur[s - 1]));
            }
            for op in extra.get(s).into_iter().flatten() {
                cand = cand.hstack(&op.mul(ring, &cur[s]));
            }
            let ech = column_echelon(ring, &cur[s]);
            if cand.columns().iter().any(|c| ech.solve(ring, c).is_none()) {
                changed = true;
            }
            next.push(image_basis(ring, &cand.hstack(&rel[s])));
        }
        cur = next;
        if !changed {
            return cur;
        }
    }
}

pub fn kernel_functor<R: Coeff>(
    m: &MackeyFunctor<R>,
    n: &MackeyFunctor<R>,
    f: &MackeyMorphism<R>,
) -> Result<(MackeyFunctor<R>, MackeyMorphism<R>)> {
    let ring = &m.base;
    let subs: Vec<_> = (0..=m.n()).map(|s| map_kernel(ring, &m.levels[s], &n.levels[s], &f.maps[s])).collect();
    subfunctor(m, subs.iter().map(|x| x.module.clone()).collect(), subs.into_iter().map(|x| x.inclusion).collect())
}

pub fn image_functor<R: Coeff>(
    n: &MackeyFunctor<R>,
    f: &MackeyMorphism<R>,
) -> Result<(MackeyFunctor<R>, MackeyMorphism<R>)> {
    let ring = &n.base;
    let subs: Vec<_> = (0..=n.n()).map(|s| submodule(ring, &n.levels[s], &f.maps[s])).collect();
    subfunctor(n, subs.iter().map(|x| x.module.clone()).collect(), subs.into_iter().map(|x| x.inclusion).collect())
}

pub fn cokernel_functor<R: Coeff>(
    n: &MackeyFunctor<R>,
    f: &MackeyMorphism<R>,
) -> Result<(MackeyFunctor<R>, MackeyMorphism<R>)> {
    let (q, proj, _) = quotient_functor(n, &f.maps)?;
    Ok((q, proj))
}
