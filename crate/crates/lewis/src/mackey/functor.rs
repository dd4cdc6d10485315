use crate::cyclic::{CyclicGroup, FiniteGSet};
use crate::error::{Error, Result};
use crate::exactalg::{Coeff, FpModule, Matrix};
use crate::report::CheckReport;

/// A `C_{p^n}`-Mackey functor on the chain of subgroups `C_{p^0} ⊂ .. ⊂ C_{p^n}`.
///
/// `res[s] : M_{s+1} → M_s`, `tr[s] : M_s → M_{s+1}`, and `weyl[s]` is the action
/// of the fixed generator `g` on `M_s`.
#[derive(Clone, Debug, PartialEq)]
pub struct MackeyFunctor<R: Coeff> {
    pub group: CyclicGroup,
    pub base: R,
    pub levels: Vec<FpModule<R::El>>,
    pub res: Vec<Matrix<R::El>>,
    pub tr: Vec<Matrix<R::El>>,
    pub weyl: Vec<Matrix<R::El>>,
}

impl<R: Coeff> MackeyFunctor<R> {
    pub fn new(
        group: CyclicGroup,
        base: R,
        levels: Vec<FpModule<R::El>>,
        res: Vec<Matrix<R::El>>,
        tr: Vec<Matrix<R::El>>,
        weyl: Vec<Matrix<R::El>>,
    ) -> Result<Self> {
        let n = group.n;
        if levels.len() != n + 1 || res.len() != n || tr.len() != n || weyl.len() != n + 1 {
            return Err(Error::Dimension(format!("a C{} Mackey functor needs {} levels", group.order(), n + 1)));
        }
        for s in 0..=n {
            let d = levels[s].gens();
            if weyl[s].shape() != (d, d) {
                return Err(Error::Dimension(format!("weyl at level {s} must be {d}x{d}")));
            }
            if s < n {
                let e = levels[s + 1].gens();
                if res[s].shape() != (d, e) {
                    return Err(Error::Dimension(format!("res at level {s} must be {d}x{e}")));
                }
                if tr[s].shape() != (e, d) {
                    return Err(Error::Dimension(format!("tr at level {s} must be {e}x{d}")));
                }
            }
        }
        let mut m = MackeyFunctor { group, base, levels, res, tr, weyl };
        m.normalize();
        Ok(m)
    }

    fn normalize(&mut self) {
        let ring = &self.base;
        for s in 0..=self.group.n {
            self.weyl[s] = self.levels[s].reduce_map(ring, &self.weyl[s]);
            if s < self.group.n {
                self.res[s] = self.levels[s].reduce_map(ring, &self.res[s]);
                self.tr[s] = self.levels[s + 1].reduce_map(ring, &self.tr[s]);
            }
        }
    }

    pub fn zero(group: CyclicGroup, base: R) -> Self {
        let n = group.n;
        let e = |r, c| Matrix::filled(r, c, base.zero());
        MackeyFunctor {
            group,
            levels: vec![FpModule::zero(); n + 1],
            res: vec![e(0, 0); n],
            tr: vec![e(0, 0); n],
            weyl: vec![e(0, 0); n + 1],
            base,
        }
    }

    pub fn n(&self) -> usize {
        self.group.n
    }

    pub fn dims(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.gens()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.levels.iter().all(|l| l.is_trivial())
    }

    pub fn is_levelwise_free(&self) -> bool {
        self.levels.iter().all(|l| l.is_free(&self.base))
    }

    /// `Res^t_s : M_t → M_s` for `s ≤ t`.
    pub fn res_composite(&self, s: usize, t: usize) -> Matrix<R::El> {
        let mut m = Matrix::identity(&self.base, self.levels[t].gens());
        for u in (s..t).rev() {
            m = self.res[u].mul(&self.base, &m);
        }
        self.levels[s].reduce_map(&self.base, &m)
    }

    /// `Tr^t_s : M_s → M_t` for `s ≤ t`.
    pub fn tr_composite(&self, s: usize, t: usize) -> Matrix<R::El> {
        let mut m = Matrix::identity(&self.base, self.levels[s].gens());
        for u in s..t {
            m = self.tr[u].mul(&self.base, &m);
        }
        self.levels[t].reduce_map(&self.base, &m)
    }

    /// Action of `g^e` on level `s`.
    pub fn weyl_pow(&self, s: usize, e: u64) -> Matrix<R::El> {
        let period = self.group.index(s);
        let w = self.weyl[s].pow(&self.base, e % period);
        self.levels[s].reduce_map(&self.base, &w)
    }

    /// The direct sum of a list of functors over the same group and base.
    pub fn direct_sum(parts: &[&MackeyFunctor<R>]) -> Result<Self> {
        let first = parts.first().ok_or_else(|| Error::Invalid("empty direct sum".into()))?;
        let (g, ring) = (first.group, first.base.clone());
        if parts.iter().any(|m| m.group != g || m.base != ring) {
            return Err(Error::Invalid("direct sum of functors over different groups or bases".into()));
        }
        let n = g.n;
        let levels =
            (0..=n).map(|s| parts.iter().fold(FpModule::zero(), |acc, m| acc.direct_sum(&m.levels[s]))).collect();
        let diag = |pick: &dyn Fn(&MackeyFunctor<R>) -> Matrix<R::El>| {
            Matrix::block_diag(&ring, &parts.iter().map(|m| pick(m)).collect::<Vec<_>>())
        };
        let res = (0..n).map(|s| diag(&|m| m.res[s].clone())).collect();
        let tr = (0..n).map(|s| diag(&|m| m.tr[s].clone())).collect();
        let weyl = (0..=n).map(|s| diag(&|m| m.weyl[s].clone())).collect();
        MackeyFunctor::new(g, ring.clone(), levels, res, tr, weyl)
    }

    pub fn power(&self, k: usize) -> Result<Self> {
        if k == 0 {
            return Ok(Self::zero(self.group, self.base.clone()));
        }
        Self::direct_sum(&vec![self; k])
    }
}

/// Value on a finite G-set: `M(X) = ⊕ M_s^{a_s}`.
pub fn evaluate_at_gset<R: Coeff>(m: &MackeyFunctor<R>, x: &FiniteGSet) -> Result<FpModule<R::El>> {
    if x.group != m.group {
        return Err(Error::Invalid(format!("G-set over {} but functor over {}", x.group, m.group)));
    }
    Ok(x.mult.iter().enumerate().fold(FpModule::zero(), |acc, (s, &a)| acc.direct_sum(&m.levels[s].power(a as usize))))
}

fn witness_column<R: Coeff>(
    ring: &R,
    target: &FpModule<R::El>,
    a: &Matrix<R::El>,
    b: &Matrix<R::El>,
) -> Option<String> {
    let diff = target.reduce_map(ring, &a.sub(ring, b));
    (0..diff.cols()).find(|&j| diff.column(j).iter().any(|x| !ring.is_zero(x))).map(|j| {
        let col: Vec<String> = diff.column(j).iter().map(|x| ring.format(x)).collect();
        format!("on basis vector e{j}: difference ({})", col.join(","))
    })
}

fn compare<R: Coeff>(
    report: &mut CheckReport,
    ring: &R,
    target: &FpModule<R::El>,
    a: &Matrix<R::El>,
    b: &Matrix<R::El>,
    identity: &str,
    level: usize,
    indices: Vec<usize>,
) {
    if a.shape() != b.shape() {
        report.fail(identity, Some(level), indices, "shape mismatch");
    } else if let Some(w) = witness_column(ring, target, a, b) {
        report.fail(identity, Some(level), indices, w);
    }
}

/// Checks every Mackey axiom in the Weyl-generator formulation.
pub fn check_axioms<R: Coeff>(m: &MackeyFunctor<R>) -> CheckReport {
    let mut report = CheckReport::new();
    let ring = &m.base;
    let g = m.group;
    let n = g.n;
    for s in 0..=n {
        let lv = &m.levels[s];
        if !lv.well_defined_from(ring, lv, &m.weyl[s]) {
            report.fail("weyl well defined", Some(s), vec![], "");
        }
        if s < n {
            if !lv.well_defined_from(ring, &m.levels[s + 1], &m.res[s]) {
                report.fail("res well defined", Some(s), vec![], "");
            }
            if !m.levels[s + 1].well_defined_from(ring, lv, &m.tr[s]) {
                report.fail("tr well defined", Some(s), vec![], "");
            }
        }
    }
    if !report.passed() {
        return report;
    }
    for s in 0..=n {
        let lv = &m.levels[s];
        let id = Matrix::identity(ring, lv.gens());
        let wp = m.weyl[s].pow(ring, g.index(s));
        compare(&mut report, ring, lv, &wp, &id, "weyl order divides p^(n-s)", s, vec![]);
    }
    for s in 0..n {
        let (lo, hi) = (&m.levels[s], &m.levels[s + 1]);
        let a = m.res[s].mul(ring, &m.weyl[s + 1]);
        let b = m.weyl[s].mul(ring, &m.res[s]);
        compare(&mut report, ring, lo, &a, &b, "res commutes with weyl", s, vec![]);
        let a = m.tr[s].mul(ring, &m.weyl[s]);
        let b = m.weyl[s + 1].mul(ring, &m.tr[s]);
        compare(&mut report, ring, hi, &a, &b, "tr commutes with weyl", s, vec![]);
        let lhs = m.res[s].mul(ring, &m.tr[s]);
        let c = m.weyl_pow(s, g.pow(n - s - 1));
        let mut rhs = Matrix::zeros(ring, lo.gens(), lo.gens());
        let mut term = Matrix::identity(ring, lo.gens());
        for _ in 0..g.p {
            rhs = rhs.add(ring, &term);
            term = term.mul(ring, &c);
        }
        compare(&mut report, ring, lo, &lhs, &rhs, "double coset formula", s, vec![s, s]);
    }
    // Res^u_s Tr^u_t = sum over C_{p^u}/C_{p^max(s,t)} of Tr^s_m c_γ Res^t_m, m = min(s,t)
    for u in 2..=n {
        for s in 0..u {
            for t in 0..u {
                if s == u - 1 && t == u - 1 {
                    continue;
                }
                let lv = &m.levels[s];
                let lhs = m.res_composite(s, u).mul(ring, &m.tr_composite(t, u));
                let mn = s.min(t);
                let reps = g.pow(u - s.max(t));
                let step = g.pow(n - u);
                let down = m.res_composite(mn, t);
                let up = m.tr_composite(mn, s);
                let mut rhs = Matrix::zeros(ring, lv.gens(), m.levels[t].gens());
                for i in 0..reps {
                    let c = m.weyl_pow(mn, i * step);
                    rhs = rhs.add(ring, &up.mul(ring, &c.mul(ring, &down)));
                }
                compare(&mut report, ring, lv, &lhs, &rhs, "double coset formula", u, vec![s, t]);
            }
        }
    }
    report
}

/// True iff `tr_s ∘ res_s = p · id` on every `M_{s+1}`.
pub fn check_cohomological<R: Coeff>(m: &MackeyFunctor<R>) -> CheckReport {
    let mut report = CheckReport::new();
    let ring = &m.base;
    let p = ring.from_i64(m.group.p as i64);
    for s in 0..m.n() {
        let hi = &m.levels[s + 1];
        let lhs = m.tr[s].mul(ring, &m.res[s]);
        let rhs = Matrix::scalar(ring, hi.gens(), &p);
        compare(&mut report, ring, hi, &lhs, &rhs, "tr∘res = p", s + 1, vec![]);
    }
    report
}
