use crate::error::{Error, Result};
use crate::exactalg::{quotient, BasedRing, Coeff, FpModule, Matrix};
use crate::green::{GreenFunctor, GreenModule};
use crate::mackey::{quotient_functor, saturate, MackeyFunctor, MackeyMorphism};

fn need_positive<R: Coeff>(m: &MackeyFunctor<R>, what: &str) -> Result<()> {
    if m.n() == 0 {
        return Err(Error::Invalid(format!("{what} needs n >= 1")));
    }
    Ok(())
}

/// `τ≥1 M`: forget level `0` and view the rest as a `C_{p^{n-1}}`-Mackey functor.
pub fn tau_geq_1<R: Coeff>(m: &MackeyFunctor<R>) -> Result<MackeyFunctor<R>> {
    need_positive(m, "tau_geq_1")?;
    let g = crate::cyclic::CyclicGroup { p: m.group.p, n: m.n() - 1 };
    MackeyFunctor::new(
        g,
        m.base.clone(),
        m.levels[1..].to_vec(),
        m.res[1..].to_vec(),
        m.tr[1..].to_vec(),
        m.weyl[1..].to_vec(),
    )
}

pub fn tau_green<R: Coeff>(r: &GreenFunctor<R>) -> Result<GreenFunctor<R>> {
    GreenFunctor::new(tau_geq_1(&r.mackey)?, r.rings[1..].to_vec())
}

pub fn tau_module<R: Coeff>(m: &GreenModule<R>) -> Result<GreenModule<R>> {
    GreenModule::new(tau_green(&m.ring)?, tau_geq_1(&m.mackey)?, m.actions[1..].to_vec())
}

/// Replaces level `0` by zero, keeping everything above.
pub fn brutal_truncation<R: Coeff>(m: &MackeyFunctor<R>) -> Result<MackeyFunctor<R>> {
    let ring = &m.base;
    let mut levels = m.levels.clone();
    let mut res = m.res.clone();
    let mut tr = m.tr.clone();
    let mut weyl = m.weyl.clone();
    levels[0] = FpModule::zero();
    weyl[0] = Matrix::zeros(ring, 0, 0);
    if m.n() > 0 {
        let d1 = m.levels[1].gens();
        res[0] = Matrix::zeros(ring, 0, d1);
        tr[0] = Matrix::zeros(ring, d1, 0);
    }
    MackeyFunctor::new(m.group, ring.clone(), levels, res, tr, weyl)
}

pub fn brutal_green<R: Coeff>(r: &GreenFunctor<R>) -> Result<GreenFunctor<R>> {
    let mut rings = r.rings.clone();
    rings[0] = BasedRing::zero_ring(r.base().clone());
    GreenFunctor::new(brutal_truncation(&r.mackey)?, rings)
}

/// The ring structure induced on a quotient module `proj : L → Q` with section `section`.
pub fn quotient_ring<R: Coeff>(
    l: &BasedRing<R>,
    module: &FpModule<R::El>,
    proj: &Matrix<R::El>,
    section: &Matrix<R::El>,
) -> Result<BasedRing<R>> {
    let base = &l.base;
    let rank = module.gens();
    let cols = section.columns();
    BasedRing::with_orders(
        base.clone(),
        rank,
        |i, j| proj.apply(base, &l.mul(&cols[i], &cols[j])),
        proj.apply(base, l.unit()),
        (0..rank).map(|i| if rank == 1 { "1".to_string() } else { format!("q{i}") }).collect(),
        module.orders().to_vec(),
    )
}

/// Levelwise spans of the image of `Tr^{s+1}_0`, indexed by levels of `τ≥1 M`.
fn bottom_transfer_spans<R: Coeff>(m: &MackeyFunctor<R>) -> Vec<Matrix<R::El>> {
    (1..=m.n()).map(|s| m.tr_composite(0, s)).collect()
}

/// Mackey geometric `C_p`-fixed points: `τ≥1 M` modulo the subfunctor generated
/// by transfers from the bottom level. Returns the quotient and the projection.
pub fn geometric_fixed_points_with_proj<R: Coeff>(
    m: &MackeyFunctor<R>,
) -> Result<(MackeyFunctor<R>, MackeyMorphism<R>)> {
    need_positive(m, "geometric fixed points")?;
    let t = tau_geq_1(m)?;
    let spans = saturate(&t, bottom_transfer_spans(m), &[]);
    let (q, proj, _) = quotient_functor(&t, &spans)?;
    Ok((q, proj))
}

pub fn geometric_fixed_points<R: Coeff>(m: &MackeyFunctor<R>) -> Result<MackeyFunctor<R>> {
    Ok(geometric_fixed_points_with_proj(m)?.0)
}

/// `Φ^{C_{p^k}}` as `k` iterations of `Φ^{C_p}`.
pub fn geometric_fixed_points_iter<R: Coeff>(m: &MackeyFunctor<R>, k: usize) -> Result<MackeyFunctor<R>> {
    if k > m.n() {
        return Err(Error::LevelOutOfRange { level: k, max: m.n() });
    }
    (0..k).try_fold(m.clone(), |acc, _| geometric_fixed_points(&acc))
}

/// Green geometric fixed points: the quotient of `τ≥1 R` by the ideal generated
/// by bottom transfers, with the projection `τ≥1 R → Φ R`.
pub fn geometric_fixed_points_green_with_proj<R: Coeff>(
    r: &GreenFunctor<R>,
) -> Result<(GreenFunctor<R>, MackeyMorphism<R>)> {
    need_positive(&r.mackey, "geometric fixed points")?;
    let t = tau_green(r)?;
    let mult: Vec<Vec<Matrix<R::El>>> =
        t.rings.iter().map(|l| (0..l.rank()).map(|i| l.left_mul_matrix(&l.basis(i))).collect()).collect();
    let spans = saturate(&t.mackey, bottom_transfer_spans(&r.mackey), &mult);
    let (q, proj, sections) = quotient_functor(&t.mackey, &spans)?;
    let rings = (0..=q.n())
        .map(|s| quotient_ring(&t.rings[s], &q.levels[s], &proj.maps[s], &sections[s]))
        .collect::<Result<Vec<_>>>()?;
    Ok((GreenFunctor::new(q, rings)?, proj))
}

pub fn geometric_fixed_points_green<R: Coeff>(r: &GreenFunctor<R>) -> Result<GreenFunctor<R>> {
    Ok(geometric_fixed_points_green_with_proj(r)?.0)
}

pub fn geometric_fixed_points_green_iter<R: Coeff>(r: &GreenFunctor<R>, k: usize) -> Result<GreenFunctor<R>> {
    if k > r.n() {
        return Err(Error::LevelOutOfRange { level: k, max: r.n() });
    }
    (0..k).try_fold(r.clone(), |acc, _| geometric_fixed_points_green(&acc))
}

/// `Φ^{C_{p^m}}(R)` as a ring with its residual Weyl action.
#[derive(Clone, Debug, PartialEq)]
pub struct PhiRing<R: Coeff> {
    pub level: usize,
    pub ring: BasedRing<R>,
    /// Action of the generator of `C_{p^n}/C_{p^m}`.
    pub weyl: Matrix<R::El>,
    pub weyl_order: u64,
}

impl<R: Coeff> PhiRing<R> {
    pub fn is_zero(&self) -> bool {
        self.ring.rank() == 0
    }

    pub fn name(&self) -> String {
        ring_name(&self.ring)
    }
}

/// Short names such as `Z`, `Z/4`, `F2`, `F4`; anything else by rank.
pub fn ring_name<R: Coeff>(l: &BasedRing<R>) -> String {
    let base = &l.base;
    if l.rank() == 0 {
        return "0".to_string();
    }
    match base.cardinality() {
        None => {
            if l.rank() == 1 {
                let d = &l.orders()[0];
                if base.is_zero(d) {
                    return "Z".to_string();
                }
                let d = base.format(d);
                let prime = d.parse::<u64>().map(crate::exactalg::is_prime).unwrap_or(false);
                return if prime { format!("F{d}") } else { format!("Z/{d}") };
            }
            format!("Z-algebra of rank {}", l.rank())
        }
        Some(q) => {
            if l.rank() == 1 || l.is_field() == Some(true) {
                format!("F{}", q.pow(l.rank() as u32))
            } else {
                format!("F{q}-algebra of rank {}", l.rank())
            }
        }
    }
}

/// `R(G/C_{p^m}) / (im tr)` with the induced Weyl action; `m = 0` gives `R(G/e)`.
pub fn phi_ring<R: Coeff>(r: &GreenFunctor<R>, m: usize) -> Result<PhiRing<R>> {
    let g = r.group();
    g.check_level(m)?;
    let weyl_order = g.index(m);
    if m == 0 {
        return Ok(PhiRing { level: 0, ring: r.rings[0].clone(), weyl: r.mackey.weyl[0].clone(), weyl_order });
    }
    let base = r.base();
    let l = &r.rings[m];
    let image = r.mackey.tr[m - 1].clone();
    let mut ideal = image.clone();
    for i in 0..l.rank() {
        ideal = ideal.hstack(&l.left_mul_matrix(&l.basis(i)).mul(base, &image));
    }
    let pres = quotient(base, &r.mackey.levels[m], &ideal);
    let ring = quotient_ring(l, &pres.module, &pres.proj, &pres.section)?;
    let weyl = pres.module.reduce_map(base, &pres.proj.mul(base, &r.mackey.weyl[m].mul(base, &pres.section)));
    Ok(PhiRing { level: m, ring, weyl, weyl_order })
}
