use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactalg::fpmodule::map_kernel;
use crate::exactalg::linalg::{rank, solve};
use crate::exactalg::{Coeff, Matrix};
use crate::functors::{free_module, tau_module, yoneda_map};
use crate::green::{green_submodule, module_hom_basis, GreenFunctor, GreenModule};
use crate::mackey::{check_morphism, invert, MackeyFunctor, MackeyMorphism};

use super::dims::{check_rfd_meadow, classify_free_for};

const RANDOM_TRIALS: usize = 1000;

/// `⊕ F_{summands[j]}` in the given order.
pub fn free_sum<R: Coeff>(k: &GreenFunctor<R>, summands: &[usize]) -> Result<GreenModule<R>> {
    if summands.is_empty() {
        let zero = MackeyFunctor::zero(k.group(), k.base().clone());
        let actions = k.rings.iter().map(|l| vec![Matrix::zeros(k.base(), 0, 0); l.rank()]).collect();
        return GreenModule::new(k.clone(), zero, actions);
    }
    let parts = summands.iter().map(|&i| free_module(k, i)).collect::<Result<Vec<_>>>()?;
    GreenModule::direct_sum(&parts.iter().collect::<Vec<_>>())
}

/// `P ≅ ⊕ F_i^{n_i}` with an explicit isomorphism.
#[derive(Clone, Debug)]
pub struct FreeDecomposition<R: Coeff> {
    pub multiplicities: Vec<u64>,
    /// After folding `F_i` into copies of `k` where that is known to be valid.
    pub canonical: Option<Vec<u64>>,
    /// Free generators as `(level, element of P)`, sorted by level.
    pub generators: Vec<(usize, Vec<R::El>)>,
    /// `⊕ F_i^{n_i} → P`.
    pub witness: MackeyMorphism<R>,
    pub inverse: MackeyMorphism<R>,
    pub module: GreenModule<R>,
}

impl<R: Coeff> fmt::Display for FreeDecomposition<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .multiplicities
            .iter()
            .enumerate()
            .filter(|(_, &m)| m > 0)
            .map(|(i, m)| if *m == 1 { format!("F{i}") } else { format!("F{i}^{m}") })
            .collect();
        let shown = if parts.is_empty() { "0".to_string() } else { parts.join(" + ") };
        write!(f, "P = {shown}; multiplicities {:?}", self.multiplicities)?;
        if let Some(c) = &self.canonical {
            write!(f, "; canonical {c:?}")?;
        }
        Ok(())
    }
}

/// Why a decomposition attempt stopped, with the residual module's shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecomposeFailure {
    pub stage: String,
    pub detail: String,
    pub residual_dims: Vec<usize>,
}

impl fmt::Display for DecomposeFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} failed: {} (residual dims {:?})", self.stage, self.detail, self.residual_dims)
    }
}

fn fail<R: Coeff>(stage: &str, detail: impl Into<String>, m: &GreenModule<R>) -> DecomposeFailure {
    DecomposeFailure { stage: stage.to_string(), detail: detail.into(), residual_dims: m.dims() }
}

fn unit_vec<R: Coeff>(base: &R, d: usize, i: usize) -> Vec<R::El> {
    (0..d).map(|k| if k == i { base.one() } else { base.zero() }).collect()
}

fn is_module_endo<R: Coeff>(m: &GreenModule<R>, e: &MackeyMorphism<R>) -> bool {
    let base = m.base();
    if e.maps.len() != m.n() + 1 || !check_morphism(&m.mackey, &m.mackey, e).passed() {
        return false;
    }
    (0..=m.n()).all(|s| {
        let lv = &m.mackey.levels[s];
        m.actions[s].iter().all(|a| lv.maps_equal(base, &e.maps[s].mul(base, a), &a.mul(base, &e.maps[s])))
    })
}

/// A split injection `F_0 → cur` at `x`, with a retraction, if `x` generates a free summand.
fn split_at<R: Coeff>(
    cur: &GreenModule<R>,
    f0: &GreenModule<R>,
    x: &[R::El],
) -> Result<Option<(MackeyMorphism<R>, MackeyMorphism<R>)>> {
    let base = cur.base();
    let phi = yoneda_map(cur, 0, x)?;
    if rank(base, &phi.maps[0]) < f0.mackey.levels[0].gens() {
        return Ok(None);
    }
    let homs = module_hom_basis(cur, f0)?;
    let target: Vec<R::El> =
        f0.mackey.levels.iter().flat_map(|l| Matrix::identity(base, l.gens()).data().to_vec()).collect();
    let cols: Vec<Vec<R::El>> =
        homs.iter().map(|h| phi.then(base, h).maps.iter().flat_map(|m| m.data().to_vec()).collect()).collect();
    let system = Matrix::from_columns(&cols, target.len());
    Ok(solve(base, &system, &target).map(|c| {
        let rho = MackeyMorphism::combination(base, &homs, &c, &MackeyMorphism::zero(&cur.mackey, &f0.mackey));
        (phi, rho)
    }))
}

/// Decomposes the image of an idempotent module endomorphism `e` of `⊕ F_{summands[j]}`.
///
/// Free summands `F_0` are split off at the bottom level while possible; the
/// remainder is passed through `τ≥1` and treated the same way one group down.
/// The generators found are assembled into a map from a free module, which
/// is returned only once it has been verified to be invertible.
pub fn freeness_decompose<R: Coeff>(
    k: &GreenFunctor<R>,
    summands: &[usize],
    e: &MackeyMorphism<R>,
    seed: u64,
) -> Result<std::result::Result<FreeDecomposition<R>, DecomposeFailure>> {
    let base = k.base();
    if base.cardinality().is_none() {
        return Err(Error::Unsupported("decomposition needs a finite field base".into()));
    }
    check_rfd_meadow(k)?;
    let free = free_sum(k, summands)?;
    if !is_module_endo(&free, e) {
        return Err(Error::Invalid("e is not a module endomorphism of the free module".into()));
    }
    let e2 = e.then(base, e);
    if e2 != *e {
        return Err(Error::Invalid("e is not idempotent".into()));
    }
    let (p, _) = green_submodule(&free, e.maps.clone())?;
    for s in 0..p.n() {
        let lo = &p.mackey.levels[s];
        if !map_kernel(base, &p.mackey.levels[s + 1], lo, &p.mackey.res[s]).module.is_trivial() {
            return Ok(Err(fail("restriction check", format!("restriction to level {s} is not injective"), &p)));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cur = p.clone();
    let mut incl: Vec<Matrix<R::El>> = p.mackey.levels.iter().map(|l| Matrix::identity(base, l.gens())).collect();
    let mut depth = 0;
    let mut generators: Vec<(usize, Vec<R::El>)> = Vec::new();
    while !cur.mackey.is_zero() {
        let f0 = free_module(&cur.ring, 0)?;
        let d = cur.mackey.levels[0].gens();
        let mut found = None;
        for trial in 0..d + RANDOM_TRIALS {
            let x: Vec<R::El> =
                if trial < d { unit_vec(base, d, trial) } else { (0..d).map(|_| base.random(&mut rng)).collect() };
            if x.iter().all(|c| base.is_zero(c)) {
                continue;
            }
            if let Some(split) = split_at(&cur, &f0, &x)? {
                found = Some((x, split));
                break;
            }
        }
        match found {
            Some((x, (_, rho))) => {
                generators.push((depth, incl[0].apply(base, &x)));
                let spans: Vec<Matrix<R::El>> = (0..=cur.n())
                    .map(|s| map_kernel(base, &cur.mackey.levels[s], &f0.mackey.levels[s], &rho.maps[s]).inclusion)
                    .collect();
                let (sub, inc) = green_submodule(&cur, spans)?;
                incl = incl.iter().zip(&inc.maps).map(|(a, b)| a.mul(base, b)).collect();
                cur = sub;
            }
            None if cur.n() == 0 => {
                return Ok(Err(fail("bottom level", "no element generates a free summand", &cur)));
            }
            None => {
                cur = tau_module(&cur)?;
                incl.remove(0);
                depth += 1;
            }
        }
    }
    generators.sort_by_key(|(d, _)| *d);
    let n = k.n();
    let mut multiplicities = vec![0u64; n + 1];
    for (d, _) in &generators {
        multiplicities[*d] += 1;
    }
    let levels: Vec<usize> = generators.iter().map(|(d, _)| *d).collect();
    let candidate = free_sum(k, &levels)?;
    let witness = if generators.is_empty() {
        MackeyMorphism::zero(&candidate.mackey, &p.mackey)
    } else {
        let parts = generators.iter().map(|(d, y)| yoneda_map(&p, *d, y)).collect::<Result<Vec<_>>>()?;
        MackeyMorphism::hstack(&parts)
    };
    let Some(inverse) = invert(&candidate.mackey, &p.mackey, &witness) else {
        return Ok(Err(fail("assembly", format!("the map from {multiplicities:?} is not an isomorphism"), &p)));
    };
    let canonical = classify_free_for(k, &multiplicities).ok();
    Ok(Ok(FreeDecomposition { multiplicities, canonical, generators, witness, inverse, module: p }))
}

/// A random idempotent `g π g⁻¹` on `⊕ F_{summands[j]}`, with `π` projecting onto
/// the summands flagged in `keep` and `g` a random module automorphism.
pub fn random_idempotent<R: Coeff>(
    k: &GreenFunctor<R>,
    summands: &[usize],
    keep: &[bool],
    seed: u64,
) -> Result<MackeyMorphism<R>> {
    let base = k.base();
    if keep.len() != summands.len() {
        return Err(Error::Dimension("one keep flag per summand".into()));
    }
    let free = free_sum(k, summands)?;
    let blocks = summands.iter().map(|&i| free_module(k, i)).collect::<Result<Vec<_>>>()?;
    let pi = MackeyMorphism {
        maps: (0..=k.n())
            .map(|s| {
                let parts: Vec<Matrix<R::El>> = blocks
                    .iter()
                    .zip(keep)
                    .map(|(b, &kp)| {
                        let d = b.mackey.levels[s].gens();
                        if kp {
                            Matrix::identity(base, d)
                        } else {
                            Matrix::zeros(base, d, d)
                        }
                    })
                    .collect();
                Matrix::block_diag(base, &parts)
            })
            .collect(),
    };
    let homs = module_hom_basis(&free, &free)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let zero = MackeyMorphism::zero(&free.mackey, &free.mackey);
    for _ in 0..100 {
        let c: Vec<R::El> = homs.iter().map(|_| base.random(&mut rng)).collect();
        let g = MackeyMorphism::combination(base, &homs, &c, &zero);
        if let Some(gi) = invert(&free.mackey, &free.mackey, &g) {
            return Ok(gi.then(base, &pi).then(base, &g));
        }
    }
    Err(Error::Failed("no random automorphism found".into()))
}
