use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::functor::MackeyFunctor;
use super::morphism::{check_hom_inputs, check_morphism, invert, HomSystem, MackeyMorphism};
use crate::exactalg::linalg::determinant;
use crate::exactalg::Coeff;

/// Search bounds for [`is_isomorphic`].
#[derive(Clone, Debug)]
pub struct IsoOptions {
    pub seed: u64,
    /// Coefficient bound for the integral lattice search.
    pub bound: i64,
    pub moduli: Vec<u64>,
    /// Skip a modulus when `m^rank` exceeds this many points.
    pub max_mod_points: u64,
    pub random_trials: usize,
    pub exhaustive_dim: usize,
    /// Largest number of points enumerated in exhaustive searches.
    pub max_points: u64,
}

impl Default for IsoOptions {
    fn default() -> Self {
        IsoOptions {
            seed: 0,
            bound: 5,
            moduli: (2..=97).collect(),
            max_mod_points: 200_000,
            random_trials: 10_000,
            exhaustive_dim: 6,
            max_points: 1_000_000,
        }
    }
}

impl IsoOptions {
    pub fn with_seed(seed: u64) -> Self {
        IsoOptions { seed, ..Self::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NonIsoCertificate {
    /// Level modules are not isomorphic (dimensions or invariant factors differ).
    LevelMismatch { level: usize, left: String, right: String },
    /// No element of the hom space is invertible at every level.
    Exhausted { hom_dim: usize },
    /// Some level determinant is never a unit modulo `modulus`; `level` is
    /// `None` when the levels only fail jointly.
    Determinant { modulus: u64, level: Option<usize>, level_name: String },
}

impl fmt::Display for NonIsoCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NonIsoCertificate::LevelMismatch { level, left, right } => {
                write!(f, "level {level} differs: {left} vs {right}")
            }
            NonIsoCertificate::Exhausted { hom_dim } => {
                write!(f, "no levelwise invertible map in a hom space of dimension {hom_dim}")
            }
            NonIsoCertificate::Determinant { modulus, level_name, .. } => {
                write!(f, "mod {modulus}, level {level_name}")
            }
        }
    }
}

#[derive(Clone, Debug)]
pub enum IsoVerdict<R: Coeff> {
    Isomorphic { witness: MackeyMorphism<R>, inverse: MackeyMorphism<R> },
    NotIsomorphic(NonIsoCertificate),
    Inconclusive(String),
}

impl<R: Coeff> IsoVerdict<R> {
    pub fn is_iso(&self) -> bool {
        matches!(self, IsoVerdict::Isomorphic { .. })
    }

    pub fn is_non_iso(&self) -> bool {
        matches!(self, IsoVerdict::NotIsomorphic(_))
    }

    pub fn witness(&self) -> Option<&MackeyMorphism<R>> {
        match self {
            IsoVerdict::Isomorphic { witness, .. } => Some(witness),
            _ => None,
        }
    }
}

impl<R: Coeff> fmt::Display for IsoVerdict<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IsoVerdict::Isomorphic { .. } => write!(f, "iso"),
            IsoVerdict::NotIsomorphic(c) => write!(f, "non-iso, certificate \"{c}\""),
            IsoVerdict::Inconclusive(why) => write!(f, "inconclusive: {why}"),
        }
    }
}

/// Decides `M ≅ N`, with a witness or a certificate when it can.
pub fn is_isomorphic<R: Coeff>(m: &MackeyFunctor<R>, n: &MackeyFunctor<R>, opts: &IsoOptions) -> IsoVerdict<R> {
    let ring = &m.base;
    if m.group != n.group || m.base != n.base {
        return IsoVerdict::Inconclusive("functors over different groups or bases".into());
    }
    for s in 0..=m.n() {
        let (a, b) = (m.levels[s].invariants(ring), n.levels[s].invariants(ring));
        if a != b {
            let show = |(r, t): &(usize, Vec<R::El>)| {
                let tors: Vec<String> = t.iter().map(|x| ring.format(x)).collect();
                if tors.is_empty() {
                    format!("rank {r}")
                } else {
                    format!("rank {r} torsion ({})", tors.join(","))
                }
            };
            return IsoVerdict::NotIsomorphic(NonIsoCertificate::LevelMismatch {
                level: s,
                left: show(&a),
                right: show(&b),
            });
        }
    }
    if let Err(e) = check_hom_inputs(m, n) {
        return IsoVerdict::Inconclusive(e.to_string());
    }
    if m.dims() == n.dims() {
        let id = MackeyMorphism::identity(m);
        if check_morphism(m, n, &id).passed() {
            if let Some(v) = accept(m, n, id) {
                return v;
            }
        }
    }
    let system = HomSystem::new(ring, m, n);
    let basis = system.solutions();
    if ring.is_field() {
        field_search(m, n, &basis, opts)
    } else {
        integral_search(m, n, &basis, opts)
    }
}

fn accept<R: Coeff>(m: &MackeyFunctor<R>, n: &MackeyFunctor<R>, f: MackeyMorphism<R>) -> Option<IsoVerdict<R>> {
    let ring = &m.base;
    let singular = |s: usize| {
        let x = &f.maps[s];
        x.rows() > 0 && m.levels[s].is_free(ring) && ring.is_zero(&determinant(ring, x))
    };
    if (0..f.maps.len()).any(singular) {
        return None;
    }
    let inverse = invert(m, n, &f)?;
    Some(IsoVerdict::Isomorphic { witness: f, inverse })
}

fn field_search<R: Coeff>(
    m: &MackeyFunctor<R>,
    n: &MackeyFunctor<R>,
    basis: &[MackeyMorphism<R>],
    opts: &IsoOptions,
) -> IsoVerdict<R> {
    let ring = &m.base;
    let template = MackeyMorphism::zero(m, n);
    let d = basis.len();
    let q = ring.cardinality().unwrap_or(u64::MAX);
    let total = (q as u128).checked_pow(d as u32).unwrap_or(u128::MAX);
    if d == 0 {
        return accept(m, n, template)
            .unwrap_or(IsoVerdict::NotIsomorphic(NonIsoCertificate::Exhausted { hom_dim: 0 }));
    }
    if d <= opts.exhaustive_dim && total <= opts.max_points as u128 {
        for code in 0..total as u64 {
            let mut c = code;
            let coeffs: Vec<R::El> = (0..d)
                .map(|_| {
                    let x = ring.element(c % q);
                    c /= q;
                    x
                })
                .collect();
            let f = MackeyMorphism::combination(ring, basis, &coeffs, &template);
            if let Some(v) = accept(m, n, f) {
                return v;
            }
        }
        return IsoVerdict::NotIsomorphic(NonIsoCertificate::Exhausted { hom_dim: d });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for _ in 0..opts.random_trials {
        let coeffs: Vec<R::El> = (0..d).map(|_| ring.random(&mut rng)).collect();
        let f = MackeyMorphism::combination(ring, basis, &coeffs, &template);
        if let Some(v) = accept(m, n, f) {
            return v;
        }
    }
    IsoVerdict::Inconclusive(format!("{} random trials in a hom space of dimension {d}", opts.random_trials))
}

fn flatten<R: Coeff>(ring: &R, f: &MackeyMorphism<R>) -> Vec<BigInt> {
    f.maps.iter().flat_map(|x| x.data().iter().map(|e| ring.to_integer(e).expect("integral base"))).collect()
}

fn integral_search<R: Coeff>(
    m: &MackeyFunctor<R>,
    n: &MackeyFunctor<R>,
    basis: &[MackeyMorphism<R>],
    opts: &IsoOptions,
) -> IsoVerdict<R> {
    let ring = &m.base;
    let template = MackeyMorphism::zero(m, n);
    let vectors: Vec<Vec<BigInt>> = basis.iter().map(|f| flatten(ring, f)).collect();
    let reduced = lll(vectors);
    let shapes: Vec<(usize, usize)> = template.maps.iter().map(|x| x.shape()).collect();
    let basis: Vec<MackeyMorphism<R>> = reduced
        .iter()
        .map(|v| {
            let mut off = 0;
            MackeyMorphism {
                maps: shapes
                    .iter()
                    .map(|&(r, c)| {
                        let x = crate::exactalg::Matrix::from_fn(r, c, |i, j| ring.from_bigint(&v[off + i * c + j]));
                        off += r * c;
                        x
                    })
                    .collect(),
            }
        })
        .collect();
    let rank = basis.len();
    let free: Vec<usize> = (0..shapes.len()).filter(|&s| shapes[s].0 > 0 && m.levels[s].is_free(ring)).collect();
    let all_free = m.is_levelwise_free() && n.is_levelwise_free();
    let unimodular = |f: &MackeyMorphism<R>| free.iter().all(|&s| ring.is_unit(&determinant(ring, &f.maps[s])));

    for &md in opts.moduli.iter().filter(|_| all_free) {
        let points = (md as u128).checked_pow(rank as u32).unwrap_or(u128::MAX);
        if points > opts.max_mod_points as u128 {
            continue;
        }
        if let Some(level) = modular_obstruction(ring, &basis, &free, md) {
            let level_name = match level {
                Some(s) => m.group.orbit_name(s),
                None => "all levels jointly".to_string(),
            };
            return IsoVerdict::NotIsomorphic(NonIsoCertificate::Determinant { modulus: md, level, level_name });
        }
    }

    // lattice points by increasing sup-norm
    let b = opts.bound.max(0);
    let mut tried: u64 = 0;
    for radius in 0..=b {
        let width = (2 * radius + 1) as u64;
        let count = (width as u128).checked_pow(rank as u32).unwrap_or(u128::MAX);
        if count > opts.max_points as u128 {
            break;
        }
        for code in 0..count as u64 {
            let mut c = code;
            let mut on_shell = false;
            let coeffs: Vec<i64> = (0..rank)
                .map(|_| {
                    let x = (c % width) as i64 - radius;
                    c /= width;
                    on_shell |= x.abs() == radius;
                    x
                })
                .collect();
            if !on_shell {
                continue;
            }
            tried += 1;
            let cs: Vec<R::El> = coeffs.iter().map(|&x| ring.from_i64(x)).collect();
            let f = MackeyMorphism::combination(ring, &basis, &cs, &template);
            if unimodular(&f) {
                if let Some(v) = accept(m, n, f) {
                    return v;
                }
            }
        }
    }

    // sparse combinations: few basis vectors with small coefficients
    let mut budget = opts.max_points;
    for support in 1..=rank.min(4) {
        let mut idx: Vec<usize> = (0..support).collect();
        loop {
            let width = (2 * b) as u64;
            let count = width.checked_pow(support as u32).unwrap_or(u64::MAX);
            if budget < count {
                break;
            }
            budget -= count;
            for code in 0..count {
                let mut c = code;
                let mut cs = vec![ring.zero(); rank];
                for &k in &idx {
                    let x = (c % width) as i64;
                    c /= width;
                    // skip zero: -b..-1, 1..b
                    cs[k] = ring.from_i64(if x < b { x - b } else { x - b + 1 });
                }
                tried += 1;
                let f = MackeyMorphism::combination(ring, &basis, &cs, &template);
                if unimodular(&f) {
                    if let Some(v) = accept(m, n, f) {
                        return v;
                    }
                }
            }
            if !next_subset(&mut idx, rank) {
                break;
            }
        }
    }

    if let Some(v) = climb(m, n, &basis, &free, opts, &mut tried) {
        return v;
    }
    IsoVerdict::Inconclusive(format!(
        "no modular obstruction and no unimodular map among {tried} lattice points searched with coefficients up to {b}"
    ))
}

fn next_subset(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    for i in (0..k).rev() {
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Distance from unimodular: bits of `|det|` on free levels, with a large
/// penalty per missing rank.
fn defect<R: Coeff>(ring: &R, f: &MackeyMorphism<R>, free: &[usize]) -> u64 {
    free.iter()
        .map(|&s| {
            let x = &f.maps[s];
            let d = ring.to_integer(&determinant(ring, x)).expect("integral base");
            if d.is_zero() {
                1000 * (x.rows() - crate::exactalg::linalg::rank(ring, x)) as u64
            } else {
                d.abs().bits() - 1
            }
        })
        .sum()
}

/// Seeded local search: move to the neighbour `f ± b_k` with the smallest defect, restarting at local minima.
fn climb<R: Coeff>(
    m: &MackeyFunctor<R>,
    n: &MackeyFunctor<R>,
    basis: &[MackeyMorphism<R>],
    free: &[usize],
    opts: &IsoOptions,
    tried: &mut u64,
) -> Option<IsoVerdict<R>> {
    let ring = &m.base;
    if basis.is_empty() {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let template = MackeyMorphism::zero(m, n);
    let mut evaluations = 0;
    while evaluations < opts.random_trials {
        let cs: Vec<R::El> = basis.iter().map(|_| ring.from_i64(rng.gen_range(-1..=1))).collect();
        let mut f = MackeyMorphism::combination(ring, basis, &cs, &template);
        let mut score = defect(ring, &f, free);
        evaluations += 1;
        loop {
            if score == 0 {
                if let Some(v) = accept(m, n, f.clone()) {
                    return Some(v);
                }
                break;
            }
            let mut best: Option<(u64, MackeyMorphism<R>)> = None;
            for b in basis {
                for sign in [1, -1] {
                    let g = f.add(ring, &b.scale(ring, &ring.from_i64(sign)));
                    let d = defect(ring, &g, free);
                    evaluations += 1;
                    *tried += 1;
                    if d < best.as_ref().map_or(score, |(x, _)| *x) {
                        best = Some((d, g));
                    }
                }
            }
            match best {
                Some((d, g)) => {
                    score = d;
                    f = g;
                }
                None => break,
            }
            if evaluations >= opts.random_trials {
                break;
            }
        }
    }
    None
}

/// `Some(level)` if no point of the lattice mod `md` has unit determinants;
/// the inner option names a level that never reaches a unit by itself.
fn modular_obstruction<R: Coeff>(
    ring: &R,
    basis: &[MackeyMorphism<R>],
    levels: &[usize],
    md: u64,
) -> Option<Option<usize>> {
    let md_big = BigInt::from(md);
    let residues: Vec<Vec<Vec<i64>>> = basis
        .iter()
        .map(|f| {
            levels
                .iter()
                .map(|&s| {
                    f.maps[s]
                        .data()
                        .iter()
                        .map(|e| ring.to_integer(e).unwrap().mod_floor(&md_big).to_i64().unwrap())
                        .collect()
                })
                .collect()
        })
        .collect();
    let rank = basis.len();
    let md_i = md as i64;
    let mut level_hit = vec![false; levels.len()];
    let mut joint = false;
    let total = md.pow(rank as u32);
    for code in 0..total {
        let mut c = code;
        let coeffs: Vec<i64> = (0..rank)
            .map(|_| {
                let x = (c % md) as i64;
                c /= md;
                x
            })
            .collect();
        let mut all = true;
        for (li, &s) in levels.iter().enumerate() {
            let size = basis.first().map(|f| f.maps[s].rows()).unwrap_or(0);
            let mut mat = vec![0i64; size * size];
            for (k, ck) in coeffs.iter().enumerate() {
                if *ck == 0 {
                    continue;
                }
                for (dst, src) in mat.iter_mut().zip(&residues[k][li]) {
                    *dst = (*dst + ck * src) % md_i;
                }
            }
            let d = det_mod(&mut mat, size, md_i);
            let unit = d == 1 % md_i || d == md_i - 1;
            level_hit[li] |= unit;
            all &= unit;
        }
        joint |= all;
        if joint && level_hit.iter().all(|&h| h) {
            return None;
        }
    }
    if rank == 0 && levels.is_empty() {
        return None;
    }
    if let Some(li) = level_hit.iter().position(|&h| !h) {
        return Some(Some(levels[li]));
    }
    (!joint).then_some(None)
}

/// Determinant modulo an arbitrary `md` by Euclidean row reduction.
pub(crate) fn det_mod(a: &mut [i64], n: usize, md: i64) -> i64 {
    let mut det = 1i64;
    for col in 0..n {
        for row in col + 1..n {
            while a[row * n + col] != 0 {
                let q = a[col * n + col] / a[row * n + col];
                for k in col..n {
                    let v = (a[col * n + k] - q * a[row * n + k]).rem_euclid(md);
                    a[col * n + k] = v;
                }
                for k in col..n {
                    a.swap(col * n + k, row * n + k);
                }
                det = (md - det) % md;
            }
        }
        det = det * a[col * n + col] % md;
        if det == 0 {
            return 0;
        }
    }
    det.rem_euclid(md)
}

/// LLL reduction (δ = 3/4) of linearly independent integer vectors.
pub fn lll(mut b: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let k_max = b.len();
    if k_max <= 1 {
        return b;
    }
    let delta = BigRational::new(BigInt::from(3), BigInt::from(4));
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let mut k = 1;
    while k < k_max {
        for j in (0..k).rev() {
            let (mu, _) = gram_schmidt(&b);
            if mu[k][j].abs() > half {
                let r = mu[k][j].round().to_integer();
                let bj = b[j].clone();
                for (x, y) in b[k].iter_mut().zip(&bj) {
                    *x -= &r * y;
                }
            }
        }
        let (mu, norms) = gram_schmidt(&b);
        let rhs = (&delta - &mu[k][k - 1] * &mu[k][k - 1]) * &norms[k - 1];
        if norms[k] >= rhs {
            k += 1;
        } else {
            b.swap(k, k - 1);
            k = (k - 1).max(1);
        }
    }
    b
}

fn gram_schmidt(b: &[Vec<BigInt>]) -> (Vec<Vec<BigRational>>, Vec<BigRational>) {
    let k = b.len();
    let mut bstar: Vec<Vec<BigRational>> = Vec::with_capacity(k);
    let mut mu = vec![vec![BigRational::zero(); k]; k];
    let mut norms: Vec<BigRational> = Vec::with_capacity(k);
    for i in 0..k {
        let row: Vec<BigRational> = b[i].iter().map(|x| BigRational::from_integer(x.clone())).collect();
        let mut v = row.clone();
        for j in 0..i {
            let num: BigRational = row.iter().zip(&bstar[j]).map(|(x, y)| x * y).sum();
            if !norms[j].is_zero() {
                mu[i][j] = num / &norms[j];
            }
            for (vi, sj) in v.iter_mut().zip(&bstar[j]) {
                *vi -= &mu[i][j] * sj;
            }
        }
        norms.push(v.iter().map(|x| x * x).sum());
        bstar.push(v);
    }
    (mu, norms)
}
