#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use lewis::cyclic::CyclicGroup;
use lewis::exactalg::BasedRing;
use lewis::green::{
    burnside_green_over, galois_based_ring, green_submodule, module_hom_basis, GreenFunctor, GreenMap, GreenModule,
};
use lewis::kzero::free_sum;
use lewis::mackey::{cokernel_functor, fixed_point_mackey, hom_basis, invert, MackeyFunctor, MackeyMorphism};
use lewis::{Coeff, FpModule, GaloisField, Matrix};

pub fn group(p: u64, n: usize) -> CyclicGroup {
    CyclicGroup::new(p, n).unwrap()
}

pub fn field(p: u64) -> GaloisField {
    GaloisField::prime(p).unwrap()
}

pub fn burnside_over(p: u64, n: usize) -> GreenFunctor<GaloisField> {
    burnside_green_over(&field(p), group(p, n))
}

/// A random element of a hom space given by a basis.
pub fn random_map<R: Coeff>(
    base: &R,
    m: &MackeyFunctor<R>,
    n: &MackeyFunctor<R>,
    rng: &mut ChaCha8Rng,
) -> MackeyMorphism<R> {
    let basis = hom_basis(m, n).unwrap();
    let c: Vec<R::El> = basis.iter().map(|_| base.random(rng)).collect();
    MackeyMorphism::combination(base, &basis, &c, &MackeyMorphism::zero(m, n))
}

fn random_summands(rng: &mut ChaCha8Rng, n: usize, max: usize) -> Vec<usize> {
    let k = rng.gen_range(0..=max);
    (0..k).map(|_| rng.gen_range(0..=n)).collect()
}

/// A random Mackey functor over `F_p`: the cokernel of a random map between
/// sums of free functors, or a fixed-point functor of a random permutation action.
pub fn random_functor(p: u64, n: usize, rng: &mut ChaCha8Rng) -> MackeyFunctor<GaloisField> {
    let f = field(p);
    let g = group(p, n);
    if rng.gen_bool(0.25) {
        let d = rng.gen_range(1..=4);
        let rho = random_permutation_action(&f, g, d, rng);
        return fixed_point_mackey(&f, &rho, g).unwrap();
    }
    let a = burnside_over(p, n);
    let src = free_sum(&a, &random_summands(rng, n, 2)).unwrap().mackey;
    let dst = free_sum(&a, &random_summands(rng, n, 2).into_iter().chain([rng.gen_range(0..=n)]).collect::<Vec<_>>())
        .unwrap()
        .mackey;
    let h = random_map(&f, &src, &dst, rng);
    cokernel_functor(&dst, &h).unwrap().0
}

/// A `d × d` permutation matrix for a product of cycles of `p`-power length.
pub fn random_permutation_action<R: Coeff>(base: &R, g: CyclicGroup, d: usize, rng: &mut ChaCha8Rng) -> Matrix<R::El> {
    let mut perm: Vec<usize> = (0..d).collect();
    let mut start = 0;
    while start < d {
        let mut len = g.pow(rng.gen_range(0..=g.n)) as usize;
        while start + len > d {
            len /= g.p as usize;
        }
        for i in 0..len {
            perm[start + i] = start + (i + 1) % len;
        }
        start += len;
    }
    Matrix::from_fn(d, d, |i, j| if perm[j] == i { base.one() } else { base.zero() })
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random `k`-module: the image of a random module map between sums of free modules.
pub fn random_module<R: Coeff>(k: &GreenFunctor<R>, rng: &mut ChaCha8Rng) -> GreenModule<R> {
    let n = k.n();
    let src =
        free_sum(k, &random_summands(rng, n, 2).into_iter().chain([rng.gen_range(0..=n)]).collect::<Vec<_>>()).unwrap();
    let dst =
        free_sum(k, &random_summands(rng, n, 2).into_iter().chain([rng.gen_range(0..=n)]).collect::<Vec<_>>()).unwrap();
    let base = k.base();
    let basis = module_hom_basis(&src, &dst).unwrap();
    let c: Vec<R::El> = basis.iter().map(|_| base.random(rng)).collect();
    let f = MackeyMorphism::combination(base, &basis, &c, &MackeyMorphism::zero(&src.mackey, &dst.mackey));
    green_submodule(&dst, f.maps).unwrap().0
}

/// A module isomorphism `a → b`, found among random combinations of module maps.
pub fn module_iso<R: Coeff>(a: &GreenModule<R>, b: &GreenModule<R>, r: &mut ChaCha8Rng) -> Option<MackeyMorphism<R>> {
    let base = a.base();
    let basis = module_hom_basis(a, b).unwrap();
    let zero = MackeyMorphism::zero(&a.mackey, &b.mackey);
    (0..500).find_map(|_| {
        let c: Vec<R::El> = basis.iter().map(|_| base.random(r)).collect();
        let f = MackeyMorphism::combination(base, &basis, &c, &zero);
        invert(&a.mackey, &b.mackey, &f).map(|_| f)
    })
}

/// `l` over `C_2`: `l_1 = F_2 ⊂ l_0 = F_4`, trivial action, zero transfer.
pub fn zero_transfer_meadow() -> (GreenFunctor<GaloisField>, GreenMap<GaloisField>) {
    let f2 = field(2);
    let f4 = GaloisField::new(2, 2).unwrap();
    let (bottom, _) = galois_based_ring(&f4).unwrap();
    let top = BasedRing::new(f2.clone(), 1, |_, _| vec![1], vec![1], vec!["1".into()]).unwrap();
    let mackey = MackeyFunctor::new(
        group(2, 1),
        f2.clone(),
        vec![FpModule::free(&f2, 2), FpModule::free(&f2, 1)],
        vec![Matrix::from_ints(&f2, &[&[1], &[0]])],
        vec![Matrix::from_ints(&f2, &[&[0, 0]])],
        vec![Matrix::identity(&f2, 2), Matrix::identity(&f2, 1)],
    )
    .unwrap();
    let l = GreenFunctor::new(mackey, vec![bottom, top]).unwrap();
    let f = GreenMap { maps: vec![Matrix::from_ints(&f2, &[&[1], &[0]]), Matrix::identity(&f2, 1)] };
    (l, f)
}

/// `l` over `C_2` with `l_0 = l_1 = F_4`, identity restriction and zero transfer.
/// Restriction is onto, so the flatness argument applies.
pub fn constant_f4_meadow() -> (GreenFunctor<GaloisField>, GreenMap<GaloisField>) {
    let f2 = field(2);
    let f4 = GaloisField::new(2, 2).unwrap();
    let (ring, _) = galois_based_ring(&f4).unwrap();
    let mackey = MackeyFunctor::new(
        group(2, 1),
        f2.clone(),
        vec![FpModule::free(&f2, 2), FpModule::free(&f2, 2)],
        vec![Matrix::identity(&f2, 2)],
        vec![Matrix::zeros(&f2, 2, 2)],
        vec![Matrix::identity(&f2, 2), Matrix::identity(&f2, 2)],
    )
    .unwrap();
    let l = GreenFunctor::new(mackey, vec![ring.clone(), ring]).unwrap();
    let unit = Matrix::from_ints(&f2, &[&[1], &[0]]);
    (l, GreenMap { maps: vec![unit.clone(), unit] })
}
