mod common;

use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use common::{
    burnside_over, constant_f4_meadow, field, group, random_functor, random_module, random_permutation_action, rng,
    zero_transfer_meadow,
};
use lewis::cyclic::orbit_product;
use lewis::exactalg::linalg::rank;
use lewis::exactalg::{based_ring_check, BasedRing};
use lewis::functors::free_module;
use lewis::green::{
    base_change, base_change_cp, base_change_map, box_product, box_product_cp, box_product_general, burnside_green,
    char_example, check_green, check_green_module, constant_green, fixed_point_module, fp_galois, galois_based_ring,
    green_submodule, level_twisted_ring, twisted_group_ring, GreenFunctor, GreenMap, GreenModule,
};
use lewis::mackey::{
    burnside_mackey, burnside_mackey_over, constant_mackey, fixed_point_mackey, is_isomorphic, twisted_burnside_c5,
    IsoOptions, MackeyFunctor,
};
use lewis::{Coeff, Error, FpModule, GaloisField, Integers, Matrix};

fn iso<R: Coeff>(a: &MackeyFunctor<R>, b: &MackeyFunctor<R>) -> bool {
    is_isomorphic(a, b, &IsoOptions::default()).is_iso()
}

#[test]
fn green_axiom_examples() {
    for p in [2, 3, 5] {
        assert!(check_green(&constant_green(&Integers, group(p, 1))).passed());
    }
    assert!(check_green(&fp_galois(2, 2, 1).unwrap()).passed());
    assert!(check_green(&burnside_green(group(2, 2))).passed());
    for p in [2, 3, 5] {
        for n in 0..=3 {
            assert!(check_green(&burnside_green(group(p, n))).passed());
            assert!(check_green(&constant_green(&field(p), group(p, n))).passed());
        }
    }
}

#[test]
fn broken_reciprocity_is_reported() {
    let f2 = field(2);
    let a = char_example(2).unwrap();
    // top basis (free orbit y, point x) with y^2 = y instead of y^2 = 2y = 0
    let table = |i: usize, j: usize| match (i, j) {
        (1, 1) => vec![0, 1],
        _ => vec![1, 0],
    };
    let top = BasedRing::new(f2.clone(), 2, table, vec![0, 1], vec!["y".into(), "x".into()]).unwrap();
    let bad = GreenFunctor::new(a.mackey.clone(), vec![a.rings[0].clone(), top]).unwrap();
    let report = check_green(&bad);
    assert!(!report.passed());
    assert!(report.mentions("Frobenius reciprocity"), "{report}");
    assert!(!report.mentions("res is multiplicative"), "{report}");
}

#[test]
fn restriction_that_is_not_a_ring_map_is_reported() {
    let f2 = field(2);
    let m = constant_mackey(&f2, &FpModule::free(&f2, 2), group(2, 1));
    // top F2 x F2 on idempotents, bottom F2[t]/t^2, res the identity matrix
    let split = BasedRing::new(
        f2.clone(),
        2,
        |i, j| if i == j { [vec![1, 0], vec![0, 1]][i].clone() } else { vec![0, 0] },
        vec![1, 1],
        vec!["e0".into(), "e1".into()],
    )
    .unwrap();
    let dual = BasedRing::new(
        f2.clone(),
        2,
        |i, j| {
            if i + j == 0 {
                vec![1, 0]
            } else if i + j == 1 {
                vec![0, 1]
            } else {
                vec![0, 0]
            }
        },
        vec![1, 0],
        vec!["1".into(), "t".into()],
    )
    .unwrap();
    let bad = GreenFunctor::new(m, vec![dual, split]).unwrap();
    let report = check_green(&bad);
    assert!(report.mentions("res"), "{report}");
}

/// Elements of a rank 4 ring over F2 forming 2 x 2 matrix units, by exhaustive search.
fn matrix_units(r: &BasedRing<GaloisField>) -> Option<[Vec<u32>; 4]> {
    let elems: Vec<Vec<u32>> = (0..16u32).map(|x| (0..4).map(|i| (x >> i) & 1).collect()).collect();
    let is = |a: &[u32], b: &[u32]| r.eq_elements(a, b);
    let zero = vec![0u32; 4];
    for e11 in &elems {
        if !is(&r.mul(e11, e11), e11) || is(e11, &zero) || is(e11, r.unit()) {
            continue;
        }
        let e22 = r.add(r.unit(), e11);
        for e12 in &elems {
            if !is(&r.mul(e11, e12), e12) || !is(&r.mul(e12, &e22), e12) || is(e12, &zero) {
                continue;
            }
            for e21 in &elems {
                if is(&r.mul(e12, e21), e11) && is(&r.mul(e21, e12), &e22) && is(&r.mul(&e22, e21), e21) {
                    return Some([e11.clone(), e12.clone(), e21.clone(), e22]);
                }
            }
        }
    }
    None
}

#[test]
fn twisted_group_ring_examples() {
    let f2 = field(2);
    let (f2ring, id1) = galois_based_ring(&f2).unwrap();
    let t = twisted_group_ring(&f2ring, 2, 1, &id1).unwrap();
    assert_eq!(t.ring.rank(), 2);
    assert!(based_ring_check(&t.ring, true).passed());
    // (1 + w)^2 = 0
    let one_plus_w = vec![1, 1];
    assert_eq!(t.ring.mul(&one_plus_w, &one_plus_w), vec![0, 0]);

    let f4 = GaloisField::new(2, 2).unwrap();
    let (f4ring, frob) = galois_based_ring(&f4).unwrap();
    let t = twisted_group_ring(&f4ring, 2, 1, &frob).unwrap();
    assert_eq!(t.ring.rank(), 4);
    assert!(t.check().passed());
    assert!(!based_ring_check(&t.ring, true).passed());
    let units = matrix_units(&t.ring).expect("F4_theta[C2] is a matrix ring");
    assert!(r_spans(&t.ring, &units));
    // with the trivial twist the group algebra is commutative and has no matrix units
    let plain = twisted_group_ring(&f4ring, 2, 1, &Matrix::identity(&f2, 2)).unwrap();
    assert!(based_ring_check(&plain.ring, true).passed());

    let f3 = field(3);
    let (f3ring, id) = galois_based_ring(&f3).unwrap();
    let t = twisted_group_ring(&f3ring, 3, 0, &id).unwrap();
    assert_eq!(t.ring.rank(), 1);
    assert!(t.theta_is_trivial());
}

fn r_spans(r: &BasedRing<GaloisField>, units: &[Vec<u32>; 4]) -> bool {
    let f2 = field(2);
    let cols: Vec<Vec<u32>> = units.to_vec();
    rank(&f2, &Matrix::from_columns(&cols, r.rank())) == 4
}

#[test]
fn twisted_group_ring_rejects_bad_theta() {
    let f4 = GaloisField::new(2, 2).unwrap();
    let (f4ring, _) = galois_based_ring(&f4).unwrap();
    let f2 = field(2);
    // swapping 1 and a is additive but does not fix the unit
    let swap = Matrix::from_ints(&f2, &[&[0, 1], &[1, 0]]);
    assert!(twisted_group_ring(&f4ring, 2, 1, &swap).is_err());
    let f8 = GaloisField::new(2, 3).unwrap();
    let (f8ring, frob8) = galois_based_ring(&f8).unwrap();
    // Frobenius of F8 has order 3, not a power of 2
    assert!(twisted_group_ring(&f8ring, 2, 1, &frob8).is_err());
}

#[test]
fn level_twisted_rings() {
    let f2 = field(2);
    let k = constant_green(&f2, group(2, 1));
    let t = level_twisted_ring(&k, 0).unwrap();
    assert_eq!((t.ring.rank(), t.group_order()), (2, 2));
    assert!(t.theta_is_trivial());
    let fp = fp_galois(2, 2, 1).unwrap();
    let t = level_twisted_ring(&fp, 0).unwrap();
    assert_eq!(t.ring.rank(), 4);
    assert!(!t.theta_is_trivial());
    assert!(matrix_units(&t.ring).is_some());
    for r in [&k, &fp] {
        let top = level_twisted_ring(r, 1).unwrap();
        assert_eq!(top.group_order(), 1);
        assert_eq!(top.ring, r.rings[1]);
    }
    let z = constant_green(&Integers, group(2, 1));
    assert!(matches!(level_twisted_ring(&z, 0), Err(Error::Unsupported(_))));
}

/// Small integral functors over `C_p` with level ranks at most 3.
fn random_integral(p: u64, r: &mut ChaCha8Rng) -> MackeyFunctor<Integers> {
    let z = Integers;
    let g = group(p, 1);
    match r.gen_range(0..4) {
        0 => burnside_mackey(g),
        1 => constant_mackey(&z, &FpModule::free(&z, r.gen_range(1..=2)), g),
        2 => constant_mackey(&z, &FpModule::from_orders(vec![BigInt::from(p), BigInt::from(0)]), g),
        _ => {
            let d = r.gen_range(1..=3);
            fixed_point_mackey(&z, &random_permutation_action(&z, g, d, r), g).unwrap()
        }
    }
}

fn small_field_functor(p: u64, r: &mut ChaCha8Rng) -> MackeyFunctor<GaloisField> {
    loop {
        let m = random_functor(p, 1, r);
        if m.dims().iter().all(|&d| d <= 3) {
            return m;
        }
    }
}

#[test]
fn burnside_is_a_unit_for_box_products_over_cp() {
    let mut r = rng(10);
    for i in 0..10 {
        let p = [2, 3][i % 2];
        let m = small_field_functor(p, &mut r);
        let a = burnside_mackey_over(&field(p), group(p, 1));
        let b = box_product_cp(&a, &m).unwrap();
        assert!(iso(&b.functor, &m), "sample {i}");
    }
}

#[test]
fn twisted_burnside_squares_to_burnside() {
    let at = twisted_burnside_c5();
    let b = box_product_cp(&at, &at).unwrap();
    assert!(iso(&b.functor, &burnside_mackey(group(5, 1))));
}

#[test]
fn free_box_products_follow_orbit_products() {
    for (p, n) in [(2, 1), (3, 1), (2, 2), (3, 2)] {
        let a = burnside_over(p, n);
        let free: Vec<MackeyFunctor<GaloisField>> = (0..=n).map(|i| free_module(&a, i).unwrap().mackey).collect();
        for i in 0..=n {
            for j in 0..=n {
                let b = box_product(&free[i], &free[j]).unwrap();
                let mult = orbit_product(group(p, n), i, j).unwrap().mult;
                let parts: Vec<&MackeyFunctor<GaloisField>> =
                    mult.iter().enumerate().flat_map(|(t, &c)| std::iter::repeat_n(&free[t], c as usize)).collect();
                let expect = MackeyFunctor::direct_sum(&parts).unwrap();
                assert_eq!(b.functor.dims(), expect.dims(), "p={p} n={n} {i} {j}");
                if p == 2 || n == 1 {
                    assert!(iso(&b.functor, &expect), "p={p} n={n} {i} {j}");
                }
            }
        }
    }
    // F0 ⊠ F0 ≅ F0^2 over C2
    let a = burnside_over(2, 1);
    let f0 = free_module(&a, 0).unwrap().mackey;
    assert!(iso(&box_product_cp(&f0, &f0).unwrap().functor, &f0.power(2).unwrap()));
}

#[test]
fn general_box_products_over_c4() {
    let mut r = rng(11);
    let f2 = field(2);
    let a = burnside_mackey_over(&f2, group(2, 2));
    for i in 0..5 {
        let m = random_functor(2, 2, &mut r);
        assert!(iso(&box_product_general(&a, &m).unwrap().functor, &m), "sample {i}");
        let zero = MackeyFunctor::zero(group(2, 2), f2.clone());
        assert!(box_product_general(&m, &zero).unwrap().functor.is_zero());
        let other = random_functor(2, 2, &mut r);
        let mn = box_product_general(&m, &other).unwrap().functor;
        let nm = box_product_general(&other, &m).unwrap().functor;
        assert!(iso(&mn, &nm), "sample {i}");
    }
    let z = burnside_mackey(group(2, 2));
    assert!(matches!(box_product_general(&z, &z), Err(Error::Unsupported(_))));
}

#[test]
fn general_box_product_specializes_to_cp() {
    let mut r = rng(12);
    for p in [2, 3] {
        for _ in 0..3 {
            let m = small_field_functor(p, &mut r);
            let n = small_field_functor(p, &mut r);
            let general = box_product_general(&m, &n).unwrap().functor;
            let cp = box_product_cp(&m, &n).unwrap().functor;
            assert!(iso(&general, &cp));
        }
    }
}

#[test]
fn box_products_are_commutative_and_unital() {
    let mut r = rng(13);
    for i in 0..20 {
        match i % 3 {
            2 => {
                let p = [2, 3][(i / 3) % 2];
                let (m, n) = (random_integral(p, &mut r), random_integral(p, &mut r));
                let a = burnside_mackey(group(p, 1));
                assert!(
                    iso(&box_product_cp(&m, &n).unwrap().functor, &box_product_cp(&n, &m).unwrap().functor),
                    "pair {i}"
                );
                assert!(iso(&box_product_cp(&a, &m).unwrap().functor, &m), "pair {i}");
            }
            k => {
                let p = [2, 3][k];
                let (m, n) = (small_field_functor(p, &mut r), small_field_functor(p, &mut r));
                let a = burnside_mackey_over(&field(p), group(p, 1));
                assert!(
                    iso(&box_product_cp(&m, &n).unwrap().functor, &box_product_cp(&n, &m).unwrap().functor),
                    "pair {i}"
                );
                assert!(iso(&box_product_cp(&m, &a).unwrap().functor, &m), "pair {i}");
            }
        }
    }
}

#[test]
fn base_change_along_the_identity_and_of_the_ring() {
    let f2 = field(2);
    let k = constant_green(&f2, group(2, 1));
    let mut r = rng(14);
    for _ in 0..5 {
        let m = random_module(&k, &mut r);
        let (bar, _) = base_change_cp(&k, &k, &GreenMap::identity(&k), &m).unwrap();
        assert!(iso(&bar.mackey, &m.mackey));
    }
    let (l, f) = zero_transfer_meadow();
    assert!(check_green(&l).passed());
    let (bar, _) = base_change_cp(&k, &l, &f, &GreenModule::regular(&k)).unwrap();
    assert!(check_green_module(&bar).passed());
    assert!(iso(&bar.mackey, &l.mackey));
    let bad = GreenMap { maps: vec![Matrix::from_ints(&f2, &[&[0], &[1]]), Matrix::identity(&f2, 1)] };
    assert!(base_change_cp(&k, &l, &bad, &GreenModule::regular(&k)).is_err());
}

/// Dimensions of the base change into the zero-transfer meadow, counted directly:
/// bottom `M_0 ⊗ F_4`, top `M_1 ⊗ F_2 ⊕ Y_M ⊗ V` with `V = F_4 / F_2`.
fn expected_base_change_dims(m: &GreenModule<GaloisField>) -> Vec<usize> {
    let f2 = field(2);
    let mm = &m.mackey;
    let d0 = mm.levels[0].gens();
    let w = mm.weyl[0].sub(&f2, &Matrix::identity(&f2, d0));
    // Y_M: coinvariants modulo the image of restriction
    let killed = rank(&f2, &w.hstack(&mm.res[0]));
    let y = d0 - killed;
    let (u, v) = (1, 1);
    vec![2 * d0, mm.levels[1].gens() * u + y * v]
}

#[test]
fn base_change_dimensions_match_the_direct_count() {
    let f2 = field(2);
    let k = constant_green(&f2, group(2, 1));
    let (l, f) = zero_transfer_meadow();
    let mut r = rng(15);
    for i in 0..15 {
        let m = random_module(&k, &mut r);
        let (bar, _) = base_change_cp(&k, &l, &f, &m).unwrap();
        assert!(check_green_module(&bar).passed(), "sample {i}");
        assert_eq!(bar.dims(), expected_base_change_dims(&m), "sample {i}");
    }
}

/// Checks that base change along `f` keeps a random inclusion injective and
/// sends nonzero modules to nonzero modules.
fn assert_faithfully_flat(l: &GreenFunctor<GaloisField>, f: &GreenMap<GaloisField>, seed: u64) {
    let f2 = field(2);
    let k = constant_green(&f2, group(2, 1));
    let mut r = rng(seed);
    for i in 0..30 {
        let m = random_module(&k, &mut r);
        let spans: Vec<Matrix<u32>> =
            m.dims().iter().map(|&d| Matrix::from_fn(d, 1, |_, _| f2.random(&mut r))).collect();
        let (sub, inc) = green_submodule(&m, spans).unwrap();
        let (bar_m, bp_m) = base_change(&k, l, f, &m).unwrap();
        let (bar_n, bp_n) = base_change(&k, l, f, &sub).unwrap();
        let induced = base_change_map(&bp_n, &bp_m, &inc);
        for s in 0..=1 {
            assert_eq!(rank(&f2, &induced.maps[s]), bar_n.dims()[s], "sample {i} level {s}");
        }
        if !m.mackey.is_zero() {
            assert!(!bar_m.mackey.is_zero(), "sample {i}");
        }
    }
}

#[test]
fn base_change_is_faithfully_flat_when_restriction_is_onto() {
    let k = constant_green(&field(2), group(2, 1));
    assert_faithfully_flat(&k, &GreenMap::identity(&k), 16);
    let (l, f) = constant_f4_meadow();
    assert!(check_green(&l).passed());
    assert_faithfully_flat(&l, &f, 17);
}

/// With `l_1 = F_2 ⊂ l_0 = F_4` and zero transfer, the inclusion of
/// `N = (F_2, 0)` into `k` does not stay injective after base change:
/// the top of `N ⊗ l` is spanned by the class of `1 ⊗ a` with `a ∉ F_2`,
/// and that class dies in `k ⊗ l ≅ l`.
#[test]
fn base_change_into_a_zero_transfer_meadow_is_not_flat() {
    let f2 = field(2);
    let k = constant_green(&f2, group(2, 1));
    let (l, f) = zero_transfer_meadow();
    let m = GreenModule::regular(&k);
    let (sub, inc) = green_submodule(&m, vec![Matrix::from_ints(&f2, &[&[1]]), Matrix::zeros(&f2, 1, 0)]).unwrap();
    assert_eq!(sub.dims(), vec![1, 0]);
    let (_, bp_m) = base_change(&k, &l, &f, &m).unwrap();
    let (bar_n, bp_n) = base_change(&k, &l, &f, &sub).unwrap();
    assert_eq!(bar_n.dims(), vec![2, 1]);
    let induced = base_change_map(&bp_n, &bp_m, &inc);
    assert_eq!(rank(&f2, &induced.maps[0]), 2);
    assert_eq!(rank(&f2, &induced.maps[1]), 0);
}

#[test]
fn fixed_points_of_twisted_modules_are_green_modules() {
    let f4 = GaloisField::new(2, 2).unwrap();
    let (l, frob) = galois_based_ring(&f4).unwrap();
    // V = L itself with the Frobenius
    let mu: Vec<Matrix<u32>> = (0..2).map(|i| l.left_mul_matrix(&l.basis(i))).collect();
    let m = fixed_point_module(&l, &frob, &mu, &frob, group(2, 1)).unwrap();
    assert!(check_green_module(&m).passed());
    // V = L_θ[C2] acting on itself by left multiplication
    let t = twisted_group_ring(&l, 2, 1, &frob).unwrap();
    let mu: Vec<Matrix<u32>> = (0..2).map(|i| t.ring.left_mul_matrix(&t.ring.basis(i))).collect();
    let w = t.ring.left_mul_matrix(&t.ring.basis(2));
    let m = fixed_point_module(&l, &frob, &mu, &w, group(2, 1)).unwrap();
    assert!(check_green_module(&m).passed());
    assert_eq!(m.dims(), vec![4, 2]);
    // a linear but not semilinear action is rejected
    let f2 = field(2);
    assert!(fixed_point_module(&l, &frob, &mu, &Matrix::identity(&f2, 4), group(2, 1)).is_err());
}
