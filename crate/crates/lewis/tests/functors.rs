mod common;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use common::{field, group, module_iso, rng};
use lewis::functors::{
    brutal_green, brutal_truncation, e1_page, free_generator, free_module, geometric_fixed_points,
    geometric_fixed_points_iter, induce_mackey, phi_ring, restrict_green, restrict_mackey, tau_geq_1, tau_green,
    tau_module, yoneda_map,
};
use lewis::green::{
    burnside_green, burnside_green_over, char_example, check_green, check_green_module, constant_green, fp_galois,
    green_submodule, module_hom_basis, GreenFunctor, GreenModule,
};
use lewis::kzero::free_sum;
use lewis::mackey::{
    burnside_mackey, check_axioms, check_morphism, constant_mackey, is_isomorphic, IsoOptions, IsoVerdict,
    MackeyFunctor, MackeyMorphism,
};
use lewis::{Coeff, Error, FpModule, GaloisField, Integers, Matrix};

fn iso<R: Coeff>(a: &MackeyFunctor<R>, b: &MackeyFunctor<R>) -> bool {
    is_isomorphic(a, b, &IsoOptions::default()).is_iso()
}

/// Field-based Green functors over `C_{p^n}` used across the properties.
fn field_meadows(p: u64, n: usize) -> Vec<GreenFunctor<GaloisField>> {
    let mut out = vec![constant_green(&field(p), group(p, n))];
    if n >= 1 {
        out.push(fp_galois(p, p as u32, n).unwrap());
    }
    out
}

/// `F_i(G/C_{p^s})` from the levels of `R` alone.
fn expected_free_dims(levels: &[usize], p: u64, n: usize, i: usize) -> Vec<usize> {
    (0..=n)
        .map(|s| {
            if s >= i {
                levels[i] * p.pow((n - s) as u32) as usize
            } else {
                levels[s] * p.pow((n - i) as u32) as usize
            }
        })
        .collect()
}

#[test]
fn restriction_examples() {
    let g = group(2, 2);
    let a4 = burnside_mackey(g);
    assert_eq!(restrict_mackey(&a4, 2).unwrap(), a4);
    let a2 = restrict_mackey(&a4, 1).unwrap();
    assert!(check_axioms(&a2).passed());
    assert_eq!(a2.dims(), vec![1, 2]);
    assert!(iso(&a2, &burnside_mackey(group(2, 1))));
    let z = Integers;
    let zc = |n| constant_mackey(&z, &FpModule::free(&z, 1), group(3, n));
    assert!(iso(&restrict_mackey(&zc(3), 1).unwrap(), &zc(1)));
    assert!(matches!(restrict_mackey(&a4, 3), Err(Error::LevelOutOfRange { .. })));
}

#[test]
fn restricted_weyl_actions_are_powers() {
    let k = fp_galois(2, 2, 2).unwrap();
    let res = restrict_green(&k, 1).unwrap();
    assert!(check_green(&res).passed());
    let f2 = field(2);
    // the generator of C_2 ⊂ C_4 is the square of the generator of C_4, and squares of the Frobenius are trivial
    assert!(res.mackey.weyl[0].is_identity(&f2));
    assert_eq!(res.mackey.weyl[0], k.mackey.weyl_pow(0, 2));
}

#[test]
fn induction_examples() {
    let f2 = field(2);
    for p in [2, 3] {
        let trivial = constant_mackey(&f2, &FpModule::free(&f2, 1), group(p, 0));
        let ind = induce_mackey(&trivial, 1).unwrap();
        assert!(check_axioms(&ind).passed());
        assert_eq!(ind.dims(), vec![p as usize, 1]);
        let ones = |r, c| Matrix::from_fn(r, c, |_, _| 1u32);
        assert_eq!(ind.tr[0], ones(1, p as usize), "transfer sums the copies");
        assert_eq!(ind.res[0], ones(p as usize, 1), "restriction is the diagonal");
        // the generator permutes the copies cyclically
        let w = &ind.weyl[0];
        assert!(!w.is_identity(&f2));
        assert!(w.pow(&f2, p).is_identity(&f2));
    }
    let a = burnside_mackey(group(3, 2));
    assert_eq!(induce_mackey(&a, 2).unwrap(), a);
    assert!(induce_mackey(&a, 1).is_err());
}

#[test]
fn induce_then_restrict_gives_copies() {
    let mut r = rng(20);
    for (p, n, m) in [(2, 1, 0), (2, 2, 1), (2, 2, 0), (3, 1, 0), (3, 2, 1)] {
        for _ in 0..3 {
            let small = common::random_functor(p, m, &mut r);
            let back = restrict_mackey(&induce_mackey(&small, n).unwrap(), m).unwrap();
            let copies = MackeyFunctor::power(&small, (p as usize).pow((n - m) as u32)).unwrap();
            assert!(iso(&back, &copies), "p={p} n={n} m={m}");
        }
    }
}

#[test]
fn free_module_examples() {
    let f2 = field(2);
    let k = constant_green(&f2, group(2, 1));
    // F_0 = Ind_e Res_e: two copies at the bottom, one at the top
    assert_eq!(free_module(&k, 0).unwrap().dims(), vec![2, 1]);
    let fk = free_module(&k, 1).unwrap();
    assert!(iso(&fk.mackey, &k.mackey));
    // F_4 over C_4 with stabilizer C_2: levels (2, 2, 1) over F_2
    let l = fp_galois(2, 2, 2).unwrap();
    assert_eq!(l.dims(), vec![2, 2, 1]);
    assert_eq!(free_module(&l, 1).unwrap().dims(), vec![4, 4, 2]);
    assert!(matches!(free_module(&k, 2), Err(Error::LevelOutOfRange { .. })));
}

#[test]
fn free_module_levels_follow_the_formula() {
    for p in [2, 3] {
        for n in 0..=3usize {
            if p == 3 && n == 3 {
                continue;
            }
            for k in field_meadows(p, n) {
                for i in 0..=n {
                    let f = free_module(&k, i).unwrap();
                    assert_eq!(f.dims(), expected_free_dims(&k.dims(), p, n, i), "p={p} n={n} i={i}");
                    assert!(check_green_module(&f).passed(), "p={p} n={n} i={i}");
                }
            }
            let z = constant_green(&Integers, group(p, n));
            for i in 0..=n {
                let f = free_module(&z, i).unwrap();
                assert!(f.mackey.is_levelwise_free());
                assert_eq!(f.dims(), expected_free_dims(&z.dims(), p, n, i), "Z p={p} n={n} i={i}");
            }
        }
    }
    // p = 3, n = 3 only for the constant field functor
    let k = constant_green(&field(3), group(3, 3));
    for i in 0..=3 {
        assert_eq!(free_module(&k, i).unwrap().dims(), expected_free_dims(&k.dims(), 3, 3, i));
    }
}

#[test]
fn free_modules_represent_evaluation() {
    let mut r = rng(21);
    for (p, n) in [(2, 1), (2, 2), (3, 1)] {
        for k in field_meadows(p, n) {
            for _ in 0..3 {
                let m = common::random_module(&k, &mut r);
                for i in 0..=n {
                    let f = free_module(&k, i).unwrap();
                    let homs = module_hom_basis(&f, &m).unwrap();
                    assert_eq!(homs.len(), m.dims()[i], "p={p} n={n} i={i}");
                }
            }
        }
    }
}

#[test]
fn yoneda_maps_send_the_generator() {
    let mut r = rng(22);
    let k = fp_galois(2, 2, 1).unwrap();
    let base = k.base().clone();
    let m = common::random_module(&k, &mut r);
    for i in 0..=1 {
        let x: Vec<u32> = (0..m.dims()[i]).map(|_| base.random(&mut r)).collect();
        let f = yoneda_map(&m, i, &x).unwrap();
        let fi = free_module(&k, i).unwrap();
        assert!(check_morphism(&fi.mackey, &m.mackey, &f).passed());
        assert_eq!(f.maps[i].apply(&base, &free_generator(&fi, i)), x);
    }
}

#[test]
fn tau_examples() {
    let z = Integers;
    let zc = |n| constant_mackey(&z, &FpModule::free(&z, 1), group(2, n));
    assert!(iso(&tau_geq_1(&zc(3)).unwrap(), &zc(2)));
    let t = tau_geq_1(&burnside_mackey(group(2, 2))).unwrap();
    assert!(check_axioms(&t).passed());
    assert_eq!(t.dims(), vec![2, 3]);
    assert!(matches!(tau_geq_1(&zc(0)), Err(Error::Invalid(_))));
    let l = fp_galois(2, 2, 2).unwrap();
    assert!(check_green(&tau_green(&l).unwrap()).passed());
}

#[test]
fn tau_preserves_free_modules() {
    let mut r = rng(23);
    for p in [2, 3] {
        for n in 1..=3usize {
            let mut rings = vec![constant_green(&field(p), group(p, n))];
            if n <= 2 {
                rings.push(burnside_green_over(&field(p), group(p, n)));
                rings.push(fp_galois(p, p as u32, n).unwrap());
            }
            for k in rings {
                let tk = tau_green(&k).unwrap();
                for i in 1..=n {
                    let lhs = tau_module(&free_module(&k, i).unwrap()).unwrap();
                    let rhs = free_module(&tk, i - 1).unwrap();
                    let w = module_iso(&lhs, &rhs, &mut r);
                    assert!(w.is_some(), "p={p} n={n} i={i}");
                    assert!(check_morphism(&lhs.mackey, &rhs.mackey, &w.unwrap()).passed());
                }
            }
        }
    }
}

#[test]
fn brutal_truncation_examples() {
    let f2 = field(2);
    let zero = MackeyFunctor::zero(group(2, 1), f2.clone());
    assert!(brutal_truncation(&zero).unwrap().is_zero());
    let k = constant_mackey(&f2, &FpModule::free(&f2, 1), group(2, 1));
    let b = brutal_truncation(&k).unwrap();
    assert_eq!(b.dims(), vec![0, 1]);
    assert!(check_axioms(&b).passed());
    for (p, n) in [(2, 1), (2, 2), (3, 1), (3, 2)] {
        let a = brutal_green(&burnside_green(group(p, n))).unwrap();
        assert!(check_green(&a).passed(), "p={p} n={n}");
        assert_eq!(a.mackey.levels[0].gens(), 0);
    }
}

#[test]
fn geometric_fixed_points_examples() {
    let f2 = field(2);
    let k = constant_mackey(&f2, &FpModule::free(&f2, 1), group(2, 1));
    assert_eq!(geometric_fixed_points(&k).unwrap().dims(), vec![1]);
    let z = Integers;
    for p in [2, 3, 5] {
        let zc = constant_mackey(&z, &FpModule::free(&z, 1), group(p, 1));
        let phi = geometric_fixed_points(&zc).unwrap();
        assert!(phi.levels[0].isomorphic(&z, &FpModule::from_orders(vec![p.into()])), "p={p}");
    }
    let l = fp_galois(2, 2, 1).unwrap();
    assert!(geometric_fixed_points(&l.mackey).unwrap().is_zero());
}

#[test]
fn geometric_fixed_points_of_burnside_drop_one_group() {
    for (p, n) in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2)] {
        let phi = geometric_fixed_points(&burnside_mackey(group(p, n))).unwrap();
        assert!(check_axioms(&phi).passed());
        let smaller = burnside_mackey(group(p, n - 1));
        match is_isomorphic(&phi, &smaller, &IsoOptions::default()) {
            IsoVerdict::Isomorphic { witness, .. } => assert!(check_morphism(&phi, &smaller, &witness).passed()),
            other => panic!("p={p} n={n}: {other:?}"),
        }
    }
    let a = burnside_mackey(group(2, 3));
    assert!(iso(&geometric_fixed_points_iter(&a, 2).unwrap(), &burnside_mackey(group(2, 1))));
}

#[test]
fn phi_ring_examples() {
    let z = constant_green(&Integers, group(3, 1));
    assert_eq!(phi_ring(&z, 0).unwrap().ring, z.rings[0]);
    assert_eq!(phi_ring(&z, 1).unwrap().name(), "F3");
    let k = constant_green(&field(2), group(2, 1));
    assert_eq!(phi_ring(&k, 1).unwrap().name(), "F2");
    let l = fp_galois(2, 2, 1).unwrap();
    let bottom = phi_ring(&l, 0).unwrap();
    assert_eq!((bottom.name(), bottom.weyl_order), ("F4".to_string(), 2));
    assert!(phi_ring(&l, 1).unwrap().is_zero());
}

#[test]
fn e1_page_examples() {
    let k = constant_green(&field(2), group(2, 1));
    let page = e1_page(&k).unwrap();
    assert_eq!(page.rings(), vec!["F2[C2]", "F2"]);
    assert!(page.transfers_zero);
    assert_eq!(page.section_exists, Some(true));
    assert!(page.entries[1].twisted.as_ref().unwrap().group_order() == 1);

    let a = burnside_green(group(3, 1));
    let page = e1_page(&a).unwrap();
    assert_eq!(page.rings(), vec!["Z[C3]", "Z"]);
    assert_eq!(page.section_exists, Some(true));
    assert!(!page.transfers_zero && !page.transfers_surjective);

    let l = fp_galois(2, 2, 1).unwrap();
    let page = e1_page(&l).unwrap();
    assert_eq!(page.rings(), vec!["F4_theta[C2]"]);
    assert!(page.transfers_surjective);
}

#[test]
fn zero_transfers_give_a_section() {
    let mut functors: Vec<GreenFunctor<GaloisField>> = Vec::new();
    for (p, n) in [(2, 1), (2, 2), (3, 1), (3, 2), (5, 1)] {
        functors.extend(field_meadows(p, n));
        functors.push(burnside_green_over(&field(p), group(p, n)));
        functors.push(brutal_green(&burnside_green_over(&field(p), group(p, n))).unwrap());
    }
    functors.push(char_example(2).unwrap());
    functors.push(char_example(3).unwrap());
    let mut zero = 0;
    for r in &functors {
        let page = e1_page(r).unwrap();
        if page.transfers_zero {
            zero += 1;
            assert_eq!(page.section_exists, Some(true));
            let t = tau_green(r).unwrap();
            let section = page.section.as_ref().expect("identity section");
            assert!(check_morphism(&t.mackey, &t.mackey, section).passed());
        }
        if let (Some(true), Some(s)) = (page.section_exists, &page.section) {
            let t = tau_green(r).unwrap();
            assert_eq!(s.maps.len(), t.n() + 1);
        }
    }
    assert!(zero >= 5);
}

/// A random module generated in levels `≥ 1`: the image of a map between free modules `F_i`, `i ≥ 1`.
fn module_above_bottom<R: Coeff>(k: &GreenFunctor<R>, r: &mut ChaCha8Rng) -> GreenModule<R> {
    let n = k.n();
    let pick = |r: &mut ChaCha8Rng| -> Vec<usize> { (0..r.gen_range(1..=2)).map(|_| r.gen_range(1..=n)).collect() };
    let src = free_sum(k, &pick(r)).unwrap();
    let dst = free_sum(k, &pick(r)).unwrap();
    let base = k.base();
    let basis = module_hom_basis(&src, &dst).unwrap();
    let c: Vec<R::El> = basis.iter().map(|_| base.random(r)).collect();
    let f = MackeyMorphism::combination(base, &basis, &c, &MackeyMorphism::zero(&src.mackey, &dst.mackey));
    green_submodule(&dst, f.maps).unwrap().0
}

#[test]
fn tau_is_fully_faithful_on_modules_generated_above_the_bottom() {
    let mut r = rng(24);
    let rings = [
        constant_green(&field(2), group(2, 1)),
        constant_green(&field(2), group(2, 2)),
        fp_galois(2, 2, 2).unwrap(),
        constant_green(&field(3), group(3, 1)),
    ];
    for i in 0..20 {
        let k = &rings[i % rings.len()];
        let (m, n) = (module_above_bottom(k, &mut r), module_above_bottom(k, &mut r));
        let here = module_hom_basis(&m, &n).unwrap().len();
        let (tm, tn) = (tau_module(&m).unwrap(), tau_module(&n).unwrap());
        let there = module_hom_basis(&tm, &tn).unwrap().len();
        assert_eq!(here, there, "pair {i}");
    }
}
