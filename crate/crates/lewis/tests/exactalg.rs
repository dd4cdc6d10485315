use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use lewis::cyclic::{burnside_ring, CyclicGroup};
use lewis::exactalg::linalg::{determinant, rank};
use lewis::exactalg::{
    based_ring_check, default_modulus, galois_trace, gf_make, is_prime, module_subquotient, smith_normal_form,
    BasedRing, Coeff, FpModule, GaloisField, Integers, Matrix,
};
use lewis::Error;

fn z(rows: &[&[i64]]) -> Matrix<BigInt> {
    Matrix::from_ints(&Integers, rows)
}

/// Every `(p, k)` with `p^k ≤ 64`.
fn small_fields() -> Vec<GaloisField> {
    let mut out = Vec::new();
    for p in (2u64..=61).filter(|&p| is_prime(p)) {
        let mut k = 1;
        while p.pow(k) <= 64 {
            out.push(GaloisField::new(p, k).unwrap());
            k += 1;
        }
    }
    out
}

#[test]
fn prime_field_f2() {
    let f = gf_make(2, 1, &[0, 1]).unwrap();
    assert_eq!(f.order(), 2);
    assert!(f.is_zero(&f.add(&f.one(), &f.one())));
}

#[test]
fn f4_generator_satisfies_its_modulus() {
    let f = gf_make(2, 2, &[1, 1, 1]).unwrap();
    let g = f.generator();
    assert_eq!(f.mul(&g, &g), f.add(&g, &f.one()));
}

#[test]
fn f9_frobenius_negates_a_square_root_of_minus_one() {
    let f = gf_make(3, 2, &[1, 0, 1]).unwrap();
    let g = f.generator();
    assert_eq!(f.mul(&g, &g), f.neg(&f.one()));
    // g^3 by repeated multiplication
    let cube = f.mul(&f.mul(&g, &g), &g);
    assert_eq!(f.frobenius(g), cube);
    assert_eq!(cube, f.neg(&g));
}

#[test]
fn reducible_modulus_is_rejected_with_a_factor() {
    // x^2 + 1 = (x + 1)^2 over F2
    match gf_make(2, 2, &[1, 0, 1]) {
        Err(Error::ReducibleModulus { factor }) => assert_eq!(factor, "x+1"),
        other => panic!("expected a reducible modulus error, got {other:?}"),
    }
    assert!(matches!(gf_make(3, 2, &[2, 0, 1]), Err(Error::ReducibleModulus { .. })));
    assert!(matches!(gf_make(4, 1, &[0, 1]), Err(Error::NotPrime(4))));
    assert!(gf_make(2, 2, &[1, 1, 0]).is_err());
}

#[test]
fn default_moduli_are_irreducible() {
    for f in small_fields() {
        let m = default_modulus(f.p(), f.degree());
        assert_eq!(m.len(), f.degree() as usize + 1);
        assert!(gf_make(f.p() as u64, f.degree(), &m).is_ok());
    }
}

#[test]
fn field_axioms_exhaustively() {
    for f in small_fields() {
        let q = f.order();
        for a in 0..q {
            if a != 0 {
                let inv = f.inverse(a).unwrap();
                assert!(f.is_one(&f.mul(&a, &inv)), "{f:?} {a}");
            }
            for b in 0..q {
                assert_eq!(f.mul(&a, &b), f.mul(&b, &a));
                for c in 0..q {
                    let lhs = f.mul(&a, &f.add(&b, &c));
                    let rhs = f.add(&f.mul(&a, &b), &f.mul(&a, &c));
                    assert_eq!(lhs, rhs, "{f:?} {a} {b} {c}");
                }
            }
        }
    }
}

#[test]
fn frobenius_has_order_k() {
    for f in small_fields() {
        let k = f.degree();
        for a in 0..f.order() {
            assert_eq!(f.frobenius_power(a, k), a);
            assert_eq!(f.pow(&a, (f.p() as u64).pow(k)), a);
        }
        if k > 1 {
            let g = f.generator();
            assert!((1..k).all(|i| f.frobenius_power(g, i) != g), "{f:?}");
        }
    }
}

#[test]
fn trace_examples() {
    let f4 = gf_make(2, 2, &[1, 1, 1]).unwrap();
    let g = f4.generator();
    // g + g^2 summed directly over the Frobenius orbit
    let direct = f4.add(&g, &f4.mul(&g, &g));
    assert_eq!(galois_trace(&f4, g, 1).unwrap(), direct);
    assert!(f4.is_one(&direct));
    assert_eq!(galois_trace(&f4, 1, 1).unwrap(), 0);
    let f9 = GaloisField::new(3, 2).unwrap();
    assert_eq!(galois_trace(&f9, 1, 1).unwrap(), f9.from_i64(2));
    assert!(galois_trace(&f9, 1, 3).is_err());
}

#[test]
fn trace_lands_in_the_subfield() {
    for f in small_fields() {
        let k = f.degree();
        for sub in (1..=k).filter(|d| k % d == 0) {
            for a in 0..f.order() {
                let t = galois_trace(&f, a, sub).unwrap();
                assert_eq!(f.frobenius_power(t, sub), t);
            }
        }
    }
}

fn check_smith(a: &Matrix<BigInt>) {
    let zz = Integers;
    let s = smith_normal_form(&zz, a);
    assert_eq!(s.u.mul(&zz, a).mul(&zz, &s.v), s.d);
    assert!(determinant(&zz, &s.u).abs().is_one());
    assert!(determinant(&zz, &s.v).abs().is_one());
    assert!(s.u.mul(&zz, &s.u_inv).is_identity(&zz));
    assert!(s.v.mul(&zz, &s.v_inv).is_identity(&zz));
    for i in 0..s.d.rows() {
        for j in 0..s.d.cols() {
            if i != j {
                assert!(s.d.get(i, j).is_zero());
            }
        }
    }
    let diag = s.diagonal();
    for w in diag.windows(2) {
        assert!(zz.divides(&w[0], &w[1]), "{diag:?}");
    }
    assert!(diag.iter().all(|d| !d.is_negative()));
    assert_eq!(s.rank, diag.iter().filter(|d| !d.is_zero()).count());
}

#[test]
fn smith_examples() {
    let s = smith_normal_form(&Integers, &z(&[&[2, 0], &[0, 3]]));
    assert_eq!(s.diagonal(), vec![BigInt::from(1), BigInt::from(6)]);
    let zero = Matrix::zeros(&Integers, 2, 3);
    let s = smith_normal_form(&Integers, &zero);
    assert!(s.d.is_zero(&Integers));
    assert!(s.u.is_identity(&Integers) && s.v.is_identity(&Integers));
    let s = smith_normal_form(&Integers, &z(&[&[1]]));
    assert_eq!(s.d, z(&[&[1]]));
    check_smith(&z(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]));
}

#[test]
fn smith_is_deterministic() {
    let a = z(&[&[4, 6, 0], &[2, -2, 8]]);
    let s1 = smith_normal_form(&Integers, &a);
    let s2 = smith_normal_form(&Integers, &a);
    assert_eq!((s1.u, s1.d, s1.v), (s2.u, s2.d, s2.v));
}

fn int_matrix() -> impl Strategy<Value = Matrix<BigInt>> {
    (1usize..=6, 1usize..=6).prop_flat_map(|(r, c)| {
        proptest::collection::vec(-9i64..=9, r * c)
            .prop_map(move |v| Matrix::from_vec(r, c, v.into_iter().map(BigInt::from).collect()))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]
    #[test]
    fn smith_round_trip(a in int_matrix()) {
        check_smith(&a);
    }
}

#[test]
fn subquotient_examples() {
    let zz = Integers;
    let m = FpModule::free(&zz, 2);
    let (sub, quo) = module_subquotient(&zz, &m, &z(&[&[2], &[0]])).unwrap();
    assert_eq!(sub.module.gens(), 1);
    assert!(quo.module.isomorphic(&zz, &FpModule::from_orders(vec![BigInt::from(2), BigInt::zero()])));
    let (sub, quo) = module_subquotient(&zz, &m, &Matrix::zeros(&zz, 2, 0)).unwrap();
    assert!(sub.module.is_trivial());
    assert!(quo.module.isomorphic(&zz, &m));
    let f2 = GaloisField::prime(2).unwrap();
    let v = FpModule::free(&f2, 3);
    let span = Matrix::from_ints(&f2, &[&[1], &[1], &[0]]);
    let (sub, quo) = module_subquotient(&f2, &v, &span).unwrap();
    assert_eq!((sub.module.gens(), quo.module.gens()), (1, 2));
    assert!(matches!(module_subquotient(&zz, &m, &Matrix::zeros(&zz, 3, 1)), Err(Error::Dimension(_))));
}

fn field_span() -> impl Strategy<Value = (u64, usize, Vec<i64>, usize)> {
    (prop_oneof![Just(2u64), Just(3), Just(5)], 1usize..=5, 0usize..=4)
        .prop_flat_map(|(p, d, k)| (Just(p), Just(d), proptest::collection::vec(0i64..5, d * k), Just(k)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]
    #[test]
    fn rank_nullity_over_fields((p, d, entries, k) in field_span()) {
        let f = GaloisField::prime(p).unwrap();
        let span = Matrix::from_vec(d, k, entries.iter().map(|&e| f.from_i64(e)).collect());
        let (sub, quo) = module_subquotient(&f, &FpModule::free(&f, d), &span).unwrap();
        prop_assert_eq!(sub.module.gens() + quo.module.gens(), d);
        prop_assert_eq!(sub.module.gens(), rank(&f, &span));
    }

    #[test]
    fn quotient_invariants_match_stacked_smith(orders in proptest::collection::vec(0i64..6, 1..4), span in proptest::collection::vec(-6i64..=6, 0..12)) {
        let zz = Integers;
        let d = orders.len();
        let k = span.len() / d;
        let orders: Vec<BigInt> = orders.into_iter().filter(|&o| o != 1).map(BigInt::from).collect();
        let d = orders.len();
        prop_assume!(d > 0);
        let m = FpModule::from_orders(orders);
        let s = Matrix::from_vec(d, k, span[..d * k].iter().map(|&e| BigInt::from(e)).collect());
        let (_, quo) = module_subquotient(&zz, &m, &s).unwrap();
        // oracle: Smith form of [relations | span]
        let stacked = m.relation_matrix(&zz).hstack(&s);
        let smith = smith_normal_form(&zz, &stacked);
        let mut expect: Vec<BigInt> = (0..d).map(|i| smith.diagonal().get(i).cloned().unwrap_or_default()).filter(|x| !x.is_one()).collect();
        let mut got: Vec<BigInt> = quo.module.orders().to_vec();
        expect.sort();
        got.sort();
        prop_assert_eq!(got, expect);
    }
}

#[test]
fn based_ring_checks() {
    let zz = Integers;
    let a2 = burnside_ring(CyclicGroup::new(2, 1).unwrap());
    assert!(based_ring_check(&a2, true).passed());
    // e*e = 2e with unit e
    let bad = BasedRing::new(zz, 1, |_, _| vec![BigInt::from(2)], vec![BigInt::one()], vec!["e".into()]).unwrap();
    let report = based_ring_check(&bad, true);
    assert!(!report.passed());
    assert!(report.mentions("unit"), "{report}");
    let zring = BasedRing::new(zz, 1, |_, _| vec![BigInt::one()], vec![BigInt::one()], vec!["1".into()]).unwrap();
    assert!(based_ring_check(&zring, true).passed());
}

#[test]
fn big_integers_do_not_overflow() {
    let zz = Integers;
    let big = BigInt::from(1u64 << 62);
    let a = Matrix::from_vec(2, 2, vec![big.clone(), BigInt::one(), BigInt::one(), big.clone()]);
    let det = determinant(&zz, &a);
    assert_eq!(det, &big * &big - 1);
    check_smith(&a);
}
