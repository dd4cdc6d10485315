use std::collections::BTreeSet;

use num_bigint::BigInt;
use proptest::prelude::*;

use lewis::cyclic::{
    burnside_quotient, burnside_ring, induce_gset, marks, orbit_product, restrict_gset, BurnsideElement, CyclicGroup,
    FiniteGSet,
};
use lewis::exactalg::based_ring_check;
use lewis::exactalg::linalg::determinant;
use lewis::{Integers, Matrix};

fn group(p: u64, n: usize) -> CyclicGroup {
    CyclicGroup::new(p, n).unwrap()
}

/// Orbit types of a set with a cyclic action, given the action of the generator.
/// An orbit of size `p^{n-s}` under `C_{p^n}` has type `s`.
fn orbit_types(points: usize, act: impl Fn(usize) -> usize, p: u64, n: usize) -> Vec<u64> {
    let mut seen = vec![false; points];
    let mut mult = vec![0u64; n + 1];
    for start in 0..points {
        if seen[start] {
            continue;
        }
        let mut size = 0u64;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            size += 1;
            x = act(x);
        }
        let mut s = n;
        let mut q = 1;
        while q < size {
            q *= p;
            s -= 1;
        }
        assert_eq!(q, size, "orbit size {size} is not a power of {p}");
        mult[s] += 1;
    }
    mult
}

/// Brute force: `C/C_{p^i} × C/C_{p^j}` with the diagonal action.
fn product_oracle(g: CyclicGroup, i: usize, j: usize) -> Vec<u64> {
    let (a, b) = (g.index(i) as usize, g.index(j) as usize);
    orbit_types(a * b, |x| ((x / b + 1) % a) * b + (x % b + 1) % b, g.p, g.n)
}

/// Brute force: the orbit `C_{p^n}/C_{p^s}` restricted to `C_{p^m}`, generated by `g^{p^{n-m}}`.
fn restrict_oracle(g: CyclicGroup, s: usize, m: usize) -> Vec<u64> {
    let size = g.index(s) as usize;
    let step = g.pow(g.n - m) as usize;
    orbit_types(size, |x| (x + step) % size, g.p, m)
}

/// Brute force: `C_{p^n} ×_{C_{p^m}} C_{p^m}/C_{p^s}`, built as classes of pairs.
fn induce_oracle(p: u64, m: usize, s: usize, n: usize) -> Vec<u64> {
    let g = group(p, n);
    let order = g.order() as usize;
    let xs = group(p, m).index(s) as usize;
    let h = g.pow(n - m) as usize;
    // (a, x) ~ (a + h, x - 1); canonical representative has a < h
    let canon = |a: usize, x: usize| -> usize {
        let k = a / h;
        let x = (x + xs * order - k % xs) % xs;
        (a % h) * xs + x
    };
    let classes: BTreeSet<usize> =
        (0..order).flat_map(|a| (0..xs).map(move |x| (a, x))).map(|(a, x)| canon(a, x)).collect();
    let idx: Vec<usize> = classes.into_iter().collect();
    let pos = |c: usize| idx.binary_search(&c).unwrap();
    orbit_types(
        idx.len(),
        |c| {
            let (a, x) = (idx[c] / xs, idx[c] % xs);
            pos(canon(a + 1, x))
        },
        p,
        n,
    )
}

#[test]
fn orbit_product_examples() {
    let c5 = group(5, 1);
    assert_eq!(orbit_product(c5, 1, 1).unwrap().mult, vec![0, 1]);
    assert_eq!(orbit_product(c5, 0, 0).unwrap().mult, vec![5, 0]);
    assert_eq!(product_oracle(c5, 0, 0), vec![5, 0]);
    let c4 = group(2, 2);
    assert_eq!(orbit_product(c4, 1, 0).unwrap().mult, vec![2, 0, 0]);
    assert!(orbit_product(c4, 3, 0).is_err());
}

#[test]
fn orbit_product_matches_enumeration() {
    for p in [2, 3] {
        for n in 0..=3 {
            let g = group(p, n);
            for i in 0..=n {
                for j in 0..=n {
                    assert_eq!(orbit_product(g, i, j).unwrap().mult, product_oracle(g, i, j), "p={p} n={n} {i} {j}");
                }
            }
        }
    }
}

#[test]
fn restriction_examples() {
    let c4 = group(2, 2);
    let half = FiniteGSet::orbit(c4, 1).unwrap();
    assert_eq!(restrict_gset(&half, 1).unwrap().mult, vec![0, 2]);
    let free = FiniteGSet::orbit(c4, 0).unwrap();
    assert_eq!(restrict_gset(&free, 1).unwrap().mult, vec![2, 0]);
    for m in 0..=2 {
        let pt = FiniteGSet::orbit(c4, 2).unwrap();
        let r = restrict_gset(&pt, m).unwrap();
        assert_eq!(r.mult.iter().sum::<u64>(), 1);
        assert_eq!(r.mult[m], 1);
    }
    assert!(restrict_gset(&free, 3).is_err());
}

#[test]
fn restriction_matches_coset_enumeration() {
    for p in [2, 3] {
        for n in 0..=3 {
            let g = group(p, n);
            for s in 0..=n {
                for m in 0..=n {
                    let x = FiniteGSet::orbit(g, s).unwrap();
                    assert_eq!(restrict_gset(&x, m).unwrap().mult, restrict_oracle(g, s, m), "p={p} n={n} s={s} m={m}");
                }
            }
        }
    }
}

#[test]
fn induction_examples() {
    let c2 = group(2, 1);
    let free = FiniteGSet::orbit(c2, 0).unwrap();
    assert_eq!(induce_gset(&free, 2).unwrap().mult, vec![1, 0, 0]);
    let pt = FiniteGSet::orbit(c2, 1).unwrap();
    assert_eq!(induce_gset(&pt, 2).unwrap().mult, vec![0, 1, 0]);
    let two = FiniteGSet::new(c2, vec![2, 0]).unwrap();
    assert_eq!(induce_gset(&two, 3).unwrap().mult, vec![2, 0, 0, 0]);
    assert!(induce_gset(&two, 0).is_err());
}

#[test]
fn induction_matches_enumeration_and_double_cosets() {
    for p in [2, 3] {
        for n in 0..=3 {
            for m in 0..=n {
                let h = group(p, m);
                for s in 0..=m {
                    let x = FiniteGSet::orbit(h, s).unwrap();
                    let ind = induce_gset(&x, n).unwrap();
                    assert_eq!(ind.mult, induce_oracle(p, m, s, n), "p={p} m={m} s={s} n={n}");
                    // abelian double cosets: p^{n-m} copies of C_{p^m}/C_{p^s}
                    let back = restrict_gset(&ind, m).unwrap();
                    let mut expect = vec![0; m + 1];
                    expect[s] = group(p, n).pow(n - m);
                    assert_eq!(back.mult, expect);
                }
            }
        }
    }
}

/// Direct count of points of `Z/p^{n-t}` fixed by `+p^{n-s}`.
fn marks_oracle(g: CyclicGroup, t: usize) -> Vec<u64> {
    let size = g.index(t);
    (0..=g.n).map(|s| (0..size).filter(|x| (x + g.pow(g.n - s)) % size == *x).count() as u64).collect()
}

#[test]
fn marks_examples() {
    let c4 = group(2, 2);
    assert_eq!(marks(&FiniteGSet::orbit(c4, 1).unwrap()), vec![2, 2, 0]);
    assert_eq!(marks(&FiniteGSet::orbit(c4, 2).unwrap()), vec![1, 1, 1]);
    assert_eq!(marks(&FiniteGSet::orbit(group(5, 1), 0).unwrap()), vec![5, 0]);
}

#[test]
fn marks_are_an_injective_ring_map() {
    for p in [2, 3, 5] {
        for n in 0..=3 {
            let g = group(p, n);
            let cols: Vec<Vec<BigInt>> = (0..=n)
                .map(|t| {
                    let m = marks(&FiniteGSet::orbit(g, t).unwrap());
                    assert_eq!(m, marks_oracle(g, t));
                    m.into_iter().map(BigInt::from).collect()
                })
                .collect();
            let table = Matrix::from_columns(&cols, n + 1);
            for s in 0..=n {
                assert_eq!(*table.get(s, s), BigInt::from(g.index(s)));
                for t in 0..s {
                    assert_eq!(*table.get(s, t), BigInt::from(0));
                }
            }
            assert_ne!(determinant(&Integers, &table), BigInt::from(0));
            for i in 0..=n {
                for j in 0..=n {
                    let (x, y) = (BurnsideElement::orbit(g, i), BurnsideElement::orbit(g, j));
                    let lhs = x.mul(&y).marks();
                    let rhs: Vec<BigInt> = x.marks().iter().zip(y.marks()).map(|(a, b)| a * b).collect();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}

proptest! {
    #[test]
    fn marks_multiply_on_random_virtual_sets(a in proptest::collection::vec(-20i64..20, 4), b in proptest::collection::vec(-20i64..20, 4)) {
        let g = group(2, 3);
        let x = BurnsideElement::from_ints(g, &a).unwrap();
        let y = BurnsideElement::from_ints(g, &b).unwrap();
        let rhs: Vec<BigInt> = x.marks().iter().zip(y.marks()).map(|(u, v)| u * v).collect();
        prop_assert_eq!(x.mul(&y).marks(), rhs);
        // injectivity: equal marks force equal elements
        prop_assert_eq!(x.marks() == y.marks(), a == b);
    }
}

#[test]
fn burnside_ring_of_c4() {
    let g = group(2, 2);
    let a = burnside_ring(g);
    assert_eq!(a.rank(), 3);
    let x = BurnsideElement::orbit(g, 1);
    let y = BurnsideElement::orbit(g, 0);
    assert_eq!(x.mul(&x), x.scale(2));
    assert_eq!(y.mul(&y), y.scale(4));
    assert_eq!(x.mul(&y), y.scale(2));
    assert_eq!(a.mul(&x.coeffs, &y.coeffs), y.scale(2).coeffs);
    let q = burnside_quotient(&a, g, &[]).unwrap();
    assert_eq!(q.presentation, "Z[x,y]/(x^2-2x,y^2-4y,xy-2y)");
}

#[test]
fn burnside_ring_small_cases() {
    let trivial = burnside_ring(group(3, 0));
    assert_eq!(trivial.rank(), 1);
    assert_eq!(trivial.structure(0, 0), &[BigInt::from(1)]);
    let g = group(5, 1);
    let free = BurnsideElement::orbit(g, 0);
    assert_eq!(free.mul(&free), free.scale(5));
    for p in [2, 3, 5] {
        for n in 0..=3 {
            let r = burnside_ring(group(p, n));
            assert!(based_ring_check(&r, true).passed(), "p={p} n={n}");
            for i in 0..=n {
                for j in 0..=n {
                    let expect: Vec<BigInt> =
                        orbit_product(group(p, n), i, j).unwrap().mult.into_iter().map(BigInt::from).collect();
                    assert_eq!(r.structure(i, j), &expect[..]);
                }
            }
        }
    }
}

#[test]
fn burnside_quotients() {
    let g = group(2, 2);
    let a = burnside_ring(g);
    let gen = BurnsideElement::orbit(g, 1).sub(&BurnsideElement::one(g).scale(2));
    let q = burnside_quotient(&a, g, &[gen]).unwrap();
    assert_eq!(q.ring.rank(), 2);
    assert_eq!(q.presentation, "Z[y]/(y^2-4y)");
    let q0 = burnside_quotient(&a, g, &[]).unwrap();
    assert_eq!(q0.ring.rank(), 3);
    assert_eq!(q0.kept_levels, vec![0, 1, 2]);
    let c2 = group(2, 1);
    let a2 = burnside_ring(c2);
    let gen = BurnsideElement::orbit(c2, 0).sub(&BurnsideElement::one(c2).scale(2));
    let q = burnside_quotient(&a2, c2, &[gen]).unwrap();
    assert_eq!(q.ring.rank(), 1);
    assert_eq!(q.presentation, "Z");
    // 2[C2/e] generates 2y and 4y: the quotient Z + Z/2 has torsion
    let tors = burnside_quotient(&a2, c2, &[BurnsideElement::orbit(c2, 0).scale(2)]);
    assert!(tors.is_err());
}
