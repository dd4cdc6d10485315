use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use lewis::cyclic::CyclicGroup;
use lewis::exactalg::{smith_normal_form, GaloisField, Integers, Matrix};
use lewis::functors::free_module;
use lewis::green::{box_product_cp, constant_green, fp_galois};
use lewis::kzero::{freeness_decompose, random_idempotent};
use lewis::mackey::{burnside_mackey, twisted_burnside_c5};

fn smith(c: &mut Criterion) {
    // deterministic dense integer matrix with mixed signs
    let a = Matrix::from_fn(12, 12, |i, j| num_bigint::BigInt::from(((i * 7 + j * 13 + i * j) % 23) as i64 - 11));
    c.bench_function("smith 12x12", |b| b.iter(|| smith_normal_form(&Integers, black_box(&a))));
}

fn box_product(c: &mut Criterion) {
    let t = twisted_burnside_c5();
    let a = burnside_mackey(CyclicGroup::new(3, 1).unwrap());
    c.bench_function("box twisted C5 square", |b| b.iter(|| box_product_cp(black_box(&t), black_box(&t)).unwrap()));
    c.bench_function("box Burnside C3 square", |b| b.iter(|| box_product_cp(black_box(&a), black_box(&a)).unwrap()));
}

fn free(c: &mut Criterion) {
    let k = fp_galois(2, 2, 2).unwrap();
    let z = constant_green(&Integers, CyclicGroup::new(3, 2).unwrap());
    c.bench_function("free F0 of FP(F4) over C4", |b| b.iter(|| free_module(black_box(&k), 0).unwrap()));
    c.bench_function("free F0 of Z over C9", |b| b.iter(|| free_module(black_box(&z), 0).unwrap()));
}

fn decompose(c: &mut Criterion) {
    let f2 = GaloisField::prime(2).unwrap();
    let k = constant_green(&f2, CyclicGroup::new(2, 2).unwrap());
    let summands = [0, 1, 2];
    let e = random_idempotent(&k, &summands, &[true, true, false], 7).unwrap();
    c.bench_function("decompose over F2, C4", |b| {
        b.iter(|| freeness_decompose(black_box(&k), &summands, black_box(&e), 7).unwrap().unwrap())
    });
}

criterion_group!(benches, smith, box_product, free, decompose);
criterion_main!(benches);
