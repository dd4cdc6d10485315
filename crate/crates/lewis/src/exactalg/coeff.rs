use std::cmp::Ordering;
use std::fmt::Debug;
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::error::{Error, Result};

/// Coefficient context: a Euclidean domain with exact arithmetic.
///
/// Fields are Euclidean domains whose nonzero elements all have size one, so
/// a single echelon / Smith normal form implementation serves `Z` and every
/// finite field.
pub trait Coeff: Clone + Debug + PartialEq + Send + Sync + 'static {
    type El: Clone + Debug + PartialEq + Eq + Hash + Send + Sync + 'static;

    fn zero(&self) -> Self::El;
    fn one(&self) -> Self::El;
    fn from_i64(&self, v: i64) -> Self::El;
    fn from_bigint(&self, v: &BigInt) -> Self::El;
    fn add(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn sub(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn neg(&self, a: &Self::El) -> Self::El;
    fn mul(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn is_zero(&self, a: &Self::El) -> bool;
    fn is_field(&self) -> bool;
    /// Zero for `Z`.
    fn characteristic(&self) -> u64;
    /// Orders elements by Euclidean size; zero is the unique smallest.
    fn size_cmp(&self, a: &Self::El, b: &Self::El) -> Ordering;
    /// Division with a remainder strictly smaller than `b`.
    fn div_rem(&self, a: &Self::El, b: &Self::El) -> (Self::El, Self::El);
    fn unit_inverse(&self, a: &Self::El) -> Option<Self::El>;
    /// A unit `u` with `u * a` the preferred associate of `a`.
    fn normalizer(&self, a: &Self::El) -> Self::El;
    /// Preferred representative of `a` modulo `(m)`; `m = 0` is the identity.
    fn reduce(&self, a: &Self::El, m: &Self::El) -> Self::El;
    /// Number of elements, when finite.
    fn cardinality(&self) -> Option<u64>;
    /// Enumerates the ring: bijective onto a finite field, onto `0, 1, -1, 2, -2, ..` for `Z`.
    fn element(&self, index: u64) -> Self::El;
    fn random<G: Rng + ?Sized>(&self, rng: &mut G) -> Self::El;
    fn format(&self, a: &Self::El) -> String;
    fn parse(&self, s: &str) -> Result<Self::El>;
    fn describe(&self) -> String;
    /// The element as an integer, for integral bases only.
    fn to_integer(&self, a: &Self::El) -> Option<BigInt>;

    fn is_one(&self, a: &Self::El) -> bool {
        *a == self.one()
    }

    fn is_unit(&self, a: &Self::El) -> bool {
        self.unit_inverse(a).is_some()
    }

    fn pow(&self, a: &Self::El, mut e: u64) -> Self::El {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    fn divides(&self, a: &Self::El, b: &Self::El) -> bool {
        if self.is_zero(a) {
            return self.is_zero(b);
        }
        self.is_zero(&self.div_rem(b, a).1)
    }

    fn exact_div(&self, a: &Self::El, b: &Self::El) -> Option<Self::El> {
        if self.is_zero(b) {
            return None;
        }
        let (q, r) = self.div_rem(a, b);
        self.is_zero(&r).then_some(q)
    }

    fn dot(&self, a: &[Self::El], b: &[Self::El]) -> Self::El {
        let mut acc = self.zero();
        for (x, y) in a.iter().zip(b) {
            if !self.is_zero(x) && !self.is_zero(y) {
                acc = self.add(&acc, &self.mul(x, y));
            }
        }
        acc
    }
}

/// The ring of integers with arbitrary precision.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Integers;

impl Coeff for Integers {
    type El = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn from_i64(&self, v: i64) -> BigInt {
        BigInt::from(v)
    }
    fn from_bigint(&self, v: &BigInt) -> BigInt {
        v.clone()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn is_field(&self) -> bool {
        false
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn size_cmp(&self, a: &BigInt, b: &BigInt) -> Ordering {
        a.magnitude().cmp(b.magnitude())
    }
    fn div_rem(&self, a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
        let (q, r) = a.div_mod_floor(b);
        // shrink towards zero so repeated reduction terminates quickly
        if (&r + &r).magnitude() > b.magnitude() {
            (q + 1, r - b)
        } else {
            (q, r)
        }
    }
    fn unit_inverse(&self, a: &BigInt) -> Option<BigInt> {
        (a.magnitude().is_one()).then(|| a.clone())
    }
    fn normalizer(&self, a: &BigInt) -> BigInt {
        if a.is_negative() {
            BigInt::from(-1)
        } else {
            BigInt::one()
        }
    }
    fn reduce(&self, a: &BigInt, m: &BigInt) -> BigInt {
        if m.is_zero() {
            a.clone()
        } else {
            a.mod_floor(&m.abs())
        }
    }
    fn cardinality(&self) -> Option<u64> {
        None
    }
    fn element(&self, index: u64) -> BigInt {
        let half = BigInt::from(index.div_ceil(2));
        if index % 2 == 1 {
            half
        } else {
            -half
        }
    }
    fn random<G: Rng + ?Sized>(&self, rng: &mut G) -> BigInt {
        BigInt::from(rng.gen_range(-3i64..=3))
    }
    fn format(&self, a: &BigInt) -> String {
        a.to_string()
    }
    fn parse(&self, s: &str) -> Result<BigInt> {
        BigInt::from_str(s.trim()).map_err(|_| Error::Invalid(format!("not an integer: {s}")))
    }
    fn describe(&self) -> String {
        "Z".to_string()
    }
    fn to_integer(&self, a: &BigInt) -> Option<BigInt> {
        Some(a.clone())
    }
}
