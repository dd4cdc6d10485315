//! Finite fields `F_{p^k}` with elements packed as base-`p` digit strings.
//!
//! The element with coefficient vector `(c_0, .., c_{k-1})` against the power
//! basis `1, g, .., g^{k-1}` is stored as the integer `sum c_i p^i`.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::Rng;

use super::coeff::Coeff;
use crate::error::{Error, Result};

const TABLE_LIMIT: u64 = 256;
const MAX_ORDER: u64 = 1 << 24;

#[derive(Clone)]
pub struct GaloisField(Arc<GfData>);

struct GfData {
    p: u32,
    k: u32,
    q: u32,
    modulus: Vec<u32>,
    add: Option<Vec<u32>>,
    mul: Option<Vec<u32>>,
    inv: Vec<u32>,
}

impl PartialEq for GaloisField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.k == other.0.k && self.0.modulus == other.0.modulus)
    }
}

impl fmt::Debug for GaloisField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.describe())
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Default moduli: Conway polynomials for `p^k <= 64`, coefficients low to high.
pub fn default_modulus(p: u32, k: u32) -> Vec<u32> {
    let table: &[(u32, u32, &[u32])] = &[
        (2, 2, &[1, 1, 1]),
        (2, 3, &[1, 1, 0, 1]),
        (2, 4, &[1, 1, 0, 0, 1]),
        (2, 5, &[1, 0, 1, 0, 0, 1]),
        (2, 6, &[1, 1, 0, 1, 1, 0, 1]),
        (3, 2, &[2, 2, 1]),
        (3, 3, &[1, 2, 0, 1]),
        (5, 2, &[2, 4, 1]),
        (7, 2, &[3, 6, 1]),
    ];
    if k == 1 {
        return vec![0, 1];
    }
    if let Some((_, _, m)) = table.iter().find(|(a, b, _)| *a == p && *b == k) {
        return m.to_vec();
    }
    first_irreducible(p, k)
}

fn first_irreducible(p: u32, k: u32) -> Vec<u32> {
    let count = (p as u64).pow(k);
    for code in 0..count {
        let mut f = digits(code, p, k as usize);
        f.push(1);
        if f[0] != 0 && find_factor(&f, p).is_none() {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn digits(mut v: u64, p: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push((v % p as u64) as u32);
        v /= p as u64;
    }
    out
}

fn poly_trim(mut f: Vec<u32>) -> Vec<u32> {
    while f.len() > 1 && *f.last().unwrap() == 0 {
        f.pop();
    }
    f
}

/// Remainder of `f` modulo the monic polynomial `g`.
fn poly_rem(f: &[u32], g: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u64> = f.iter().map(|&c| c as u64).collect();
    let dg = g.len() - 1;
    let p = p as u64;
    while r.len() > dg {
        let lead = r.pop().unwrap() % p;
        if lead != 0 {
            let off = r.len() - dg;
            for (i, &gc) in g[..dg].iter().enumerate() {
                r[off + i] = (r[off + i] + (p - lead) * gc as u64) % p;
            }
        }
    }
    poly_trim(r.into_iter().map(|c| (c % p) as u32).collect())
}

/// A monic factor of degree `1..=deg/2`, if `f` is reducible.
fn find_factor(f: &[u32], p: u32) -> Option<Vec<u32>> {
    let deg = f.len() - 1;
    for d in 1..=deg / 2 {
        for code in 0..(p as u64).pow(d as u32) {
            let mut g = digits(code, p, d);
            g.push(1);
            let r = poly_rem(f, &g, p);
            if r.len() == 1 && r[0] == 0 {
                return Some(g);
            }
        }
    }
    None
}

pub fn format_poly(f: &[u32]) -> String {
    let mut terms = Vec::new();
    for (i, &c) in f.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => "x".to_string(),
            _ => format!("x^{i}"),
        };
        terms.push(match (c, i) {
            (_, 0) => c.to_string(),
            (1, _) => mono,
            _ => format!("{c}{mono}"),
        });
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join("+")
    }
}

/// Builds `F_{p^k}` from a monic modulus given by coefficients low to high.
pub fn gf_make(p: u64, k: u32, modulus: &[u32]) -> Result<GaloisField> {
    if !is_prime(p) || p > u16::MAX as u64 {
        return Err(Error::NotPrime(p));
    }
    let p32 = p as u32;
    if k == 0 {
        return Err(Error::Invalid("degree must be positive".into()));
    }
    if modulus.len() != k as usize + 1 || modulus[k as usize] != 1 {
        return Err(Error::Invalid(format!("modulus must be monic of degree {k}")));
    }
    if modulus.iter().any(|&c| c >= p32) {
        return Err(Error::Invalid("modulus coefficients must lie in 0..p".into()));
    }
    let q = p
        .checked_pow(k)
        .filter(|&q| q <= MAX_ORDER)
        .ok_or_else(|| Error::Unsupported(format!("field of order {p}^{k} is too large")))?;
    if k > 1 {
        if let Some(g) = find_factor(modulus, p32) {
            return Err(Error::ReducibleModulus { factor: format_poly(&g) });
        }
    }
    let mut data = GfData { p: p32, k, q: q as u32, modulus: modulus.to_vec(), add: None, mul: None, inv: Vec::new() };
    if q <= TABLE_LIMIT {
        let qs = q as usize;
        let mut add = vec![0; qs * qs];
        let mut mul = vec![0; qs * qs];
        for a in 0..qs {
            for b in 0..qs {
                add[a * qs + b] = data.add_slow(a as u32, b as u32);
                mul[a * qs + b] = data.mul_slow(a as u32, b as u32);
            }
        }
        data.add = Some(add);
        data.mul = Some(mul);
    }
    let field = GaloisField(Arc::new(data));
    let inv = if q <= 1 << 16 {
        (0..q as u32).map(|a| if a == 0 { 0 } else { field.pow(&a, q - 2) }).collect()
    } else {
        Vec::new()
    };
    let mut data = Arc::try_unwrap(field.0).unwrap_or_else(|_| unreachable!());
    data.inv = inv;
    Ok(GaloisField(Arc::new(data)))
}

impl GfData {
    fn add_slow(&self, a: u32, b: u32) -> u32 {
        if self.k == 1 {
            return (a + b) % self.p;
        }
        let (mut a, mut b, mut out, mut place) = (a, b, 0u32, 1u32);
        for _ in 0..self.k {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place = place.wrapping_mul(self.p);
        }
        out
    }

    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        if self.k == 1 {
            return ((a as u64 * b as u64) % self.p as u64) as u32;
        }
        let k = self.k as usize;
        let x = digits(a as u64, self.p, k);
        let y = digits(b as u64, self.p, k);
        let mut prod = vec![0u32; 2 * k - 1];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                prod[i + j] = ((prod[i + j] as u64 + xi as u64 * yj as u64) % self.p as u64) as u32;
            }
        }
        pack(&poly_rem(&prod, &self.modulus, self.p), self.p)
    }
}

fn pack(coeffs: &[u32], p: u32) -> u32 {
    coeffs.iter().rev().fold(0u32, |acc, &c| acc * p + c)
}

impl GaloisField {
    pub fn prime(p: u64) -> Result<Self> {
        gf_make(p, 1, &[0, 1])
    }

    /// `F_{p^k}` with the default modulus.
    pub fn new(p: u64, k: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        gf_make(p, k, &default_modulus(p as u32, k))
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn degree(&self) -> u32 {
        self.0.k
    }

    pub fn order(&self) -> u32 {
        self.0.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    /// The class of `x` in `F_p[x]/(modulus)`.
    pub fn generator(&self) -> u32 {
        if self.0.k == 1 {
            // x = 0 in F_p[x]/(x); use the class of x modulo the linear modulus
            let m = self.0.modulus[0];
            (self.0.p - m) % self.0.p
        } else {
            self.0.p
        }
    }

    pub fn coefficients(&self, a: u32) -> Vec<u32> {
        digits(a as u64, self.0.p, self.0.k as usize)
    }

    pub fn from_coefficients(&self, c: &[u32]) -> u32 {
        pack(c, self.0.p)
    }

    pub fn frobenius(&self, a: u32) -> u32 {
        self.pow(&a, self.0.p as u64)
    }

    pub fn frobenius_power(&self, a: u32, times: u32) -> u32 {
        (0..times % self.0.k).fold(a, |x, _| self.frobenius(x))
    }

    pub fn inverse(&self, a: u32) -> Option<u32> {
        if a == 0 {
            None
        } else if self.0.inv.is_empty() {
            Some(self.pow(&a, self.0.q as u64 - 2))
        } else {
            Some(self.0.inv[a as usize])
        }
    }
}

/// Trace from this field down to its subfield of degree `subdegree`.
pub fn galois_trace(field: &GaloisField, x: u32, subdegree: u32) -> Result<u32> {
    let k = field.degree();
    if subdegree == 0 || !k.is_multiple_of(subdegree) {
        return Err(Error::Invalid(format!("subdegree {subdegree} does not divide {k}")));
    }
    let mut acc = 0;
    let mut y = x;
    for _ in 0..k / subdegree {
        acc = field.add(&acc, &y);
        y = field.frobenius_power(y, subdegree);
    }
    Ok(acc)
}

impl Coeff for GaloisField {
    type El = u32;

    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn from_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.0.p as i64) as u32
    }
    fn from_bigint(&self, v: &BigInt) -> u32 {
        v.mod_floor(&BigInt::from(self.0.p)).to_u32().unwrap()
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        match &self.0.add {
            Some(t) => t[(*a * self.0.q + *b) as usize],
            None => self.0.add_slow(*a, *b),
        }
    }
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        self.add(a, &self.neg(b))
    }
    fn neg(&self, a: &u32) -> u32 {
        let p = self.0.p;
        if self.0.k == 1 {
            return (p - a % p) % p;
        }
        let d: Vec<u32> = self.coefficients(*a).into_iter().map(|c| (p - c) % p).collect();
        pack(&d, p)
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        if *a == 0 || *b == 0 {
            return 0;
        }
        match &self.0.mul {
            Some(t) => t[(*a * self.0.q + *b) as usize],
            None => self.0.mul_slow(*a, *b),
        }
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn is_field(&self) -> bool {
        true
    }
    fn characteristic(&self) -> u64 {
        self.0.p as u64
    }
    fn size_cmp(&self, a: &u32, b: &u32) -> Ordering {
        (*a != 0).cmp(&(*b != 0))
    }
    fn div_rem(&self, a: &u32, b: &u32) -> (u32, u32) {
        let inv = self.inverse(*b).expect("division by zero in a field");
        (self.mul(a, &inv), 0)
    }
    fn unit_inverse(&self, a: &u32) -> Option<u32> {
        self.inverse(*a)
    }
    fn normalizer(&self, a: &u32) -> u32 {
        self.inverse(*a).unwrap_or(1)
    }
    fn reduce(&self, a: &u32, m: &u32) -> u32 {
        if *m == 0 {
            *a
        } else {
            0
        }
    }
    fn cardinality(&self) -> Option<u64> {
        Some(self.0.q as u64)
    }
    fn element(&self, index: u64) -> u32 {
        (index % self.0.q as u64) as u32
    }
    fn random<G: Rng + ?Sized>(&self, rng: &mut G) -> u32 {
        rng.gen_range(0..self.0.q)
    }
    fn format(&self, a: &u32) -> String {
        if self.0.k == 1 {
            a.to_string()
        } else {
            let c: Vec<String> = self.coefficients(*a).iter().map(|c| c.to_string()).collect();
            format!("[{}]", c.join(","))
        }
    }
    fn parse(&self, s: &str) -> Result<u32> {
        let s = s.trim();
        let bad = || Error::Invalid(format!("not an element of {}: {s}", self.describe()));
        if let Some(inner) = s.strip_prefix('[').and_then(|t| t.strip_suffix(']')) {
            let c: Vec<u32> =
                inner.split(',').map(|t| t.trim().parse::<u32>().map_err(|_| bad())).collect::<Result<_>>()?;
            if c.len() != self.0.k as usize || c.iter().any(|&x| x >= self.0.p) {
                return Err(bad());
            }
            Ok(pack(&c, self.0.p))
        } else {
            let v: i64 = s.parse().map_err(|_| bad())?;
            if self.0.k != 1 && !(0..self.0.p as i64).contains(&v) {
                return Err(bad());
            }
            Ok(self.from_i64(v))
        }
    }
    fn to_integer(&self, _a: &u32) -> Option<BigInt> {
        None
    }
    fn describe(&self) -> String {
        let m: Vec<String> = self.0.modulus.iter().map(|c| c.to_string()).collect();
        format!("GF({},{},{})", self.0.p, self.0.k, m.join(":"))
    }
}
