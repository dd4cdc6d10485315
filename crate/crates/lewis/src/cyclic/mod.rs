//! Orbits, finite G-sets and Burnside rings of `C_{p^n}`.

mod burnside;

pub use burnside::{burnside_quotient, burnside_ring, burnside_ring_over, level_name, BurnsideQuotient};

use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exactalg::is_prime;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CyclicGroup {
    pub p: u64,
    pub n: usize,
}

impl CyclicGroup {
    pub fn new(p: u64, n: usize) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if (p as f64).powi(n as i32) > 1e15 {
            return Err(Error::Unsupported(format!("group C_{p}^{n} is too large")));
        }
        Ok(CyclicGroup { p, n })
    }

    /// `p^e`.
    pub fn pow(&self, e: usize) -> u64 {
        self.p.pow(e as u32)
    }

    pub fn order(&self) -> u64 {
        self.pow(self.n)
    }

    /// `[C_{p^n} : C_{p^s}]`.
    pub fn index(&self, s: usize) -> u64 {
        self.pow(self.n - s)
    }

    pub fn levels(&self) -> usize {
        self.n + 1
    }

    pub fn check_level(&self, s: usize) -> Result<()> {
        if s > self.n {
            Err(Error::LevelOutOfRange { level: s, max: self.n })
        } else {
            Ok(())
        }
    }

    /// The subgroup `C_{p^m}` as a group in its own right.
    pub fn subgroup(&self, m: usize) -> CyclicGroup {
        CyclicGroup { p: self.p, n: m }
    }

    pub fn subgroup_name(&self, s: usize) -> String {
        if s == 0 {
            "e".to_string()
        } else {
            format!("C{}", self.pow(s))
        }
    }

    /// `C{p^n}/C{p^s}`, e.g. `C4/e`.
    pub fn orbit_name(&self, s: usize) -> String {
        format!("C{}/{}", self.order(), self.subgroup_name(s))
    }
}

impl fmt::Display for CyclicGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C{}", self.order())
    }
}

/// Orbit multiplicities: `mult[s]` copies of `C_{p^n}/C_{p^s}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteGSet {
    pub group: CyclicGroup,
    pub mult: Vec<u64>,
}

impl FiniteGSet {
    pub fn empty(group: CyclicGroup) -> Self {
        FiniteGSet { group, mult: vec![0; group.levels()] }
    }

    pub fn orbit(group: CyclicGroup, s: usize) -> Result<Self> {
        group.check_level(s)?;
        let mut x = Self::empty(group);
        x.mult[s] = 1;
        Ok(x)
    }

    pub fn new(group: CyclicGroup, mult: Vec<u64>) -> Result<Self> {
        if mult.len() != group.levels() {
            return Err(Error::Dimension(format!("expected {} multiplicities", group.levels())));
        }
        Ok(FiniteGSet { group, mult })
    }

    pub fn cardinality(&self) -> u64 {
        self.mult.iter().enumerate().map(|(s, a)| a * self.group.index(s)).sum()
    }

    pub fn disjoint_union(&self, other: &Self) -> Self {
        FiniteGSet { group: self.group, mult: self.mult.iter().zip(&other.mult).map(|(a, b)| a + b).collect() }
    }

    pub fn product(&self, other: &Self) -> Self {
        let g = self.group;
        let mut out = Self::empty(g);
        for (i, a) in self.mult.iter().enumerate() {
            for (j, b) in other.mult.iter().enumerate() {
                if a * b > 0 {
                    out.mult[i.min(j)] += a * b * g.pow(g.n - i.max(j));
                }
            }
        }
        out
    }
}

/// Virtual G-set in the orbit basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BurnsideElement {
    pub group: CyclicGroup,
    pub coeffs: Vec<BigInt>,
}

impl BurnsideElement {
    pub fn new(group: CyclicGroup, coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.len() != group.levels() {
            return Err(Error::Dimension(format!("expected {} coefficients", group.levels())));
        }
        Ok(BurnsideElement { group, coeffs })
    }

    pub fn from_ints(group: CyclicGroup, coeffs: &[i64]) -> Result<Self> {
        Self::new(group, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn from_gset(x: &FiniteGSet) -> Self {
        BurnsideElement { group: x.group, coeffs: x.mult.iter().map(|&a| BigInt::from(a)).collect() }
    }

    pub fn one(group: CyclicGroup) -> Self {
        let mut c = vec![BigInt::from(0); group.levels()];
        c[group.n] = BigInt::from(1);
        BurnsideElement { group, coeffs: c }
    }

    pub fn orbit(group: CyclicGroup, s: usize) -> Self {
        let mut c = vec![BigInt::from(0); group.levels()];
        c[s] = BigInt::from(1);
        BurnsideElement { group, coeffs: c }
    }

    pub fn add(&self, other: &Self) -> Self {
        BurnsideElement {
            group: self.group,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, k: i64) -> Self {
        BurnsideElement { group: self.group, coeffs: self.coeffs.iter().map(|a| a * k).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let g = self.group;
        let mut c = vec![BigInt::from(0); g.levels()];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i.min(j)] += a * b * BigInt::from(g.pow(g.n - i.max(j)));
            }
        }
        BurnsideElement { group: g, coeffs: c }
    }

    pub fn marks(&self) -> Vec<BigInt> {
        let g = self.group;
        (0..g.levels()).map(|s| (s..g.levels()).map(|t| &self.coeffs[t] * BigInt::from(g.index(t))).sum()).collect()
    }
}

/// `C/C_{p^i} × C/C_{p^j} = p^{n-max(i,j)} · C/C_{p^{min(i,j)}}`.
pub fn orbit_product(g: CyclicGroup, i: usize, j: usize) -> Result<FiniteGSet> {
    g.check_level(i)?;
    g.check_level(j)?;
    let mut x = FiniteGSet::empty(g);
    x.mult[i.min(j)] = g.pow(g.n - i.max(j));
    Ok(x)
}

/// Restriction along `C_{p^m} ⊆ C_{p^n}`.
pub fn restrict_gset(x: &FiniteGSet, m: usize) -> Result<FiniteGSet> {
    let g = x.group;
    g.check_level(m)?;
    let h = g.subgroup(m);
    let mut out = FiniteGSet::empty(h);
    for (s, a) in x.mult.iter().enumerate() {
        out.mult[m.min(s)] += a * g.pow(g.n - m.max(s));
    }
    Ok(out)
}

/// Induction `C_{p^n} ×_{C_{p^m}} X`.
pub fn induce_gset(x: &FiniteGSet, n: usize) -> Result<FiniteGSet> {
    let h = x.group;
    if h.n > n {
        return Err(Error::LevelOutOfRange { level: h.n, max: n });
    }
    let g = CyclicGroup::new(h.p, n)?;
    let mut out = FiniteGSet::empty(g);
    for (s, a) in x.mult.iter().enumerate() {
        out.mult[s] += a;
    }
    Ok(out)
}

/// Fixed-point counts `|X^{C_{p^s}}|`, `s = 0..n`.
pub fn marks(x: &FiniteGSet) -> Vec<u64> {
    let g = x.group;
    (0..g.levels()).map(|s| (s..g.levels()).map(|t| x.mult[t] * g.index(t)).sum()).collect()
}
