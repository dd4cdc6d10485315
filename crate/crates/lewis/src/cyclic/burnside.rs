use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{BurnsideElement, CyclicGroup};
use crate::error::{Error, Result};
use crate::exactalg::fpmodule::from_relations;
use crate::exactalg::linalg::{column_echelon, determinant};
use crate::exactalg::{BasedRing, Coeff, Integers, Matrix};

/// Name of the orbit basis element at level `s`: `1` on top, then `x, y, z, ..`
/// going down.
pub fn level_name(g: CyclicGroup, s: usize) -> String {
    const NAMES: [&str; 8] = ["x", "y", "z", "w", "v", "u", "t", "r"];
    if s == g.n {
        return "1".to_string();
    }
    let depth = g.n - 1 - s;
    NAMES.get(depth).map_or_else(|| format!("x{}", depth + 1), |n| n.to_string())
}

/// `A(C_{p^n}) ⊗ base` on the orbit basis `[C_{p^n}/C_{p^s}]`, `s = 0..n`.
pub fn burnside_ring_over<R: Coeff>(base: &R, g: CyclicGroup) -> BasedRing<R> {
    let n = g.n;
    let mut unit = vec![base.zero(); n + 1];
    unit[n] = base.one();
    BasedRing::new(
        base.clone(),
        n + 1,
        |i, j| {
            let mut v = vec![base.zero(); n + 1];
            v[i.min(j)] = base.from_bigint(&BigInt::from(g.pow(n - i.max(j))));
            v
        },
        unit,
        (0..=n).map(|s| level_name(g, s)).collect(),
    )
    .expect("burnside structure constants are well formed")
}

pub fn burnside_ring(g: CyclicGroup) -> BasedRing<Integers> {
    burnside_ring_over(&Integers, g)
}

/// A quotient of a Burnside ring on a surviving subset of the orbit basis.
#[derive(Clone, Debug)]
pub struct BurnsideQuotient {
    pub ring: BasedRing<Integers>,
    /// Orbit levels whose classes form the quotient basis, ascending.
    pub kept_levels: Vec<usize>,
    /// Coordinates of each orbit class in the quotient basis (columns).
    pub projection: Matrix<BigInt>,
    /// Basis of the ideal as a lattice in the orbit coordinates.
    pub ideal: Matrix<BigInt>,
    pub generators: Vec<String>,
    pub relations: Vec<String>,
    pub presentation: String,
}

fn unit_vec(len: usize, i: usize) -> Vec<BigInt> {
    (0..len).map(|k| if k == i { BigInt::one() } else { BigInt::zero() }).collect()
}

/// Quotient of `A(C_{p^n})` by the ideal generated by `ideal_gens`, rendered as
/// a polynomial presentation.
pub fn burnside_quotient(
    r: &BasedRing<Integers>,
    g: CyclicGroup,
    ideal_gens: &[BurnsideElement],
) -> Result<BurnsideQuotient> {
    let z = Integers;
    let rank = r.rank();
    if rank != g.levels() {
        return Err(Error::Dimension("ring rank does not match the group".into()));
    }
    let mut cols = Vec::new();
    for gen in ideal_gens {
        if gen.coeffs.len() != rank {
            return Err(Error::Dimension("ideal generator has wrong length".into()));
        }
        for b in 0..rank {
            cols.push(r.mul(&gen.coeffs, &r.basis(b)));
        }
    }
    let rel = Matrix::from_columns(&cols, rank);
    let quotient = from_relations(&z, rank, &rel);
    if !quotient.module.is_free(&z) {
        let tors: Vec<String> =
            quotient.module.orders().iter().filter(|d| !d.is_zero()).map(|d| d.to_string()).collect();
        return Err(Error::Failed(format!(
            "quotient has torsion Z/{} and admits no based presentation",
            tors.join(", Z/")
        )));
    }
    let qrank = quotient.module.gens();
    let ideal = column_echelon(&z, &rel).image();

    // eliminate basis elements top-down whenever the rest of the basis spans them
    let mut kept: Vec<usize> = (0..rank).collect();
    for s in (0..g.n).rev() {
        let others: Vec<usize> = kept.iter().copied().filter(|&t| t != s).collect();
        let basis_others = Matrix::from_columns(&others.iter().map(|&t| unit_vec(rank, t)).collect::<Vec<_>>(), rank);
        let ech = column_echelon(&z, &basis_others.hstack(&ideal));
        if ech.solve(&z, &unit_vec(rank, s)).is_some() {
            kept = others;
        }
    }
    let kept_basis = Matrix::from_columns(&kept.iter().map(|&t| unit_vec(rank, t)).collect::<Vec<_>>(), rank);
    let image_in_q = quotient.proj.mul(&z, &kept_basis);
    if kept.len() != qrank || !determinant(&z, &image_in_q).magnitude().is_one() {
        return Err(Error::Failed("surviving orbit classes do not form a basis of the quotient".into()));
    }
    let ech = column_echelon(&z, &kept_basis.hstack(&ideal));
    let coords = |v: &[BigInt]| -> Vec<BigInt> {
        let x = ech.solve(&z, v).expect("quotient basis spans");
        x[..kept.len()].to_vec()
    };
    let k = kept.len();
    let unit = coords(r.unit());
    let labels: Vec<String> = kept.iter().map(|&s| level_name(g, s)).collect();
    let ring = BasedRing::new(z, k, |a, b| coords(r.structure(kept[a], kept[b])), unit.clone(), labels.clone())?;
    let projection = Matrix::from_columns(&(0..rank).map(|t| coords(&unit_vec(rank, t))).collect::<Vec<_>>(), k);

    // generators in naming order (top-down), skipping the unit
    let gens: Vec<usize> = (0..k).rev().filter(|&a| kept[a] != g.n).collect();
    let generators: Vec<String> = gens.iter().map(|&a| labels[a].clone()).collect();
    let unit_pos = kept.iter().position(|&s| s == g.n);
    let mut relations = Vec::new();
    let mut pairs: Vec<(usize, usize)> = gens.iter().map(|&a| (a, a)).collect();
    for (x, &a) in gens.iter().enumerate() {
        for &b in &gens[x + 1..] {
            pairs.push((a, b));
        }
    }
    for (a, b) in pairs {
        let lhs = if a == b {
            format!("{}^2", labels[a])
        } else if labels[a].len() == 1 && labels[b].len() == 1 {
            format!("{}{}", labels[a], labels[b])
        } else {
            format!("{}*{}", labels[a], labels[b])
        };
        let prod = ring.structure(a, b);
        let mut text = lhs;
        let order: Vec<usize> = gens.iter().copied().chain(unit_pos).collect();
        for c in order {
            let coef = -&prod[c];
            if coef.is_zero() {
                continue;
            }
            let sign = if coef.is_negative() { "-" } else { "+" };
            let mag = coef.abs();
            if Some(c) == unit_pos {
                text.push_str(&format!("{sign}{mag}"));
            } else if mag.is_one() {
                text.push_str(&format!("{sign}{}", labels[c]));
            } else {
                text.push_str(&format!("{sign}{mag}{}", labels[c]));
            }
        }
        relations.push(text);
    }
    let presentation = if generators.is_empty() {
        "Z".to_string()
    } else {
        format!("Z[{}]/({})", generators.join(","), relations.join(","))
    };
    Ok(BurnsideQuotient { ring, kept_levels: kept, projection, ideal, generators, relations, presentation })
}
