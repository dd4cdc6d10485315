use std::fmt;

use crate::error::{Error, Result};
use crate::exactalg::linalg::{rank, solve};
use crate::exactalg::{is_prime, Coeff, Matrix};
use crate::functors::{e1_page, E1PageDescriptor};
use crate::green::{GreenFunctor, TwistedGroupRing};

/// Number of simple modules of `Mat_{matrix_size}(F_q[C_{p^m}])`.
///
/// In characteristic `p` the group algebra is local; otherwise the simples
/// correspond to the orbits of multiplication by `q` on `Z/p^m`.
pub fn simples_count(q: u64, p: u64, m: usize, char_is_p: bool, matrix_size: u64) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let mut c = matrix_size;
    while c > 1 && c.is_multiple_of(p) {
        c /= p;
    }
    if matrix_size == 0 || c != 1 {
        return Err(Error::Invalid(format!("matrix part {matrix_size} is not a power of {p}")));
    }
    if q < 2 {
        return Err(Error::Invalid(format!("{q} is not a field size")));
    }
    if char_is_p {
        if !q.is_multiple_of(p) {
            return Err(Error::Invalid(format!("a field of size {q} does not have characteristic {p}")));
        }
        return Ok(1);
    }
    if q.is_multiple_of(p) {
        return Err(Error::Invalid(format!("a field of size {q} has characteristic {p}")));
    }
    let modulus = p.pow(m as u32);
    let q = q % modulus;
    let mut seen = vec![false; modulus as usize];
    let mut orbits = 0;
    for start in 0..modulus {
        if seen[start as usize] {
            continue;
        }
        orbits += 1;
        let mut x = start;
        while !seen[x as usize] {
            seen[x as usize] = true;
            x = (x as u128 * q as u128 % modulus as u128) as u64;
        }
    }
    Ok(orbits)
}

/// The factorization `L_θ[C_{p^m}] ~ Mat_{p^c}(L^θ[C_{p^{m-c}}])`, `p^c` the order of `θ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoritaFactor {
    pub matrix_size: u64,
    pub fixed_field_size: u64,
    pub p: u64,
    pub group_exponent: usize,
    pub char_is_p: bool,
}

impl MoritaFactor {
    pub fn simples(&self) -> Result<u64> {
        simples_count(self.fixed_field_size, self.p, self.group_exponent, self.char_is_p, self.matrix_size)
    }
}

pub fn morita_factor<R: Coeff>(t: &TwistedGroupRing<R>) -> Result<MoritaFactor> {
    let l = &t.coefficient;
    let base = &l.base;
    let size = base
        .cardinality()
        .ok_or_else(|| Error::Unsupported("simple modules are counted over finite fields only".into()))?;
    if l.is_field() != Some(true) {
        return Err(Error::Unsupported("the coefficient ring is not known to be a field".into()));
    }
    let c = (0..=t.m)
        .find(|&c| t.theta.pow(base, t.p.pow(c as u32)).is_identity(base))
        .ok_or_else(|| Error::Invalid("theta does not have p-power order".into()))?;
    let shifted = t.theta.sub(base, &Matrix::identity(base, l.rank()));
    let fixed_dim = l.rank() - rank(base, &shifted);
    Ok(MoritaFactor {
        matrix_size: t.p.pow(c as u32),
        fixed_field_size: size.pow(fixed_dim as u32),
        p: t.p,
        group_exponent: t.m - c,
        char_is_p: base.characteristic() == t.p,
    })
}

pub fn twisted_simples<R: Coeff>(t: &TwistedGroupRing<R>) -> Result<u64> {
    morita_factor(t)?.simples()
}

/// Matrix units `e_ab` of `L_θ[C]` when `θ` generates a faithful action of `C` on `L`
/// and fixes exactly the base field, so that `L_θ[C] ≅ End(L)`.
pub fn twisted_matrix_units<R: Coeff>(t: &TwistedGroupRing<R>) -> Result<Vec<Vec<Vec<R::El>>>> {
    let l = &t.coefficient;
    let base = &l.base;
    let d = l.rank();
    let order = t.group_order() as usize;
    if d != order {
        return Err(Error::Unsupported("matrix units need rank(L) equal to the group order".into()));
    }
    let shifted = t.theta.sub(base, &Matrix::identity(base, d));
    if d - rank(base, &shifted) != 1 {
        return Err(Error::Unsupported("theta must fix exactly the base field".into()));
    }
    // x w^j acts on L by y ↦ x θ^j(y)
    let rep_cols: Vec<Vec<R::El>> = (0..t.ring.rank())
        .map(|idx| {
            let (a, j) = (idx % d, idx / d);
            let m = l.left_mul_matrix(&l.basis(a)).mul(base, &t.theta.pow(base, j as u64));
            m.data().to_vec()
        })
        .collect();
    let rep = Matrix::from_columns(&rep_cols, d * d);
    let mut units = vec![vec![Vec::new(); d]; d];
    for a in 0..d {
        for b in 0..d {
            let target = Matrix::from_fn(d, d, |i, j| if i == a && j == b { base.one() } else { base.zero() });
            units[a][b] = solve(base, &rep, target.data())
                .ok_or_else(|| Error::Failed("the regular representation is not surjective".into()))?;
        }
    }
    let r = &t.ring;
    let mut sum = vec![base.zero(); r.rank()];
    for a in 0..d {
        sum = r.add(&sum, &units[a][a]);
        for b in 0..d {
            for c in 0..d {
                for e in 0..d {
                    let prod = r.mul(&units[a][b], &units[c][e]);
                    let expect = if b == c { units[a][e].clone() } else { vec![base.zero(); r.rank()] };
                    if !r.eq_elements(&prod, &expect) {
                        return Err(Error::Failed(format!("e{a}{b} e{c}{e} violates the matrix unit relations")));
                    }
                }
            }
        }
    }
    if !r.eq_elements(&sum, r.unit()) {
        return Err(Error::Failed("diagonal matrix units do not sum to one".into()));
    }
    Ok(units)
}

#[derive(Clone, Debug)]
pub struct G0Term {
    pub t: usize,
    pub ring: String,
    pub rank: Option<u64>,
}

/// `π₀` of the E₁ splitting: a `G₀` rank per surviving ring.
#[derive(Clone, Debug)]
pub struct G0Splitting<R: Coeff> {
    pub page: E1PageDescriptor<R>,
    pub terms: Vec<G0Term>,
    /// Why the terms split `G₀(R)`, if they do.
    pub certificate: Option<String>,
}

impl<R: Coeff> G0Splitting<R> {
    pub fn total(&self) -> Option<u64> {
        self.certificate.as_ref()?;
        self.terms.iter().map(|t| t.rank).sum()
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

impl<R: Coeff> fmt::Display for G0Splitting<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rings: Vec<String> = self.terms.iter().map(|t| t.ring.clone()).collect();
        let ranks: Vec<String> =
            self.terms.iter().map(|t| t.rank.map_or_else(|| "?".to_string(), |r| r.to_string())).collect();
        write!(f, "rings: {}; zero-transfer: {}; ", rings.join(", "), yes_no(self.page.transfers_zero))?;
        match (&self.certificate, self.total()) {
            (Some(_), Some(total)) => write!(f, "G0 ranks {} = {total}", ranks.join("+")),
            (Some(_), None) => write!(f, "G0 ranks {} (not all computable)", ranks.join("+")),
            (None, _) => write!(f, "no splitting certificate"),
        }
    }
}

pub fn g0_splitting<R: Coeff>(r: &GreenFunctor<R>) -> Result<G0Splitting<R>> {
    let page = e1_page(r)?;
    let certificate = if page.transfers_zero {
        Some("all transfers are zero".to_string())
    } else if page.transfers_surjective {
        Some("all transfers are surjective".to_string())
    } else if page.section_exists == Some(true) {
        Some("ring-map section of the geometric fixed points".to_string())
    } else {
        None
    };
    let entries: Vec<_> = if page.transfers_surjective && !page.transfers_zero {
        page.entries.iter().take(1).collect()
    } else {
        page.entries.iter().filter(|e| !e.phi.is_zero()).collect()
    };
    let terms = entries
        .iter()
        .map(|e| G0Term { t: e.t, ring: e.name(), rank: e.twisted.as_ref().and_then(|t| twisted_simples(t).ok()) })
        .collect();
    Ok(G0Splitting { page, terms, certificate })
}
