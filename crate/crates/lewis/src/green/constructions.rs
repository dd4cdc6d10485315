use crate::cyclic::{burnside_ring_over, CyclicGroup};
use crate::error::{Error, Result};
use crate::exactalg::linalg::column_echelon;
use crate::exactalg::{BasedRing, Coeff, FpModule, GaloisField, Integers, Matrix};
use crate::mackey::{burnside_mackey_over, constant_mackey, fixed_point_with_bases};

use super::functor::{GreenFunctor, GreenModule};

/// The constant Green functor on the base ring.
pub fn constant_green<R: Coeff>(base: &R, g: CyclicGroup) -> GreenFunctor<R> {
    let mackey = constant_mackey(base, &FpModule::free(base, 1), g);
    let ring = BasedRing::new(base.clone(), 1, |_, _| vec![base.one()], vec![base.one()], vec!["1".into()])
        .expect("rank one ring");
    GreenFunctor::new(mackey, vec![ring; g.levels()]).expect("constant green shapes")
}

/// Burnside Green functor with coefficients in `base`.
pub fn burnside_green_over<R: Coeff>(base: &R, g: CyclicGroup) -> GreenFunctor<R> {
    let mackey = burnside_mackey_over(base, g);
    let rings = (0..=g.n).map(|s| burnside_ring_over(base, g.subgroup(s))).collect();
    GreenFunctor::new(mackey, rings).expect("burnside green shapes")
}

pub fn burnside_green(g: CyclicGroup) -> GreenFunctor<Integers> {
    burnside_green_over(&Integers, g)
}

/// The Burnside Green functor of `C_p` reduced mod `p`: top level `F_p[t]/(t^2)`, bottom `F_p`.
pub fn char_example(p: u64) -> Result<GreenFunctor<GaloisField>> {
    let fp = GaloisField::prime(p)?;
    Ok(burnside_green_over(&fp, CyclicGroup::new(p, 1)?))
}

/// `F_{p^k}` as a ring over `F_p` on the power basis, with its Frobenius matrix.
pub fn galois_based_ring(field: &GaloisField) -> Result<(BasedRing<GaloisField>, Matrix<u32>)> {
    let p = field.p() as u64;
    let k = field.degree() as usize;
    let fp = GaloisField::prime(p)?;
    let basis_el = |i: usize| -> u32 {
        let mut c = vec![0u32; k];
        c[i] = 1;
        field.from_coefficients(&c)
    };
    let ring = BasedRing::new(
        fp.clone(),
        k,
        |i, j| field.coefficients(field.mul(&basis_el(i), &basis_el(j))),
        field.coefficients(field.one()),
        (0..k).map(|i| if i == 0 { "1".to_string() } else { format!("a^{i}") }).collect(),
    )?;
    let cols: Vec<Vec<u32>> = (0..k).map(|i| field.coefficients(field.frobenius(basis_el(i)))).collect();
    Ok((ring, Matrix::from_columns(&cols, k)))
}

fn express<R: Coeff>(base: &R, basis: &Matrix<R::El>, v: &[R::El]) -> Result<Vec<R::El>> {
    column_echelon(base, basis).solve(base, v).ok_or_else(|| Error::Failed("element outside the fixed subspace".into()))
}

/// Checks that `rho` is a ring automorphism of `l`.
pub fn check_ring_automorphism<R: Coeff>(l: &BasedRing<R>, rho: &Matrix<R::El>) -> Result<()> {
    let base = &l.base;
    let r = l.rank();
    if rho.shape() != (r, r) {
        return Err(Error::Dimension("automorphism matrix has the wrong shape".into()));
    }
    if !crate::exactalg::linalg::is_invertible(base, rho) {
        return Err(Error::Invalid("automorphism matrix is not invertible".into()));
    }
    if !l.eq_elements(&rho.apply(base, l.unit()), l.unit()) {
        return Err(Error::Invalid("automorphism does not fix the unit".into()));
    }
    for i in 0..r {
        for j in 0..r {
            let lhs = rho.apply(base, &l.mul(&l.basis(i), &l.basis(j)));
            let rhs = l.mul(&rho.apply(base, &l.basis(i)), &rho.apply(base, &l.basis(j)));
            if !l.eq_elements(&lhs, &rhs) {
                return Err(Error::Invalid(format!("automorphism is not multiplicative on basis pair ({i}, {j})")));
            }
        }
    }
    Ok(())
}

/// Fixed-point Green functor `FP(L)` of a ring with an action of the generator.
pub fn fixed_point_green<R: Coeff>(l: &BasedRing<R>, rho: &Matrix<R::El>, g: CyclicGroup) -> Result<GreenFunctor<R>> {
    check_ring_automorphism(l, rho)?;
    let base = &l.base;
    let (mackey, bases) = fixed_point_with_bases(base, rho, g)?;
    let rings = bases
        .iter()
        .enumerate()
        .map(|(s, b)| {
            let cols = b.columns();
            let d = cols.len();
            let mut table = Vec::with_capacity(d * d);
            for x in &cols {
                for y in &cols {
                    table.push(express(base, b, &l.mul(x, y))?);
                }
            }
            let unit = express(base, b, l.unit())?;
            BasedRing::new(
                base.clone(),
                d,
                |i, j| table[i * d + j].clone(),
                unit,
                (0..d).map(|i| format!("f{s}_{i}")).collect(),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    GreenFunctor::new(mackey, rings)
}

/// `FP(F_{p^k})` over `F_p` for `C_{p^n}` acting through Frobenius; needs `k | p^n`.
pub fn fp_galois(p: u64, k: u32, n: usize) -> Result<GreenFunctor<GaloisField>> {
    let g = CyclicGroup::new(p, n)?;
    if g.order() % k as u64 != 0 {
        return Err(Error::Invalid(format!(
            "Frobenius of F_{p}^{k} has order {k}, which does not divide {}",
            g.order()
        )));
    }
    let field = GaloisField::new(p, k)?;
    let (ring, frob) = galois_based_ring(&field)?;
    fixed_point_green(&ring, &frob, g)
}

/// Fixed points of a module `V` over the twisted group ring `L_θ[C_{p^n}]`, as a module over `FP(L)`.
///
/// `mu[i]` is multiplication by the `i`-th basis element of `L` on `V`; `rho_v`
/// is the action of the generator on `V`.
pub fn fixed_point_module<R: Coeff>(
    l: &BasedRing<R>,
    rho_l: &Matrix<R::El>,
    mu: &[Matrix<R::El>],
    rho_v: &Matrix<R::El>,
    g: CyclicGroup,
) -> Result<GreenModule<R>> {
    let base = &l.base;
    if mu.len() != l.rank() {
        return Err(Error::Dimension("one action matrix per basis element of L is required".into()));
    }
    for (i, a) in mu.iter().enumerate() {
        let lhs = rho_v.mul(base, a);
        let image = rho_l.apply(base, &l.basis(i));
        let mut twisted = Matrix::zeros(base, a.rows(), a.cols());
        for (c, b) in image.iter().zip(mu) {
            twisted = twisted.add(base, &b.scale(base, c));
        }
        if lhs != twisted.mul(base, rho_v) {
            return Err(Error::Invalid(format!("action of basis element {i} is not semilinear")));
        }
    }
    let ring = fixed_point_green(l, rho_l, g)?;
    let (_, lbases) = fixed_point_with_bases(base, rho_l, g)?;
    let (mackey, vbases) = fixed_point_with_bases(base, rho_v, g)?;
    let actions = (0..=g.n)
        .map(|s| {
            lbases[s]
                .columns()
                .iter()
                .map(|x| {
                    let mut m = Matrix::zeros(base, rho_v.rows(), rho_v.rows());
                    for (c, b) in x.iter().zip(mu) {
                        m = m.add(base, &b.scale(base, c));
                    }
                    let image = m.mul(base, &vbases[s]);
                    let cols =
                        image.columns().iter().map(|c| express(base, &vbases[s], c)).collect::<Result<Vec<_>>>()?;
                    Ok(Matrix::from_columns(&cols, vbases[s].cols()))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    GreenModule::new(ring, mackey, actions)
}
