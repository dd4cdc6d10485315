use std::fmt;

use num_bigint::BigInt;

use crate::cyclic::CyclicGroup;
use crate::error::Result;
use crate::exactalg::fpmodule::map_kernel;
use crate::exactalg::linalg::column_echelon;
use crate::exactalg::{FpModule, Integers, Matrix};
use crate::functors::{free_module, induce_mackey, restrict_mackey};
use crate::green::constant_green;
use crate::mackey::{
    check_morphism, cokernel_functor, constant_mackey, is_isomorphic, IsoOptions, MackeyFunctor, MackeyMorphism,
};

/// Result of checking `0 → Z → Ind Z → Ind Z → Z → M → 0` for `C_p`.
#[derive(Clone, Debug)]
pub struct ResolutionReport {
    pub p: u64,
    /// `(spot, exact)` for every position, including the morphism checks.
    pub spots: Vec<(String, bool)>,
    /// Multiplicities of `F_0, F_1` in the alternating sum of the free terms.
    pub alternating_class: Vec<i64>,
}

impl ResolutionReport {
    pub fn passed(&self) -> bool {
        self.spots.iter().all(|(_, ok)| *ok) && self.alternating_class.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for ResolutionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "resolution of F{} over C{}", self.p, self.p)?;
        for (spot, ok) in &self.spots {
            writeln!(f, "  {spot}: {}", if *ok { "exact" } else { "FAILED" })?;
        }
        write!(f, "  alternating class (F0, F1): {:?}", self.alternating_class)
    }
}

fn ints(rows: usize, cols: usize, f: impl Fn(usize, usize) -> i64) -> Matrix<BigInt> {
    Matrix::from_fn(rows, cols, |i, j| BigInt::from(f(i, j)))
}

/// `im f = ker g` at every level.
fn exact_at(
    mid: &MackeyFunctor<Integers>,
    dst: &MackeyFunctor<Integers>,
    f: &MackeyMorphism<Integers>,
    g: &MackeyMorphism<Integers>,
) -> bool {
    let z = Integers;
    (0..=mid.n()).all(|s| {
        let comp = g.maps[s].mul(&z, &f.maps[s]);
        if !dst.levels[s].reduce_map(&z, &comp).is_zero(&z) {
            return false;
        }
        let ker = map_kernel(&z, &mid.levels[s], &dst.levels[s], &g.maps[s]);
        let img = f.maps[s].hstack(&mid.levels[s].relation_matrix(&z));
        let ech = column_echelon(&z, &img);
        ker.inclusion.columns().iter().all(|c| ech.solve(&z, c).is_some())
    })
}

fn injective(src: &MackeyFunctor<Integers>, dst: &MackeyFunctor<Integers>, f: &MackeyMorphism<Integers>) -> bool {
    let z = Integers;
    (0..=src.n()).all(|s| map_kernel(&z, &src.levels[s], &dst.levels[s], &f.maps[s]).module.is_trivial())
}

/// Builds the free resolution of `F_p` (at `C_p/C_p`, zero at `C_p/e`) by
/// `Z`, `Ind_e Z` and checks exactness levelwise.
pub fn constant_z_resolution_check(p: u64) -> Result<ResolutionReport> {
    let z = Integers;
    let g = CyclicGroup::new(p, 1)?;
    let n = p as usize;
    let zc = constant_mackey(&z, &FpModule::free(&z, 1), g);
    let ind = induce_mackey(&restrict_mackey(&zc, 0)?, 1)?;
    let d3 = MackeyMorphism { maps: vec![ints(n, 1, |_, _| 1), ints(1, 1, |_, _| 1)] };
    let shift = |i: usize, j: usize| -> i64 { i64::from(i == (j + 1) % n) - i64::from(i == j) };
    let d2 = MackeyMorphism { maps: vec![ints(n, n, shift), ints(1, 1, |_, _| 0)] };
    let d1 = MackeyMorphism { maps: vec![ints(1, n, |_, _| 1), ints(1, 1, |_, _| p as i64)] };
    let mut spots = vec![
        ("d3 is a morphism".to_string(), check_morphism(&zc, &ind, &d3).passed()),
        ("d2 is a morphism".to_string(), check_morphism(&ind, &ind, &d2).passed()),
        ("d1 is a morphism".to_string(), check_morphism(&ind, &zc, &d1).passed()),
    ];
    spots.push(("Z -> Ind injective".to_string(), injective(&zc, &ind, &d3)));
    spots.push(("at first Ind".to_string(), exact_at(&ind, &ind, &d3, &d2)));
    spots.push(("at second Ind".to_string(), exact_at(&ind, &zc, &d2, &d1)));
    let (coker, _) = cokernel_functor(&zc, &d1)?;
    let top = FpModule::from_orders(vec![BigInt::from(p)]);
    let same = coker.levels[0].is_trivial() && coker.levels[1].isomorphic(&z, &top);
    spots.push(("cokernel is F_p at the top".to_string(), same));
    let zg = constant_green(&z, g);
    let f0 = free_module(&zg, 0)?;
    let ind_is_f0 = is_isomorphic(&ind, &f0.mackey, &IsoOptions::default()).is_iso();
    spots.push(("Ind_e Z is the free module F0".to_string(), ind_is_f0));
    // terms from the right: Z, Ind, Ind, Z as classes of (F0, F1)
    let terms = [[0, 1], [1, 0], [1, 0], [0, 1]];
    let mut alternating_class = vec![0i64; 2];
    for (k, t) in terms.iter().enumerate() {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        for (acc, c) in alternating_class.iter_mut().zip(t) {
            *acc += sign * c;
        }
    }
    Ok(ResolutionReport { p, spots, alternating_class })
}
