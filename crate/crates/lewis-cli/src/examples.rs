//! Named example constructions.

use lewis::cyclic::CyclicGroup;
use lewis::exactalg::{GaloisField, Integers};
use lewis::green::{burnside_green, char_example, constant_green, fp_galois, GreenFunctor};
use lewis::mackey::twisted_burnside_c5;
use lewis::{Coeff, Error, Result};

use crate::document::{Document, Payload};

pub const NAMES: [&str; 6] =
    ["burnside", "constant-Z", "constant-Fp", "fp-galois", "twisted-burnside-c5", "char-example"];

/// Parameters of a named example; unset values take per-example defaults.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Params {
    pub p: Option<u64>,
    pub n: Option<usize>,
    pub k: Option<u32>,
}

fn green<R: Coeff>(g: GreenFunctor<R>, mackey_only: bool) -> Payload<R> {
    if mackey_only {
        Payload::Mackey(g.mackey)
    } else {
        Payload::Green(g)
    }
}

fn fixed(what: &str, given: Option<u64>, want: u64) -> Result<()> {
    match given {
        Some(v) if v != want => Err(Error::Invalid(format!("{what} must be {want} for this example"))),
        _ => Ok(()),
    }
}

/// Builds the named example. Ring-valued examples are Green documents unless `mackey_only`.
pub fn build(name: &str, params: Params, mackey_only: bool) -> Result<Document> {
    let p = params.p.unwrap_or(2);
    let n = params.n.unwrap_or(1);
    if params.k.is_some() && !["constant-Fp", "fp-galois"].contains(&name) {
        return Err(Error::Invalid(format!("example {name} takes no field degree")));
    }
    let g = || CyclicGroup::new(p, n);
    Ok(match name {
        "burnside" => green(burnside_green(g()?), mackey_only).into(),
        "constant-Z" => green(constant_green(&Integers, g()?), mackey_only).into(),
        "constant-Fp" => {
            let field = GaloisField::new(p, params.k.unwrap_or(1))?;
            green(constant_green(&field, g()?), mackey_only).into()
        }
        "fp-galois" => {
            let k = params.k.unwrap_or(if n == 0 { 1 } else { p as u32 });
            green(fp_galois(p, k, n)?, mackey_only).into()
        }
        "char-example" => {
            fixed("n", params.n.map(|v| v as u64), 1)?;
            green(char_example(p)?, mackey_only).into()
        }
        "twisted-burnside-c5" => {
            fixed("p", params.p, 5)?;
            fixed("n", params.n.map(|v| v as u64), 1)?;
            Payload::Mackey(twisted_burnside_c5()).into()
        }
        other => {
            return Err(Error::Invalid(format!("unknown example '{other}'; known: {}", NAMES.join(", "))));
        }
    })
}

/// Reads `name` or `name:p=3,n=2,k=1`; `constant-F{p}` abbreviates `constant-Fp` with that prime.
pub fn parse_spec(spec: &str) -> Result<(String, Params)> {
    let (name, args) = spec.split_once(':').unwrap_or((spec, ""));
    let mut params = Params::default();
    let mut name = name.to_string();
    if let Some(digits) =
        name.strip_prefix("constant-F").filter(|d| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()))
    {
        params.p = Some(digits.parse().map_err(|_| Error::Invalid(format!("bad prime in '{spec}'")))?);
        name = "constant-Fp".to_string();
    }
    for kv in args.split(',').filter(|s| !s.is_empty()) {
        let (key, val) =
            kv.split_once('=').ok_or_else(|| Error::Invalid(format!("expected key=value, found '{kv}'")))?;
        let bad = || Error::Invalid(format!("bad value for {key}: '{val}'"));
        match key.trim() {
            "p" => params.p = Some(val.trim().parse().map_err(|_| bad())?),
            "n" => params.n = Some(val.trim().parse().map_err(|_| bad())?),
            "k" => params.k = Some(val.trim().parse().map_err(|_| bad())?),
            other => return Err(Error::Invalid(format!("unknown parameter '{other}'"))),
        }
    }
    if !NAMES.contains(&name.as_str()) {
        return Err(Error::Invalid(format!("unknown example '{name}'; known: {}", NAMES.join(", "))));
    }
    Ok((name, params))
}
