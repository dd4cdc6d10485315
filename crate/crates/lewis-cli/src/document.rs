//! Line-oriented text format for Mackey functors, Green functors and modules.
//!
//! ```text
//! kind green
//! p 2
//! n 1
//! base GF(2,1,1:1)
//! [functor]
//! level 0 gens 1
//! level 1 gens 2
//! rel 0 2
//! res 0 rows 1 cols 2
//! row 1 1
//! ...
//! [rings]
//! ring 0 rank 1
//! labels 1
//! unit 1
//! mult 0 0 1
//! ```
//!
//! `rel` lines give relation vectors for the level declared just above them.
//! Matrices are a header followed by exactly `rows` lines of the form `row e1 e2 ..`.
//! Field elements are written as coefficient vectors `[c0,c1,..]` on the power
//! basis of the modulus in the header (plain residues for prime fields).

use std::fmt::Write as _;

use lewis::cyclic::CyclicGroup;
use lewis::exactalg::{from_relations, gf_make, BasedRing, Coeff, FpModule, GaloisField, Integers, Matrix};
use lewis::green::{GreenFunctor, GreenModule};
use lewis::mackey::MackeyFunctor;
use lewis::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub enum Payload<R: Coeff> {
    Mackey(MackeyFunctor<R>),
    Green(GreenFunctor<R>),
    Module(GreenModule<R>),
}

impl<R: Coeff> Payload<R> {
    pub fn kind(&self) -> &'static str {
        match self {
            Payload::Mackey(_) => "mackey",
            Payload::Green(_) => "green",
            Payload::Module(_) => "module",
        }
    }

    /// The underlying Mackey functor (the module itself for modules).
    pub fn mackey(&self) -> &MackeyFunctor<R> {
        match self {
            Payload::Mackey(m) => m,
            Payload::Green(g) => &g.mackey,
            Payload::Module(m) => &m.mackey,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Document {
    Integral(Payload<Integers>),
    Field(Payload<GaloisField>),
}

impl From<Payload<Integers>> for Document {
    fn from(p: Payload<Integers>) -> Self {
        Document::Integral(p)
    }
}

impl From<Payload<GaloisField>> for Document {
    fn from(p: Payload<GaloisField>) -> Self {
        Document::Field(p)
    }
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Integral(p) => p.kind(),
            Document::Field(p) => p.kind(),
        }
    }

    pub fn group(&self) -> CyclicGroup {
        match self {
            Document::Integral(p) => p.mackey().group,
            Document::Field(p) => p.mackey().group,
        }
    }

    pub fn print(&self) -> String {
        match self {
            Document::Integral(p) => print_payload(p),
            Document::Field(p) => print_payload(p),
        }
    }

    pub fn parse(text: &str) -> Result<Document> {
        parse(text)
    }
}

pub fn print_payload<R: Coeff>(payload: &Payload<R>) -> String {
    let mut out = String::new();
    let m = payload.mackey();
    let base = &m.base;
    let _ = writeln!(out, "kind {}", payload.kind());
    let _ = writeln!(out, "p {}", m.group.p);
    let _ = writeln!(out, "n {}", m.group.n);
    let _ = writeln!(out, "base {}", base.describe());
    match payload {
        Payload::Mackey(m) => print_functor(&mut out, "functor", m),
        Payload::Green(g) => {
            print_functor(&mut out, "functor", &g.mackey);
            print_rings(&mut out, &g.rings);
        }
        Payload::Module(md) => {
            print_functor(&mut out, "functor", &md.ring.mackey);
            print_rings(&mut out, &md.ring.rings);
            print_functor(&mut out, "module", &md.mackey);
            out.push_str("[actions]\n");
            for (s, acts) in md.actions.iter().enumerate() {
                for (i, a) in acts.iter().enumerate() {
                    print_matrix(&mut out, &format!("action {s} {i}"), base, a);
                }
            }
        }
    }
    out
}

fn print_functor<R: Coeff>(out: &mut String, section: &str, m: &MackeyFunctor<R>) {
    let base = &m.base;
    let _ = writeln!(out, "[{section}]");
    for (s, l) in m.levels.iter().enumerate() {
        let _ = writeln!(out, "level {s} gens {}", l.gens());
        for (i, o) in l.orders().iter().enumerate() {
            if !base.is_zero(o) {
                let v: Vec<String> =
                    (0..l.gens()).map(|j| if j == i { base.format(o) } else { base.format(&base.zero()) }).collect();
                let _ = writeln!(out, "rel {}", v.join(" "));
            }
        }
    }
    for (s, a) in m.res.iter().enumerate() {
        print_matrix(out, &format!("res {s}"), base, a);
    }
    for (s, a) in m.tr.iter().enumerate() {
        print_matrix(out, &format!("tr {s}"), base, a);
    }
    for (s, a) in m.weyl.iter().enumerate() {
        print_matrix(out, &format!("weyl {s}"), base, a);
    }
}

fn print_rings<R: Coeff>(out: &mut String, rings: &[BasedRing<R>]) {
    out.push_str("[rings]\n");
    for (s, r) in rings.iter().enumerate() {
        let base = &r.base;
        let _ = writeln!(out, "ring {s} rank {}", r.rank());
        let labels: Vec<String> = r.labels.iter().map(|l| l.split_whitespace().collect::<Vec<_>>().join("_")).collect();
        keyed_line(out, "labels", &labels.join(" "));
        keyed_line(out, "unit", &elements(base, r.unit()));
        for i in 0..r.rank() {
            for j in 0..r.rank() {
                keyed_line(out, &format!("mult {i} {j}"), &elements(base, r.structure(i, j)));
            }
        }
    }
}

fn keyed_line(out: &mut String, key: &str, rest: &str) {
    if rest.is_empty() {
        let _ = writeln!(out, "{key}");
    } else {
        let _ = writeln!(out, "{key} {rest}");
    }
}

fn elements<R: Coeff>(base: &R, v: &[R::El]) -> String {
    v.iter().map(|e| base.format(e)).collect::<Vec<_>>().join(" ")
}

fn print_matrix<R: Coeff>(out: &mut String, head: &str, base: &R, a: &Matrix<R::El>) {
    let _ = writeln!(out, "{head} rows {} cols {}", a.rows(), a.cols());
    for i in 0..a.rows() {
        keyed_line(out, "row", &elements(base, a.row(i)));
    }
}

struct Cursor<'a> {
    lines: Vec<(usize, &'a str)>,
    pos: usize,
}

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        let lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
            .collect();
        Cursor { lines, pos: 0 }
    }

    fn peek(&self) -> Option<(usize, &'a str)> {
        self.lines.get(self.pos).copied()
    }

    fn next(&mut self) -> Option<(usize, &'a str)> {
        let l = self.peek();
        self.pos += 1;
        l
    }

    fn last_line(&self) -> usize {
        self.lines.last().map_or(1, |l| l.0)
    }

    /// The next line, which must start with `key`; returns its remaining words.
    fn expect(&mut self, key: &str) -> Result<(usize, Vec<&'a str>)> {
        let (ln, line) =
            self.next().ok_or_else(|| perr(self.last_line(), format!("expected '{key}', found end of input")))?;
        let mut words = line.split_whitespace();
        if words.next() != Some(key) {
            return Err(perr(ln, format!("expected '{key}', found '{line}'")));
        }
        Ok((ln, words.collect()))
    }

    fn section(&mut self, name: &str) -> Result<()> {
        let want = format!("[{name}]");
        match self.next() {
            Some((_, l)) if l == want => Ok(()),
            Some((ln, l)) => Err(perr(ln, format!("expected section {want}, found '{l}'"))),
            None => Err(perr(self.last_line(), format!("missing section {want}"))),
        }
    }

    fn at_keyword(&self, key: &str) -> bool {
        self.peek().is_some_and(|(_, l)| l.split_whitespace().next() == Some(key))
    }
}

fn num<T: std::str::FromStr>(ln: usize, w: Option<&&str>, what: &str) -> Result<T> {
    w.and_then(|s| s.parse().ok()).ok_or_else(|| perr(ln, format!("expected {what}")))
}

/// `words` must be exactly `[k0, v0, k1, v1, ..]` with the given keys and numeric values.
fn keyed(ln: usize, words: &[&str], fixed: &[usize], keys: &[&str]) -> Result<Vec<usize>> {
    let mut vals = Vec::new();
    let mut i = 0;
    for (k, f) in fixed.iter().enumerate() {
        let v: usize = num(ln, words.get(i), &format!("index {}", k + 1))?;
        if v != *f {
            return Err(perr(ln, format!("expected index {f}, found {v}")));
        }
        i += 1;
    }
    for key in keys {
        if words.get(i) != Some(key) {
            return Err(perr(ln, format!("expected '{key}'")));
        }
        vals.push(num(ln, words.get(i + 1), &format!("a number after '{key}'"))?);
        i += 2;
    }
    if i != words.len() {
        return Err(perr(ln, "trailing words"));
    }
    Ok(vals)
}

fn parse_elements<R: Coeff>(ln: usize, base: &R, words: &[&str], len: usize) -> Result<Vec<R::El>> {
    if words.len() != len {
        return Err(perr(ln, format!("expected {len} entries, found {}", words.len())));
    }
    words.iter().map(|w| base.parse(w).map_err(|e| perr(ln, e.to_string()))).collect()
}

fn parse_matrix<R: Coeff>(cur: &mut Cursor<'_>, base: &R, key: &str, index: &[usize]) -> Result<Matrix<R::El>> {
    let (ln, words) = cur.expect(key)?;
    let v = keyed(ln, &words, index, &["rows", "cols"])?;
    let (rows, cols) = (v[0], v[1]);
    let mut data = Vec::with_capacity(rows * cols);
    for _ in 0..rows {
        let (ln, words) = cur.expect("row")?;
        data.extend(parse_elements(ln, base, &words, cols)?);
    }
    Ok(Matrix::from_vec(rows, cols, data))
}

/// A parsed level: the module and the change of generators from the raw coordinates.
struct Level<E> {
    module: FpModule<E>,
    proj: Matrix<E>,
    section: Matrix<E>,
    raw: usize,
    identity: bool,
}

fn parse_level<R: Coeff>(cur: &mut Cursor<'_>, base: &R, s: usize) -> Result<Level<R::El>> {
    let (ln, words) = cur.expect("level")?;
    let gens = keyed(ln, &words, &[s], &["gens"])?[0];
    let mut rels = Vec::new();
    while cur.at_keyword("rel") {
        let (ln, words) = cur.expect("rel")?;
        rels.push(parse_elements(ln, base, &words, gens)?);
    }
    let mut orders = vec![base.zero(); gens];
    let canonical = rels.iter().all(|r| {
        let nz: Vec<usize> = (0..gens).filter(|&i| !base.is_zero(&r[i])).collect();
        nz.len() == 1 && {
            let (i, o) = (nz[0], &r[nz[0]]);
            let fresh = base.is_zero(&orders[i]);
            orders[i] = o.clone();
            fresh && !base.is_unit(o) && base.is_one(&base.normalizer(o))
        }
    });
    if canonical {
        let id = Matrix::identity(base, gens);
        return Ok(Level {
            module: FpModule::from_orders(orders),
            proj: id.clone(),
            section: id,
            raw: gens,
            identity: true,
        });
    }
    let rel = Matrix::from_columns(&rels, gens);
    let p = from_relations(base, gens, &rel);
    Ok(Level { module: p.module, proj: p.proj, section: p.section, raw: gens, identity: false })
}

fn check_shape<E: Clone + PartialEq>(ln: usize, what: &str, m: &Matrix<E>, rows: usize, cols: usize) -> Result<()> {
    if m.shape() != (rows, cols) {
        return Err(perr(ln, format!("{what} must be {rows}x{cols}, found {}x{}", m.rows(), m.cols())));
    }
    Ok(())
}

fn parse_functor<R: Coeff>(
    cur: &mut Cursor<'_>,
    base: &R,
    g: CyclicGroup,
    section: &str,
) -> Result<(MackeyFunctor<R>, Vec<Level<R::El>>)> {
    cur.section(section)?;
    let n = g.n;
    let levels = (0..=n).map(|s| parse_level(cur, base, s)).collect::<Result<Vec<_>>>()?;
    let mut read = |key: &str, s: usize, rows: usize, cols: usize| -> Result<Matrix<R::El>> {
        let ln = cur.peek().map_or(cur.last_line(), |l| l.0);
        let m = parse_matrix(cur, base, key, &[s])?;
        check_shape(ln, &format!("{key} {s}"), &m, rows, cols)?;
        Ok(m)
    };
    let mut res = Vec::with_capacity(n);
    for s in 0..n {
        let a = read("res", s, levels[s].raw, levels[s + 1].raw)?;
        res.push(levels[s].proj.mul(base, &a).mul(base, &levels[s + 1].section));
    }
    let mut tr = Vec::with_capacity(n);
    for s in 0..n {
        let a = read("tr", s, levels[s + 1].raw, levels[s].raw)?;
        tr.push(levels[s + 1].proj.mul(base, &a).mul(base, &levels[s].section));
    }
    let mut weyl = Vec::with_capacity(n + 1);
    for (s, l) in levels.iter().enumerate() {
        let a = read("weyl", s, l.raw, l.raw)?;
        weyl.push(l.proj.mul(base, &a).mul(base, &l.section));
    }
    let ln = cur.peek().map_or(cur.last_line(), |l| l.0);
    let modules = levels.iter().map(|l| l.module.clone()).collect();
    let m = MackeyFunctor::new(g, base.clone(), modules, res, tr, weyl).map_err(|e| perr(ln, e.to_string()))?;
    Ok((m, levels))
}

fn combine<R: Coeff>(base: &R, coeffs: &[R::El], vecs: impl Fn(usize) -> Vec<R::El>, len: usize) -> Vec<R::El> {
    let mut acc = vec![base.zero(); len];
    for (a, c) in coeffs.iter().enumerate() {
        if !base.is_zero(c) {
            for (x, y) in acc.iter_mut().zip(vecs(a)) {
                *x = base.add(x, &base.mul(c, &y));
            }
        }
    }
    acc
}

fn parse_rings<R: Coeff>(cur: &mut Cursor<'_>, base: &R, levels: &[Level<R::El>]) -> Result<Vec<BasedRing<R>>> {
    cur.section("rings")?;
    let mut rings = Vec::with_capacity(levels.len());
    for (s, l) in levels.iter().enumerate() {
        let (ln, words) = cur.expect("ring")?;
        let rank = keyed(ln, &words, &[s], &["rank"])?[0];
        if rank != l.raw {
            return Err(perr(ln, format!("ring rank {rank} does not match level {s} with {} generators", l.raw)));
        }
        let (ln, labels) = cur.expect("labels")?;
        if labels.len() != rank {
            return Err(perr(ln, format!("expected {rank} labels")));
        }
        let (ln, words) = cur.expect("unit")?;
        let unit = parse_elements(ln, base, &words, rank)?;
        let mut mult = vec![Vec::new(); rank * rank];
        for i in 0..rank {
            for j in 0..rank {
                let (ln, words) = cur.expect("mult")?;
                if words.len() < 2 || words[0].parse() != Ok(i) || words[1].parse() != Ok(j) {
                    return Err(perr(ln, format!("expected 'mult {i} {j} ..'")));
                }
                mult[i * rank + j] = parse_elements(ln, base, &words[2..], rank)?;
            }
        }
        let d = l.module.gens();
        let col = |m: &Matrix<R::El>, i: usize| m.column(i);
        let product = |i: usize, j: usize| -> Vec<R::El> {
            let (a, b) = (col(&l.section, i), col(&l.section, j));
            let raw = combine(base, &a, |x| combine(base, &b, |y| mult[x * rank + y].clone(), rank), rank);
            l.proj.apply(base, &raw)
        };
        let labels: Vec<String> = if l.identity {
            labels.iter().map(|s| s.to_string()).collect()
        } else {
            (0..d).map(|i| format!("e{i}")).collect()
        };
        let ring = BasedRing::with_orders(
            base.clone(),
            d,
            product,
            l.proj.apply(base, &unit),
            labels,
            l.module.orders().to_vec(),
        )
        .map_err(|e| perr(ln, e.to_string()))?;
        rings.push(ring);
    }
    Ok(rings)
}

fn parse_actions<R: Coeff>(
    cur: &mut Cursor<'_>,
    base: &R,
    ring_levels: &[Level<R::El>],
    levels: &[Level<R::El>],
) -> Result<Vec<Vec<Matrix<R::El>>>> {
    cur.section("actions")?;
    let mut out = Vec::with_capacity(levels.len());
    for (s, (rl, l)) in ring_levels.iter().zip(levels).enumerate() {
        let mut raw = Vec::with_capacity(rl.raw);
        for i in 0..rl.raw {
            let ln = cur.peek().map_or(cur.last_line(), |l| l.0);
            let a = parse_matrix(cur, base, "action", &[s, i])?;
            check_shape(ln, &format!("action {s} {i}"), &a, l.raw, l.raw)?;
            raw.push(a);
        }
        let acts = (0..rl.module.gens())
            .map(|i| {
                let c = rl.section.column(i);
                let mut acc = Matrix::zeros(base, l.raw, l.raw);
                for (a, x) in c.iter().zip(&raw) {
                    acc = acc.add(base, &x.scale(base, a));
                }
                l.proj.mul(base, &acc).mul(base, &l.section)
            })
            .collect();
        out.push(acts);
    }
    Ok(out)
}

fn parse_payload<R: Coeff>(
    cur: &mut Cursor<'_>,
    base: R,
    kind: &str,
    kind_line: usize,
    g: CyclicGroup,
) -> Result<Payload<R>> {
    let (m, levels) = parse_functor(cur, &base, g, "functor")?;
    let payload = match kind {
        "mackey" => Payload::Mackey(m),
        "green" | "module" => {
            let ln = cur.peek().map_or(cur.last_line(), |l| l.0);
            let rings = parse_rings(cur, &base, &levels)?;
            let green = GreenFunctor::new(m, rings).map_err(|e| perr(ln, e.to_string()))?;
            if kind == "green" {
                Payload::Green(green)
            } else {
                let (mm, mlevels) = parse_functor(cur, &base, g, "module")?;
                let ln = cur.peek().map_or(cur.last_line(), |l| l.0);
                let actions = parse_actions(cur, &base, &levels, &mlevels)?;
                Payload::Module(GreenModule::new(green, mm, actions).map_err(|e| perr(ln, e.to_string()))?)
            }
        }
        other => return Err(perr(kind_line, format!("unknown kind '{other}'"))),
    };
    if let Some((ln, l)) = cur.peek() {
        return Err(perr(ln, format!("unexpected '{l}' after the document")));
    }
    Ok(payload)
}

/// `Z`, `GF(p,k,m0:..:mk)` or `GF(p,k)` with the default modulus.
pub fn parse_base(ln: usize, text: &str) -> Result<Option<GaloisField>> {
    if text == "Z" {
        return Ok(None);
    }
    let inner = text
        .strip_prefix("GF(")
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| perr(ln, format!("unknown base '{text}'")))?;
    let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
    let p: u64 = num(ln, parts.first(), "a prime")?;
    let k: u32 = if parts.len() > 1 { num(ln, parts.get(1), "a degree")? } else { 1 };
    let field = match parts.get(2) {
        Some(m) => {
            let modulus = m.split(':').map(|c| c.trim().parse::<u32>()).collect::<std::result::Result<Vec<_>, _>>();
            let modulus = modulus.map_err(|_| perr(ln, "modulus coefficients must be integers"))?;
            gf_make(p, k, &modulus)
        }
        None => GaloisField::new(p, k),
    };
    if parts.len() > 3 {
        return Err(perr(ln, "GF takes at most three arguments"));
    }
    field.map(Some).map_err(|e| perr(ln, e.to_string()))
}

pub fn parse(text: &str) -> Result<Document> {
    let mut cur = Cursor::new(text);
    let (kind_line, words) = cur.expect("kind")?;
    let kind = words.first().copied().ok_or_else(|| perr(kind_line, "missing kind"))?;
    if !["mackey", "green", "module"].contains(&kind) {
        return Err(perr(kind_line, format!("unknown kind '{kind}'")));
    }
    let (ln, words) = cur.expect("p")?;
    let p: u64 = num(ln, words.first(), "a prime")?;
    let (ln2, words) = cur.expect("n")?;
    let n: usize = num(ln2, words.first(), "a level count")?;
    let g = CyclicGroup::new(p, n).map_err(|e| perr(ln, e.to_string()))?;
    let (ln, words) = cur.expect("base")?;
    let base = parse_base(ln, &words.join(""))?;
    Ok(match base {
        None => Document::Integral(parse_payload(&mut cur, Integers, kind, kind_line, g)?),
        Some(f) => Document::Field(parse_payload(&mut cur, f, kind, kind_line, g)?),
    })
}
