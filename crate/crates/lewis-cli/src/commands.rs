use std::io::Read as _;
use std::path::Path;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use lewis::exactalg::{Coeff, Matrix};
use lewis::functors::{
    brutal_green, brutal_truncation, e1_page, geometric_fixed_points_green_iter, geometric_fixed_points_iter,
    tau_geq_1, tau_green, tau_module,
};
use lewis::green::{box_product, check_green, check_green_module, GreenFunctor};
use lewis::kzero::{
    check_rfd_meadow, dim_matrix, freeness_decompose, g0_splitting, k0_free_fixed_point, random_idempotent,
    stabilizer_level,
};
use lewis::mackey::{
    check_axioms, check_cohomological, is_isomorphic, IsoOptions, IsoVerdict, MackeyFunctor, MackeyMorphism,
};
use lewis::{CheckReport, Error, Result};

use crate::document::{print_payload, Document, Payload};
use crate::examples::{build, parse_spec, Params};

#[derive(Parser, Debug)]
#[command(name = "lewis", version, about = "Mackey and Green functors for cyclic p-groups")]
pub struct Cli {
    /// Seed for randomized searches.
    #[arg(long, global = true, env = "LEWIS_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Append wall-clock timing to the report.
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

/// An input is a document path, `-` for standard input, or an example
/// name such as `burnside:p=3,n=2` or `constant-F2`.
#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the document of a named example.
    Example {
        name: String,
        #[command(flatten)]
        params: ParamArgs,
        /// Emit only the underlying Mackey functor.
        #[arg(long)]
        mackey: bool,
    },
    /// Run the axiom checks for a document.
    Check { input: String },
    /// K_0 of free modules over a fixed point functor, as a Burnside quotient.
    K0free {
        /// Green meadow to read the group and stabilizer from.
        input: Option<String>,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        n: Option<usize>,
        /// Stabilizer level r of the action on the bottom level.
        #[arg(long)]
        stab: Option<usize>,
    },
    /// Decompose the image of a random idempotent on a free module.
    Decompose {
        input: String,
        /// Free summand levels, comma separated (default: one of each level).
        #[arg(long, value_delimiter = ',')]
        summands: Vec<usize>,
        /// Which summands the idempotent keeps, as 0/1 flags (default: all).
        #[arg(long, value_delimiter = ',')]
        keep: Vec<u8>,
    },
    /// Geometric fixed points.
    Phi {
        input: String,
        /// Apply the construction this many times.
        #[arg(long, default_value_t = 1)]
        iter: usize,
    },
    /// Truncation above the trivial subgroup.
    Tau {
        input: String,
        /// Replace the bottom level by zero instead of dropping it.
        #[arg(long)]
        brutal: bool,
    },
    /// E1 page ring data and G0 splitting.
    E1 { input: String },
    /// Box product of two Mackey functors.
    Box {
        left: String,
        right: String,
        /// Compare the product against this functor.
        #[arg(long)]
        expect: Option<String>,
    },
    /// Decide whether two Mackey functors are isomorphic.
    Iso { left: String, right: String },
}

#[derive(Args, Debug, Default)]
pub struct ParamArgs {
    #[arg(long)]
    pub p: Option<u64>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Field degree for constant-Fp and fp-galois.
    #[arg(long)]
    pub k: Option<u32>,
}

/// Output of one invocation.
#[derive(Clone, Debug, Default)]
pub struct Report {
    pub command: String,
    pub lines: Vec<String>,
    /// Present when the verdict is a failure.
    pub failure: Option<String>,
    /// A result document; the report is then written as `#` comments above it.
    pub document: Option<String>,
    pub millis: Option<f64>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }

    pub fn exit_code(&self) -> i32 {
        i32::from(!self.passed())
    }

    pub fn render(&self) -> String {
        let mut head = vec![format!("command: {}", self.command)];
        head.extend(self.lines.iter().cloned());
        head.push(format!("verdict: {}", if self.passed() { "pass" } else { "fail" }));
        if let Some(why) = &self.failure {
            head.push("[failure]".to_string());
            head.extend(why.lines().map(|l| format!("reason: {l}")));
        }
        if let Some(ms) = self.millis {
            head.push(format!("timing: {ms:.3} ms"));
        }
        match &self.document {
            Some(doc) => {
                let mut out: String = head.iter().map(|l| format!("# {l}\n")).collect();
                out.push_str(doc);
                out
            }
            None => head.iter().map(|l| format!("{l}\n")).collect(),
        }
    }
}

/// Loads a document from a path, standard input (`-`) or an example spec.
pub fn load(input: &str) -> Result<Document> {
    if input == "-" {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text).map_err(|e| Error::Invalid(format!("reading stdin: {e}")))?;
        return Document::parse(&text);
    }
    if Path::new(input).exists() {
        let text = std::fs::read_to_string(input).map_err(|e| Error::Invalid(format!("reading {input}: {e}")))?;
        return Document::parse(&text).map_err(|e| match e {
            Error::Parse { line, msg } => Error::Parse { line, msg: format!("{input}: {msg}") },
            other => other,
        });
    }
    let (name, params) = parse_spec(input)
        .map_err(|e| Error::Invalid(format!("'{input}' is neither a readable file nor an example ({e})")))?;
    build(&name, params, false)
}

macro_rules! on_doc {
    ($doc:expr, $p:ident => $body:expr) => {
        match $doc {
            Document::Integral($p) => $body,
            Document::Field($p) => $body,
        }
    };
}

fn flag(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "fail"
    }
}

fn push_check(r: &mut Report, what: &str, c: &CheckReport) {
    r.lines.push(format!("{what}: {}", flag(c.passed())));
    for v in c.violations.iter().take(8) {
        r.lines.push(format!("  {v}"));
    }
    if !c.passed() && r.failure.is_none() {
        r.failure = Some(format!("{what} violated: {}", c.first().map(|v| v.to_string()).unwrap_or_default()));
    }
}

fn check<R: Coeff>(r: &mut Report, p: &Payload<R>) {
    r.lines.push(format!("kind: {}", p.kind()));
    r.lines.push(format!("dims: {:?}", p.mackey().dims()));
    match p {
        Payload::Mackey(m) => push_check(r, "mackey axioms", &check_axioms(m)),
        Payload::Green(g) => {
            push_check(r, "mackey axioms", &check_axioms(&g.mackey));
            push_check(r, "green axioms", &check_green(g));
        }
        Payload::Module(m) => {
            push_check(r, "ring mackey axioms", &check_axioms(&m.ring.mackey));
            push_check(r, "ring green axioms", &check_green(&m.ring));
            push_check(r, "module mackey axioms", &check_axioms(&m.mackey));
            push_check(r, "module axioms", &check_green_module(m));
        }
    }
    let coh = check_cohomological(p.mackey()).passed();
    r.lines.push(format!("cohomological: {}", if coh { "yes" } else { "no" }));
}

fn matrix_lines<R: Coeff>(base: &R, name: &str, m: &Matrix<R::El>) -> Vec<String> {
    let mut out = vec![format!("{name} ({}x{}):", m.rows(), m.cols())];
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(|e| base.format(e)).collect();
        out.push(format!("  [{}]", row.join(" ")));
    }
    out
}

fn morphism_lines<R: Coeff>(base: &R, name: &str, f: &MackeyMorphism<R>) -> Vec<String> {
    f.maps.iter().enumerate().flat_map(|(s, m)| matrix_lines(base, &format!("{name} level {s}"), m)).collect()
}

fn green_of<'a, R: Coeff>(p: &'a Payload<R>, what: &str) -> Result<&'a GreenFunctor<R>> {
    match p {
        Payload::Green(g) => Ok(g),
        _ => Err(Error::Invalid(format!("{what} needs a green document, got {}", p.kind()))),
    }
}

fn k0free_doc<R: Coeff>(r: &mut Report, p: &Payload<R>) -> Result<()> {
    let k = green_of(p, "k0free")?;
    check_rfd_meadow(k)?;
    let g = k.group();
    let stab = stabilizer_level(k);
    let dims = dim_matrix(k)?;
    r.lines.extend(dims.to_string().lines().map(str::to_string));
    k0free_params(r, g.p, g.n, stab)
}

fn k0free_params(r: &mut Report, p: u64, n: usize, stab: usize) -> Result<()> {
    let q = k0_free_fixed_point(p, n, stab)?;
    r.lines.push(format!("group: C{} with stabilizer C{}", p.pow(n as u32), p.pow(stab as u32)));
    r.lines.push(format!("presentation: {}", q.presentation));
    r.lines.push(format!("additive rank: {}", q.ring.rank()));
    r.lines.push(format!("generators: {}", q.generators.join(", ")));
    Ok(())
}

fn decompose<R: Coeff>(r: &mut Report, p: &Payload<R>, summands: &[usize], keep: &[u8], seed: u64) -> Result<()> {
    let k = green_of(p, "decompose")?;
    let summands: Vec<usize> = if summands.is_empty() { (0..=k.n()).collect() } else { summands.to_vec() };
    let keep: Vec<bool> =
        if keep.is_empty() { vec![true; summands.len()] } else { keep.iter().map(|&b| b != 0).collect() };
    r.lines.push(format!("free module: {}", summands.iter().map(|i| format!("F{i}")).collect::<Vec<_>>().join(" + ")));
    r.lines.push(format!("kept summands: {keep:?}"));
    let e = random_idempotent(k, &summands, &keep, seed)?;
    match freeness_decompose(k, &summands, &e, seed)? {
        Ok(d) => {
            r.lines.push(format!("image dims: {:?}", d.module.dims()));
            r.lines.push(d.to_string());
            r.lines.push("witness verified: yes".to_string());
            for (lvl, y) in &d.generators {
                let v: Vec<String> = y.iter().map(|c| k.base().format(c)).collect();
                r.lines.push(format!("generator at level {lvl}: [{}]", v.join(" ")));
            }
            r.lines.extend(morphism_lines(k.base(), "witness", &d.witness));
        }
        Err(f) => r.failure = Some(f.to_string()),
    }
    Ok(())
}

fn phi<R: Coeff>(p: &Payload<R>, iter: usize) -> Result<Payload<R>> {
    Ok(match p {
        Payload::Mackey(m) => Payload::Mackey(geometric_fixed_points_iter(m, iter)?),
        Payload::Green(g) => Payload::Green(geometric_fixed_points_green_iter(g, iter)?),
        Payload::Module(_) => return Err(Error::Unsupported("phi of a module document".into())),
    })
}

fn tau<R: Coeff>(p: &Payload<R>, brutal: bool) -> Result<Payload<R>> {
    Ok(match (p, brutal) {
        (Payload::Mackey(m), false) => Payload::Mackey(tau_geq_1(m)?),
        (Payload::Mackey(m), true) => Payload::Mackey(brutal_truncation(m)?),
        (Payload::Green(g), false) => Payload::Green(tau_green(g)?),
        (Payload::Green(g), true) => Payload::Green(brutal_green(g)?),
        (Payload::Module(m), false) => Payload::Module(tau_module(m)?),
        (Payload::Module(_), true) => return Err(Error::Unsupported("brutal truncation of a module document".into())),
    })
}

fn e1<R: Coeff>(r: &mut Report, p: &Payload<R>) -> Result<()> {
    let g = green_of(p, "e1")?;
    let page = e1_page(g)?;
    r.lines.extend(page.to_string().lines().map(str::to_string));
    let split = g0_splitting(g)?;
    r.lines.push(split.to_string());
    Ok(())
}

/// Some(true) for iso, Some(false) for a certified non-iso.
fn iso_lines<R: Coeff>(r: &mut Report, a: &MackeyFunctor<R>, b: &MackeyFunctor<R>, seed: u64) -> Option<bool> {
    let verdict = is_isomorphic(a, b, &IsoOptions::with_seed(seed));
    match &verdict {
        IsoVerdict::Isomorphic { witness, .. } => {
            r.lines.push("result: iso".to_string());
            r.lines.extend(morphism_lines(&a.base, "witness", witness));
            Some(true)
        }
        IsoVerdict::NotIsomorphic(c) => {
            r.lines.push("result: non-iso".to_string());
            r.lines.push(format!("certificate: {c}"));
            Some(false)
        }
        IsoVerdict::Inconclusive(why) => {
            r.lines.push(format!("result: inconclusive ({why})"));
            None
        }
    }
}

fn box_cmd<R: Coeff>(
    r: &mut Report,
    a: &Payload<R>,
    b: &Payload<R>,
    expect: Option<&Payload<R>>,
    seed: u64,
) -> Result<String> {
    let prod = box_product(a.mackey(), b.mackey())?.functor;
    r.lines.push(format!("dims: {:?}", prod.dims()));
    if let Some(e) = expect {
        let verdict = is_isomorphic(&prod, e.mackey(), &IsoOptions::with_seed(seed));
        r.lines.push(format!("compared with expected: {verdict}"));
        if !verdict.is_iso() {
            r.failure = Some(format!("the box product is not shown isomorphic to the expected functor: {verdict}"));
        }
    }
    Ok(print_payload(&Payload::Mackey(prod)))
}

fn iso_cmd<R: Coeff>(r: &mut Report, a: &Payload<R>, b: &Payload<R>, seed: u64) -> Result<()> {
    if iso_lines(r, a.mackey(), b.mackey(), seed).is_none() {
        r.failure = Some("no isomorphism or certificate found within the search bounds".into());
    }
    Ok(())
}

fn execute(cli: &Cli, r: &mut Report) -> Result<()> {
    let seed = cli.seed;
    match &cli.command {
        Command::Example { name, params, mackey } => {
            let (name, mut spec) = parse_spec(name)?;
            spec = Params { p: params.p.or(spec.p), n: params.n.or(spec.n), k: params.k.or(spec.k) };
            let doc = build(&name, spec, *mackey)?;
            r.lines.push(format!("example: {name}"));
            r.document = Some(doc.print());
        }
        Command::Check { input } => on_doc!(&load(input)?, p => check(r, p)),
        Command::K0free { input, p, n, stab } => match input {
            Some(i) => on_doc!(&load(i)?, d => k0free_doc(r, d)?),
            None => {
                let missing = || Error::Invalid("k0free needs a document or --p, --n and --stab".into());
                k0free_params(r, p.ok_or_else(missing)?, n.ok_or_else(missing)?, stab.ok_or_else(missing)?)?
            }
        },
        Command::Decompose { input, summands, keep } => {
            on_doc!(&load(input)?, d => decompose(r, d, summands, keep, seed)?)
        }
        Command::Phi { input, iter } => {
            let doc = load(input)?;
            let out: Document = on_doc!(&doc, d => phi(d, *iter)?.into());
            r.lines.push(format!("dims: {:?}", on_doc!(&out, d => d.mackey().dims())));
            r.document = Some(out.print());
        }
        Command::Tau { input, brutal } => {
            let doc = load(input)?;
            let out: Document = on_doc!(&doc, d => tau(d, *brutal)?.into());
            r.lines.push(format!("dims: {:?}", on_doc!(&out, d => d.mackey().dims())));
            r.document = Some(out.print());
        }
        Command::E1 { input } => on_doc!(&load(input)?, d => e1(r, d)?),
        Command::Box { left, right, expect } => {
            let (a, b) = (load(left)?, load(right)?);
            let e = expect.as_deref().map(load).transpose()?;
            let doc = match (&a, &b, &e) {
                (Document::Integral(x), Document::Integral(y), None) => box_cmd(r, x, y, None, seed)?,
                (Document::Integral(x), Document::Integral(y), Some(Document::Integral(z))) => {
                    box_cmd(r, x, y, Some(z), seed)?
                }
                (Document::Field(x), Document::Field(y), None) => box_cmd(r, x, y, None, seed)?,
                (Document::Field(x), Document::Field(y), Some(Document::Field(z))) => box_cmd(r, x, y, Some(z), seed)?,
                _ => return Err(Error::Invalid("documents over different bases".into())),
            };
            r.document = Some(doc);
        }
        Command::Iso { left, right } => {
            let (a, b) = (load(left)?, load(right)?);
            match (&a, &b) {
                (Document::Integral(x), Document::Integral(y)) => iso_cmd(r, x, y, seed)?,
                (Document::Field(x), Document::Field(y)) => iso_cmd(r, x, y, seed)?,
                _ => return Err(Error::Invalid("documents over different bases".into())),
            }
        }
    }
    Ok(())
}

/// Runs one invocation; `args` includes the program name.
pub fn run<I, T>(args: I) -> (String, i32)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (e.render().to_string(), code);
        }
    };
    let start = Instant::now();
    let mut report = Report { command: echo(&cli), ..Report::default() };
    let outcome = execute(&cli, &mut report);
    if let Err(e) = outcome {
        report.document = None;
        report.failure = Some(format!("error: {e}"));
        if cli.timing {
            report.millis = Some(start.elapsed().as_secs_f64() * 1e3);
        }
        return (report.render(), 2);
    }
    if cli.timing {
        report.millis = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    (report.render(), report.exit_code())
}

fn echo(cli: &Cli) -> String {
    let words = match &cli.command {
        Command::Example { name, params, mackey } => {
            let mut w = vec!["example".to_string(), name.clone()];
            w.extend(params.p.map(|v| format!("--p {v}")));
            w.extend(params.n.map(|v| format!("--n {v}")));
            w.extend(params.k.map(|v| format!("--k {v}")));
            if *mackey {
                w.push("--mackey".into());
            }
            w
        }
        Command::Check { input } => vec!["check".into(), input.clone()],
        Command::K0free { input, p, n, stab } => {
            let mut w = vec!["k0free".to_string()];
            w.extend(input.clone());
            w.extend(p.map(|v| format!("--p {v}")));
            w.extend(n.map(|v| format!("--n {v}")));
            w.extend(stab.map(|v| format!("--stab {v}")));
            w
        }
        Command::Decompose { input, summands, keep } => {
            let mut w = vec!["decompose".to_string(), input.clone()];
            if !summands.is_empty() {
                w.push(format!("--summands {}", summands.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(",")));
            }
            if !keep.is_empty() {
                w.push(format!("--keep {}", keep.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(",")));
            }
            w.push(format!("--seed {}", cli.seed));
            w
        }
        Command::Phi { input, iter } => vec!["phi".into(), input.clone(), format!("--iter {iter}")],
        Command::Tau { input, brutal } => {
            let mut w = vec!["tau".to_string(), input.clone()];
            if *brutal {
                w.push("--brutal".into());
            }
            w
        }
        Command::E1 { input } => vec!["e1".into(), input.clone()],
        Command::Box { left, right, expect } => {
            let mut w = vec!["box".to_string(), left.clone(), right.clone()];
            w.extend(expect.as_ref().map(|e| format!("--expect {e}")));
            w
        }
        Command::Iso { left, right } => vec!["iso".into(), left.clone(), right.clone(), format!("--seed {}", cli.seed)],
    };
    format!("lewis {}", words.join(" "))
}
