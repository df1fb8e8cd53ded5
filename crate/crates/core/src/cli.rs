//! The `ksbicat` command line.
//!
//! Exit codes: 0 pass, 1 verified negative, 2 inconclusive (partial
//! factorization), 3 input error.

use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use crate::algebra::{center, primitive_idempotents, Algebra, CayleyTable, Quiver};
use crate::error::Error;
use crate::io::{generate, parse_factor, vector_strings, write_atomically, CommandReport, GenerateKind, Instance};
use crate::kstheory::{
    adjointify, associated_idempotent, frobenius_from_splitting, ks_decompose, ks_decompose_seeded,
    match_decompositions, split_by_idempotent, strong_indecomposability_report, verify_direct_sum,
    verify_raw_direct_sum, verify_splitting_datum, MatchStrategy, RawDirectSum,
};
use crate::linalg::Field;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Strategy {
    Idempotent,
    Recursive,
    Both,
}

impl From<Strategy> for MatchStrategy {
    fn from(s: Strategy) -> MatchStrategy {
        match s {
            Strategy::Idempotent => MatchStrategy::Idempotent,
            Strategy::Recursive => MatchStrategy::Recursive,
            Strategy::Both => MatchStrategy::Both,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Kind {
    GroupAlgebra,
    MatrixAlgebra,
    PathAlgebra,
    Product,
    Scrambled,
}

#[derive(Debug, Parser)]
#[command(name = "ksbicat", version, about = "Krull-Schmidt decompositions of finite-dimensional algebras")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Seed for every randomized choice.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Treat a partial factorization as a failure.
    #[arg(long, global = true)]
    strict: bool,
    /// Also write the report to this file.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Center of an algebra.
    Center { file: PathBuf, alg: String },
    /// Primitive central idempotents.
    Idempotents { file: PathBuf, alg: String },
    /// Decompose an algebra into strongly indecomposable summands.
    Decompose { file: PathBuf, alg: String },
    /// Check a direct-sum diagram, twists included, against every identity.
    VerifySum { file: PathBuf, diagram: String },
    /// Correct a direct-sum diagram into an adjoint one.
    Adjointify { file: PathBuf, diagram: String },
    /// Split an algebra by a named idempotent or comma-separated coordinates.
    Split { file: PathBuf, alg: String, idempotent: String },
    /// Match two decompositions of the same algebra.
    Match {
        file: PathBuf,
        decomp1: String,
        decomp2: String,
        #[arg(long, value_enum, default_value = "both")]
        strategy: Strategy,
    },
    /// Frobenius monad of a splitting.
    Frobenius { file: PathBuf, splitting: String },
    /// Strong indecomposability, two ways.
    ReportIndec { file: PathBuf, alg: String },
    /// Write a curated instance file.
    Generate {
        #[arg(value_enum)]
        kind: Kind,
        #[arg(long, default_value = "Q")]
        field: String,
        #[arg(long, default_value = "A")]
        name: String,
        /// Group for group-algebra, e.g. S3, C4, C2xC2, Q8.
        #[arg(long)]
        group: Option<String>,
        /// Cayley table file (JSON rows) for group-algebra.
        #[arg(long)]
        cayley: Option<PathBuf>,
        /// Matrix size for matrix-algebra.
        #[arg(long)]
        size: Option<usize>,
        /// Vertex count for path-algebra.
        #[arg(long)]
        vertices: Option<usize>,
        /// Arrows for path-algebra, e.g. 0:1,1:2.
        #[arg(long)]
        arrows: Option<String>,
        /// Factors for product and scrambled, e.g. M2,k,S3,T2.
        #[arg(long)]
        factors: Option<String>,
        /// Where to write; stdout if absent.
        #[arg(long, short = 'o')]
        out: Option<PathBuf>,
    },
}

/// The result of one invocation.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub code: i32,
    /// `None` when the arguments could not be parsed or the command generates a file.
    pub report: Option<CommandReport>,
    /// What goes to stdout.
    pub stdout: String,
    /// What goes to stderr.
    pub stderr: String,
}

enum Fail {
    Input(String),
    Negative(String),
    Inconclusive(String),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Fail {
        match e {
            Error::Incomplete(m) => Fail::Inconclusive(m),
            Error::Verification(m) => Fail::Negative(format!("verification failed: {m}")),
            other => Fail::Input(other.to_string()),
        }
    }
}

type Run = std::result::Result<i32, Fail>;

pub fn run_command<I, S>(argv: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_PASS };
            let text = e.render().to_string();
            return if code == EXIT_PASS {
                Outcome { code, report: None, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, report: None, stdout: String::new(), stderr: text }
            };
        }
    };
    if let Command::Generate { .. } = cli.command {
        return match run_generate(&cli) {
            Ok(s) => Outcome { code: EXIT_PASS, report: None, stdout: s, stderr: String::new() },
            Err(e) => Outcome { code: EXIT_INPUT, report: None, stdout: String::new(), stderr: format!("error: {e}\n") },
        };
    }

    let (name, inputs) = describe(&cli.command);
    let mut rep = CommandReport::new(name, &inputs.iter().map(String::as_str).collect::<Vec<_>>());
    rep.seed = cli.seed;
    let start = Instant::now();
    let result = execute(&cli, &mut rep);
    rep.timing.elapsed_ms = start.elapsed().as_millis() as u64;
    let (code, message) = match result {
        Ok(c) => (c, None),
        Err(Fail::Input(m)) => (EXIT_INPUT, Some(m)),
        Err(Fail::Negative(m)) => (EXIT_NEGATIVE, Some(m)),
        Err(Fail::Inconclusive(m)) => (EXIT_INCONCLUSIVE, Some(m)),
    };
    rep.outcome = match code {
        EXIT_PASS => "pass",
        EXIT_NEGATIVE => "negative",
        EXIT_INCONCLUSIVE => "inconclusive",
        _ => "error",
    }
    .to_string();
    let mut stderr = String::new();
    if let Some(m) = message {
        rep.fact("message", &m);
        stderr = format!("error: {m}\n");
    }
    let body = match cli.format {
        Format::Json => rep.to_json() + "\n",
        Format::Text => rep.to_text(),
    };
    if let Some(path) = &cli.output {
        if let Err(e) = write_atomically(path, &body) {
            stderr.push_str(&format!("error: cannot write report: {e}\n"));
            return Outcome { code: EXIT_INPUT, report: Some(rep), stdout: body, stderr };
        }
    }
    Outcome { code, report: Some(rep), stdout: body, stderr }
}

fn describe(c: &Command) -> (&'static str, Vec<String>) {
    let p = |f: &PathBuf| f.display().to_string();
    match c {
        Command::Center { file, alg } => ("center", vec![p(file), alg.clone()]),
        Command::Idempotents { file, alg } => ("idempotents", vec![p(file), alg.clone()]),
        Command::Decompose { file, alg } => ("decompose", vec![p(file), alg.clone()]),
        Command::VerifySum { file, diagram } => ("verify-sum", vec![p(file), diagram.clone()]),
        Command::Adjointify { file, diagram } => ("adjointify", vec![p(file), diagram.clone()]),
        Command::Split { file, alg, idempotent } => ("split", vec![p(file), alg.clone(), idempotent.clone()]),
        Command::Match { file, decomp1, decomp2, strategy } => (
            "match",
            vec![p(file), decomp1.clone(), decomp2.clone(), format!("{strategy:?}").to_lowercase()],
        ),
        Command::Frobenius { file, splitting } => ("frobenius", vec![p(file), splitting.clone()]),
        Command::ReportIndec { file, alg } => ("report-indec", vec![p(file), alg.clone()]),
        Command::Generate { .. } => ("generate", vec![]),
    }
}

fn load(file: &PathBuf) -> std::result::Result<Instance, Fail> {
    Instance::read(file).map_err(|e| Fail::Input(e.to_string()))
}

/// Exit code for a finished check: failures are negative, partial results
/// inconclusive unless `--strict`.
fn verdict_code(rep: &CommandReport, complete: bool, strict: bool) -> i32 {
    if !rep.all_passed() {
        EXIT_NEGATIVE
    } else if !complete {
        if strict {
            EXIT_NEGATIVE
        } else {
            EXIT_INCONCLUSIVE
        }
    } else {
        EXIT_PASS
    }
}

fn execute(cli: &Cli, rep: &mut CommandReport) -> Run {
    match &cli.command {
        Command::Center { file, alg } => {
            let inst = load(file)?;
            let a = inst.algebra(alg)?;
            let z = center(a)?;
            let basis: Vec<_> = (0..z.algebra.dim()).map(|j| z.embedding.column(j)).collect();
            for (j, b) in basis.iter().enumerate() {
                rep.verdicts.push(verdict(format!("basis-{j}-is-central"), a.is_central(b)));
            }
            rep.verdicts.push(verdict("center-is-commutative".into(), z.algebra.is_commutative()));
            rep.fact("dimension", z.algebra.dim());
            rep.fact("basis", basis.iter().map(|b| vector_strings(b)).collect::<Vec<_>>());
            Ok(verdict_code(rep, true, cli.strict))
        }
        Command::Idempotents { file, alg } => {
            let inst = load(file)?;
            let a = inst.algebra(alg)?;
            let z = center(a)?;
            let d = primitive_idempotents(&z.algebra)?;
            let es: Vec<_> = d.idempotents.iter().map(|e| z.embed(e)).collect();
            check_idempotents(rep, a, &es);
            rep.idempotents = es.iter().map(|e| vector_strings(e)).collect();
            rep.complete = Some(d.complete);
            Ok(verdict_code(rep, d.complete, cli.strict))
        }
        Command::Decompose { file, alg } => {
            let inst = load(file)?;
            let a = inst.algebra(alg)?;
            let d = match cli.seed {
                Some(s) => ks_decompose_seeded(a, s)?,
                None => ks_decompose(a)?,
            };
            rep.absorb("", &d.report);
            rep.idempotents = d.idempotents.iter().map(|e| vector_strings(e)).collect();
            rep.complete = Some(d.complete);
            rep.fact("summands", d.len());
            rep.fact("summand_dims", d.summands().iter().map(|s| s.y.dim()).collect::<Vec<_>>());
            Ok(verdict_code(rep, d.complete, cli.strict))
        }
        Command::VerifySum { file, diagram } => {
            let inst = load(file)?;
            let raw = inst.raw_diagram(diagram)?;
            rep.absorb("raw", &verify_raw_direct_sum(&raw)?);
            rep.absorb("adjoint", &verify_direct_sum(&raw.as_diagram()?)?);
            rep.fact("summands", raw.summands.len());
            Ok(verdict_code(rep, true, cli.strict))
        }
        Command::Adjointify { file, diagram } => {
            let inst = load(file)?;
            let raw = inst.raw_diagram(diagram)?;
            let out = match adjointify(&raw) {
                Ok(d) => d,
                Err(Error::Precondition(m)) => return Err(Fail::Negative(m)),
                Err(e) => return Err(e.into()),
            };
            let back = RawDirectSum::from_diagram(&out);
            let changed: Vec<usize> = raw
                .summands
                .iter()
                .zip(&back.summands)
                .enumerate()
                .filter(|(_, (a, b))| a.alpha != b.alpha || a.beta_bar != b.beta_bar)
                .map(|(k, _)| k)
                .collect();
            rep.absorb("", &verify_direct_sum(&out)?);
            rep.fact("corrected_summands", changed);
            Ok(verdict_code(rep, true, cli.strict))
        }
        Command::Split { file, alg, idempotent } => {
            let inst = load(file)?;
            let x = inst.algebra(alg)?;
            let e = inst.idempotent_arg(alg, idempotent)?;
            let (s, rest) = split_by_idempotent(x, &e)?;
            rep.absorb("summand", &verify_splitting_datum(&s)?);
            rep.verdicts.push(verdict("summand/idempotent-round-trip".into(), associated_idempotent(&s)? == e));
            rep.fact("summand_dim", s.y.dim());
            match &rest {
                Some(c) => {
                    rep.absorb("complement", &verify_splitting_datum(c)?);
                    rep.fact("complement_dim", c.y.dim());
                }
                None => rep.fact("complement_dim", 0),
            }
            rep.idempotents = vec![vector_strings(&e)];
            Ok(verdict_code(rep, true, cli.strict))
        }
        Command::Match { file, decomp1, decomp2, strategy } => {
            let inst = load(file)?;
            let d1 = inst.decomposition(decomp1)?;
            let d2 = inst.decomposition(decomp2)?;
            rep.complete = Some(d1.complete && d2.complete);
            if !(d1.complete && d2.complete) {
                let m = "matching needs complete decompositions".to_string();
                return Err(if cli.strict { Fail::Negative(m) } else { Fail::Inconclusive(m) });
            }
            let m = match_decompositions(&d1, &d2, (*strategy).into())?;
            rep.absorb("", &m.report);
            rep.permutation = Some(m.permutation.clone());
            rep.idempotents = d1.idempotents.iter().map(|e| vector_strings(e)).collect();
            if let Some(eqs) = &m.idempotent {
                rep.fact("idempotent_equivalences", eqs.len());
            }
            if let Some(steps) = &m.recursive {
                rep.fact("recursive_steps", steps.len());
            }
            Ok(verdict_code(rep, true, cli.strict))
        }
        Command::Frobenius { file, splitting } => {
            let inst = load(file)?;
            let s = inst.splitting(splitting)?;
            let f = frobenius_from_splitting(&s)?;
            rep.absorb("", &f.report);
            rep.fact("monad_dim", f.e.dim());
            Ok(verdict_code(rep, true, cli.strict))
        }
        Command::ReportIndec { file, alg } => {
            let inst = load(file)?;
            let r = strong_indecomposability_report(inst.algebra(alg)?)?;
            rep.absorb("", &r.report);
            rep.complete = Some(r.complete);
            rep.fact("center_connected", r.center_connected);
            rep.fact("component_count", r.component_count);
            rep.fact("identity_indecomposable", r.identity_indecomposable);
            rep.fact("idempotent_count", r.idempotent_count);
            rep.fact("method", r.method);
            rep.fact("strongly_indecomposable", r.strongly_indecomposable);
            let code = verdict_code(rep, r.complete, cli.strict);
            if code == EXIT_PASS && !r.strongly_indecomposable {
                Ok(EXIT_NEGATIVE)
            } else {
                Ok(code)
            }
        }
        Command::Generate { .. } => unreachable!("handled before"),
    }
}

fn verdict(name: String, passed: bool) -> crate::kstheory::Verdict {
    crate::kstheory::Verdict { name, passed }
}

fn check_idempotents(rep: &mut CommandReport, a: &Algebra, es: &[Vec<crate::linalg::Scalar>]) {
    let mut total = a.zero();
    for (k, e) in es.iter().enumerate() {
        rep.verdicts.push(verdict(format!("idempotent-{k}/idempotent"), a.is_idempotent(e)));
        rep.verdicts.push(verdict(format!("idempotent-{k}/central"), a.is_central(e)));
        for (l, f) in es.iter().enumerate().skip(k + 1) {
            let zero = a.mul(e, f).iter().all(|x| x.is_zero());
            rep.verdicts.push(verdict(format!("orthogonal-{k}-{l}"), zero));
        }
        total = total.iter().zip(e).map(|(x, y)| x + y).collect();
    }
    rep.verdicts.push(verdict("sum-is-one".into(), a.is_unit_element(&total)));
}

fn run_generate(cli: &Cli) -> crate::Result<String> {
    let Command::Generate { kind, field, name, group, cayley, size, vertices, arrows, factors, out } = &cli.command
    else {
        unreachable!()
    };
    let field: Field = field.parse()?;
    let missing = |flag: &str| Error::Instance(format!("{kind:?} needs --{flag}"));
    let factor_list = |s: &Option<String>| -> crate::Result<Vec<_>> {
        s.as_deref()
            .ok_or_else(|| missing("factors"))?
            .split(',')
            .map(parse_factor)
            .collect()
    };
    let kind = match kind {
        Kind::GroupAlgebra => match (group, cayley) {
            (_, Some(path)) => {
                let rows: Vec<Vec<usize>> = serde_json::from_str(&std::fs::read_to_string(path)?)?;
                GenerateKind::GroupAlgebra(CayleyTable::new(rows)?)
            }
            (Some(g), None) => match parse_factor(g)? {
                crate::io::FactorSpec::Group(t) => GenerateKind::GroupAlgebra(t),
                _ => return Err(Error::Instance(format!("`{g}` is not a group"))),
            },
            (None, None) => return Err(missing("group")),
        },
        Kind::MatrixAlgebra => GenerateKind::MatrixAlgebra(size.ok_or_else(|| missing("size"))?),
        Kind::PathAlgebra => {
            let vertices = vertices.ok_or_else(|| missing("vertices"))?;
            let mut list = Vec::new();
            for a in arrows.as_deref().unwrap_or("").split(',').filter(|s| !s.trim().is_empty()) {
                let (s, t) = a
                    .split_once(':')
                    .ok_or_else(|| Error::Instance(format!("arrow `{a}` is not FROM:TO")))?;
                let num = |x: &str| x.trim().parse::<usize>().map_err(|_| Error::Instance(format!("bad arrow `{a}`")));
                list.push((num(s)?, num(t)?));
            }
            GenerateKind::PathAlgebra(Quiver { vertices, arrows: list })
        }
        Kind::Product => GenerateKind::Product(factor_list(factors)?),
        Kind::Scrambled => GenerateKind::Scrambled(factor_list(factors)?),
    };
    let f = generate(&kind, field, name, cli.seed.unwrap_or(0))?;
    match out {
        Some(path) => {
            f.write(path)?;
            Ok(format!("wrote {}\n", path.display()))
        }
        None => Ok(f.to_json()? + "\n"),
    }
}
