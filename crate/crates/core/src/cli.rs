//! Command-line front end.
//!
//! Every command prints plain text by default and a JSON document with
//! `--json`. JSON documents carry `"schema": "morava-hopf/1"`. Exit codes:
//! 0 success, 1 a verification failed, 2 invalid input, 3 a search was
//! refused by the sizing bound (`MORAVA_MAX_CANDIDATES`).

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::Presentation;
use crate::base::TheoryFlavor;
use crate::dual::{candidate_bound, idempotents, verify_duality, DualPresentation, DEFAULT_MAX_CANDIDATES};
use crate::error::{Error, Result};
use crate::hopf::{reduced_comul, verify_hopf};
use crate::ideals::{enumerate_saturated_bi_ideals, IdealRecord, Strategy};
use crate::motives::{j_invariant_document, validate_chow_j, ChowJInput, JInvariantDocument};
use crate::report::Report;

pub const SCHEMA: &str = "morava-hopf/1";

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_SIZING: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "morava-hopf", version, about = "Hopf algebras K(n)*(SO_m), their duals, bi-ideals and J-invariants")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print a presentation and the reduced coproduct of every odd generator.
    Algebra(AlgebraArgs),
    /// Run verification suites.
    Verify(VerifyArgs),
    /// Evaluate the J-invariant pipeline.
    Jinv(JinvArgs),
    /// List the idempotents of the dual of K(n)*(SO_m).
    Idempotents(IdempotentArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Theory {
    Chow,
    Ck,
    K,
}

impl Theory {
    fn flavor(self, n: Option<u32>) -> Result<TheoryFlavor> {
        let name = match self {
            Theory::Chow => "chow",
            Theory::Ck => "ck",
            Theory::K => "k",
        };
        TheoryFlavor::from_parts(name, n)
    }
}

#[derive(Debug, Args)]
struct AlgebraArgs {
    #[arg(long, value_enum)]
    theory: Theory,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    m: u32,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Hopf,
    Duality,
    Biideals,
    All,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    suite: Suite,
    #[arg(long, value_enum)]
    theory: Theory,
    /// Height; omitted means every height up to --max-n.
    #[arg(long)]
    n: Option<u32>,
    /// Rank of the group; omitted means every m from 3 up to --max-m.
    #[arg(long)]
    m: Option<u32>,
    #[arg(long, default_value_t = 3)]
    max_n: u32,
    /// Defaults to min(2^(n+1)+6, 23).
    #[arg(long)]
    max_m: Option<u32>,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct JinvArgs {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    m: u32,
    /// Comma separated indices of the killed generators; empty for generic J.
    #[arg(long = "J", default_value = "", allow_hyphen_values = true)]
    j: String,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct IdempotentArgs {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    m: u32,
    /// Restrict to the dual of the J-invariant quotient.
    #[arg(long = "J")]
    j: Option<String>,
    #[arg(long)]
    json: bool,
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_INVALID,
            };
            let target: &mut dyn Write = if code == EXIT_OK { out } else { err };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let result = match cli.command {
        Command::Algebra(a) => cmd_algebra(&a, out),
        Command::Verify(a) => cmd_verify(&a, out),
        Command::Jinv(a) => cmd_jinv(&a, out),
        Command::Idempotents(a) => cmd_idempotents(&a, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::SizingRefusal { .. } => EXIT_SIZING,
        _ => EXIT_INVALID,
    }
}

fn emit_json(out: &mut dyn Write, command: &str, body: Value) -> Result<()> {
    let mut doc = json!({ "schema": SCHEMA, "command": command });
    if let (Value::Object(map), Value::Object(extra)) = (&mut doc, body) {
        map.extend(extra);
    }
    let text = serde_json::to_string_pretty(&doc).map_err(|e| Error::InvalidInput(e.to_string()))?;
    writeln!(out, "{text}").map_err(io_error)
}

fn io_error(e: std::io::Error) -> Error {
    Error::InvalidInput(format!("cannot write output: {e}"))
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable document")
}

#[derive(Serialize)]
struct GeneratorComul {
    generator: String,
    reduced: String,
}

fn cmd_algebra(a: &AlgebraArgs, out: &mut dyn Write) -> Result<i32> {
    let p = Presentation::new(a.theory.flavor(a.n)?, a.m)?;
    let mut comuls = Vec::new();
    for b in p.odd_generators().collect::<Vec<_>>() {
        let reduced = reduced_comul(&p, &p.generator(b))?;
        comuls.push(GeneratorComul { generator: format!("e{b}"), reduced: reduced.to_string() });
    }
    if a.json {
        let mut body = to_value(&p);
        body["label"] = json!(p.label());
        body["rank"] = json!(p.rank());
        body["top_degree"] = json!(p.top_degree());
        body["comultiplication"] = to_value(&comuls);
        emit_json(out, "algebra", body)?;
    } else {
        let threshold = p.torsion_threshold.map_or_else(|| "none".to_string(), |t| t.to_string());
        let w = |out: &mut dyn Write, line: String| writeln!(out, "{line}").map_err(io_error);
        w(out, p.label())?;
        w(out, format!("s = {}", p.s))?;
        w(out, format!("r = {}", p.r))?;
        w(out, format!("truncations = {:?}", p.truncations))?;
        w(out, format!("torsion_threshold = {threshold}"))?;
        w(out, format!("rank = {}", p.rank()))?;
        for c in &comuls {
            w(out, format!("Dt({}) = {}", c.generator, c.reduced))?;
        }
    }
    Ok(EXIT_OK)
}

/// The outcome of the bi-ideal suite on one presentation.
#[derive(Debug, Clone, Serialize)]
pub struct BiIdealReport {
    pub presentation: String,
    pub strategies: Vec<Strategy>,
    pub records: Vec<IdealRecord>,
    /// Whether the exhaustive walk found exactly the tuple ideals; absent
    /// when it was not run.
    pub lattice_matches_tuples: Option<bool>,
    pub restriction_holds: bool,
    pub passed: bool,
}

pub fn bi_ideal_report(p: &Presentation, bound: u128) -> Result<BiIdealReport> {
    let tuples = enumerate_saturated_bi_ideals(p, Strategy::Tuple, bound)?;
    let mut strategies = vec![Strategy::Tuple];
    let mut records = tuples.records.clone();
    let mut lattice_matches_tuples = None;
    if matches!(p.flavor, TheoryFlavor::PeriodicMorava { n } if n <= 2) {
        let lattice = enumerate_saturated_bi_ideals(p, Strategy::Lattice, bound)?;
        lattice_matches_tuples = Some(lattice.accepted_tuples() == tuples.accepted_tuples());
        strategies.push(Strategy::Lattice);
        records.extend(lattice.records);
    }
    let restriction_holds =
        records.iter().filter(|r| r.bi_ideal && r.saturated).all(|r| r.restriction != Some(false));
    let passed = restriction_holds && lattice_matches_tuples != Some(false);
    Ok(BiIdealReport { presentation: p.label(), strategies, records, lattice_matches_tuples, restriction_holds, passed })
}

fn verify_targets(a: &VerifyArgs, suite: Suite) -> Result<Vec<Presentation>> {
    let heights: Vec<Option<u32>> = match (a.theory, a.n) {
        (Theory::Chow, _) => vec![None],
        (_, Some(n)) => vec![Some(n)],
        (_, None) => (1..=a.max_n).map(Some).collect(),
    };
    let mut out = Vec::new();
    for n in heights {
        let flavor = a.theory.flavor(n)?;
        let ms: Vec<u32> = match a.m {
            Some(m) => vec![m],
            None => {
                let default = n.map_or(23, |n| ((1u32 << (n + 1)) + 6).min(23));
                let mut hi = a.max_m.unwrap_or(default);
                if suite == Suite::Duality {
                    hi = hi.min(n.map_or(0, |n| 1 << (n + 1)));
                }
                (3..=hi).collect()
            }
        };
        for m in ms {
            out.push(Presentation::new(flavor, m)?);
        }
    }
    Ok(out)
}

fn write_report(out: &mut dyn Write, r: &Report) -> Result<()> {
    let verdict = if r.passed { "pass" } else { "FAIL" };
    writeln!(out, "{} {}: {verdict}", r.suite, r.presentation).map_err(io_error)?;
    for ax in &r.axioms {
        let status = if ax.passed { "pass" } else { "FAIL" };
        write!(out, "  {}: {status} ({} checked)", ax.axiom, ax.checked).map_err(io_error)?;
        if let Some(w) = &ax.witness {
            write!(out, " witness {w}").map_err(io_error)?;
        }
        writeln!(out).map_err(io_error)?;
    }
    Ok(())
}

fn strategy_name(s: Strategy) -> &'static str {
    match s {
        Strategy::Tuple => "TUPLE",
        Strategy::Lattice => "LATTICE",
    }
}

fn write_bi_ideals(out: &mut dyn Write, r: &BiIdealReport) -> Result<()> {
    let verdict = if r.passed { "pass" } else { "FAIL" };
    let w = |out: &mut dyn Write, s: String| writeln!(out, "{s}").map_err(io_error);
    w(out, format!("biideals {}: {verdict}", r.presentation))?;
    for rec in &r.records {
        let tuple = rec.tuple.as_ref().map_or_else(|| "non-tuple".to_string(), |t| format!("{t:?}"));
        let restriction = match rec.restriction {
            Some(b) => b.to_string(),
            None => "n/a".into(),
        };
        w(
            out,
            format!(
                "  {} {tuple}: bi_ideal={} saturated={} restriction={restriction}",
                strategy_name(rec.strategy),
                rec.bi_ideal,
                rec.saturated
            ),
        )?;
    }
    match r.lattice_matches_tuples {
        Some(true) => w(out, "  TUPLE == LATTICE".into())?,
        Some(false) => w(out, "  TUPLE != LATTICE".into())?,
        None => {}
    }
    Ok(())
}

fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write) -> Result<i32> {
    let suites = match a.suite {
        Suite::All => vec![Suite::Hopf, Suite::Duality, Suite::Biideals],
        s => vec![s],
    };
    let bound = candidate_bound(DEFAULT_MAX_CANDIDATES);
    let mut passed = true;
    let mut docs = Vec::new();
    for suite in suites {
        if suite == Suite::Duality && matches!(a.theory, Theory::Chow) {
            if a.suite == Suite::All {
                continue;
            }
            return Err(Error::Unsupported { flavor: "Ch".into(), reason: "the duality suite needs a Morava theory".into() });
        }
        for p in verify_targets(a, suite)? {
            match suite {
                Suite::Hopf | Suite::Duality => {
                    let r = if suite == Suite::Hopf { verify_hopf(&p)? } else { verify_duality(&p)? };
                    passed &= r.passed;
                    if a.json {
                        docs.push(to_value(&r));
                    } else {
                        write_report(out, &r)?;
                    }
                }
                _ => {
                    let r = bi_ideal_report(&p, bound)?;
                    passed &= r.passed;
                    if a.json {
                        let mut v = to_value(&r);
                        v["suite"] = json!("biideals");
                        docs.push(v);
                    } else {
                        write_bi_ideals(out, &r)?;
                    }
                }
            }
        }
    }
    if a.json {
        emit_json(out, "verify", json!({ "passed": passed, "reports": docs }))?;
    } else {
        writeln!(out, "{}", if passed { "all suites passed" } else { "verification FAILED" }).map_err(io_error)?;
    }
    Ok(if passed { EXIT_OK } else { EXIT_FAILURE })
}

fn write_document(out: &mut dyn Write, d: &JInvariantDocument) -> Result<()> {
    let list = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join(", ");
    let n = d.n;
    let lines = [
        format!("n = {n}"),
        format!("m = {}", d.m),
        format!("J = {{{}}}", list(&d.j)),
        format!("tuple = ({})", list(&d.tuple)),
        format!("rank Ch = {}", d.ranks.chow),
        format!("rank CK({n}) = {}", d.ranks.ck),
        format!("rank K({n}) = {}", d.ranks.k),
        format!("layer_rank = {}", d.motive.layer_rank),
        format!("layer_count = {}", d.motive.layer_count),
        format!("indecomposable = {}", d.motive.indecomposable),
        format!("summand_count = {}", d.motive.summand_count),
        format!("summand_rank = {}", d.motive.summand_rank),
    ];
    for line in lines {
        writeln!(out, "{line}").map_err(io_error)?;
    }
    let closure: Vec<String> = d.restrictions.closure.iter().map(|v| format!("{} -> {}", v.i, v.missing)).collect();
    let morava: Vec<String> =
        d.restrictions.morava.iter().map(|v| format!("{} -> {}", v.present, v.missing)).collect();
    let show = |v: Vec<String>| if v.is_empty() { "none".to_string() } else { v.join(", ") };
    writeln!(out, "closure violations: {}", show(closure)).map_err(io_error)?;
    writeln!(out, "morava violations: {}", show(morava)).map_err(io_error)
}

fn cmd_jinv(a: &JinvArgs, out: &mut dyn Write) -> Result<i32> {
    let input = ChowJInput::parse(a.n, a.m, &a.j)?;
    let doc = j_invariant_document(&input)?;
    if a.json {
        emit_json(out, "jinv", to_value(&doc))?;
    } else {
        write_document(out, &doc)?;
    }
    Ok(EXIT_OK)
}

fn cmd_idempotents(a: &IdempotentArgs, out: &mut dyn Write) -> Result<i32> {
    let p = Presentation::new(TheoryFlavor::PeriodicMorava { n: a.n }, a.m)?;
    let dp = DualPresentation::new(&p)?;
    let restriction = match &a.j {
        Some(list) => {
            let tuple = validate_chow_j(&ChowJInput::parse(a.n, a.m, list)?)?;
            Some(tuple[..dp.r()].to_vec())
        }
        None => None,
    };
    let found = idempotents(&dp, restriction.as_deref(), candidate_bound(DEFAULT_MAX_CANDIDATES))?;
    let texts: Vec<String> = found.iter().map(|x| dp.format(x)).collect();
    if a.json {
        emit_json(
            out,
            "idempotents",
            json!({ "n": a.n, "m": a.m, "restriction": restriction, "count": texts.len(), "idempotents": texts }),
        )?;
    } else {
        writeln!(out, "{}: {} idempotents", p.label(), texts.len()).map_err(io_error)?;
        for t in texts {
            writeln!(out, "{t}").map_err(io_error)?;
        }
    }
    Ok(EXIT_OK)
}
