//! The `artin` command line.
//!
//! Every subcommand reads a defining graph, runs one computation with the
//! bounds given by `--bounds`, and writes a report. JSON reports carry a
//! `schema` field and contain no timings, so identical inputs give
//! identical bytes.
//!
//! Exit codes: 0 for a covered case or a check that held, 1 for bad input,
//! 2 for a graph no case covers, 3 for a counterexample and 4 for an
//! inconclusive search.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::cayley::{isometric_embedding_check, spherical_diameter2_check, MetricContext};
use crate::criteria::{
    is_blocking_pair, large_type_sequence, preserved_signed_suffixes_check, three_free_sequence,
    verify_blocking_sequence, verify_wn_geodesic, BaseContext, BlockingPairQuery, BlockingSequence,
};
use crate::deligne::{qi_check, ComplexBuilder};
use crate::error::{Error, Result};
use crate::group::{Budget, GroupOracle};
use crate::presentation::{classify_theorem_case, find_3free_triangle, CaseKind, DefiningGraph};
use crate::verdict::{Bound, Bounds, Verdict};
use crate::words::SignedWord;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_NOT_COVERED: i32 = 2;
pub const EXIT_COUNTEREXAMPLE: i32 = 3;
pub const EXIT_INCONCLUSIVE: i32 = 4;

const SCHEMA_VERSION: u32 = 1;

#[derive(Parser, Debug)]
#[command(name = "artin", version, about = "Computations in Artin groups and their monoid Cayley graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Report which case of the main theorem covers the graph.
    Classify(Common),
    /// Run a bounded check.
    Verify {
        which: Check,
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        opts: VerifyOpts,
    },
    /// Distance between two elements in the Cayley graph on positive elements.
    Distance {
        #[command(flatten)]
        common: Common,
        /// First element; `ε` or an empty string is the identity.
        #[arg(long, allow_hyphen_values = true)]
        g: String,
        #[arg(long, allow_hyphen_values = true)]
        h: String,
    },
    /// A ball in the Deligne complex, coned off when `s` is positive.
    Poset(Common),
    /// The alternating blocking sequence chosen for the graph.
    Sequence {
        #[command(flatten)]
        common: Common,
        /// Also print the word `w_n`.
        #[arg(long)]
        n: Option<usize>,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Check {
    Criterion1,
    Criterion2,
    Wn,
    Diameter2,
    Embedding,
    Qi,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Base {
    Periodic,
    PrefixOnly,
}

#[derive(Args, Debug)]
struct Common {
    /// Defining graph file, or `-` for standard input.
    #[arg(long, conflicts_with = "presentation", required_unless_present = "presentation")]
    graph: Option<PathBuf>,
    /// Defining graph given inline, e.g. "a b c; a b 3; b c 3; a c 3".
    #[arg(long)]
    presentation: Option<String>,
    /// Comma-separated bounds: L, B, K, b, r, s, budget.
    #[arg(long, default_value = "")]
    bounds: BoundsArg,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyOpts {
    /// Number of sequence terms.
    #[arg(long)]
    n: Option<usize>,
    /// Word `u` of a blocking pair; selects the single pair check.
    #[arg(long, requires = "x", allow_hyphen_values = true)]
    u: Option<String>,
    /// Letter `x` of a blocking pair, e.g. `b` or `b'`.
    #[arg(long, requires = "u", allow_hyphen_values = true)]
    x: Option<String>,
    /// Comma-separated generator names of a special subgroup.
    #[arg(long, value_delimiter = ',')]
    subset: Vec<String>,
    /// A sequence file with one word of the period per line.
    #[arg(long)]
    sequence: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Base::Periodic)]
    base: Base,
    /// Largest Cayley distance compared by `qi`.
    #[arg(long, default_value_t = 3)]
    cap: u32,
}

/// Values of `--bounds`; unset entries take per-command defaults.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BoundsArg {
    pub l: Option<usize>,
    pub b_factor: Option<usize>,
    pub k: Option<usize>,
    pub b_rule: Option<usize>,
    pub r: Option<usize>,
    pub s: Option<usize>,
    pub budget: Option<usize>,
}

impl FromStr for BoundsArg {
    type Err = String;

    fn from_str(text: &str) -> std::result::Result<Self, String> {
        let mut out = BoundsArg::default();
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = item.split_once('=').ok_or_else(|| format!("expected key=value, got {item}"))?;
            let v: usize = value.trim().parse().map_err(|_| format!("bad value in {item}"))?;
            if v == 0 {
                return Err(format!("bound {key} must be positive"));
            }
            let slot = match key.trim() {
                "L" => &mut out.l,
                "B" => &mut out.b_factor,
                "K" => &mut out.k,
                "b" => &mut out.b_rule,
                "r" => &mut out.r,
                "s" => &mut out.s,
                "budget" => &mut out.budget,
                other => return Err(format!("unknown bound {other}")),
            };
            *slot = Some(v);
        }
        Ok(out)
    }
}

impl BoundsArg {
    fn budget(&self) -> Budget {
        let mut b = Budget::default();
        if let Some(k) = self.k {
            b.slack = k;
        }
        if self.b_rule.is_some() {
            b.rule_len = self.b_rule;
        }
        if let Some(n) = self.budget {
            b.max_class = n;
        }
        b
    }
}

/// A finished command: the report and its exit code.
struct Outcome {
    code: i32,
    json: Value,
    text: String,
    dot: Option<String>,
}

impl Outcome {
    fn new(code: i32, json: Value, text: String) -> Self {
        Outcome { code, json, text, dot: None }
    }
}

/// Runs the command line and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = if e.use_stderr() { write!(stderr, "{}", e.render()) } else { write!(stdout, "{}", e.render()) };
            return code;
        }
    };
    let common = match &cli.command {
        Command::Classify(c) | Command::Poset(c) => c,
        Command::Verify { common, .. } | Command::Distance { common, .. } | Command::Sequence { common, .. } => common,
    };
    let outcome = load_graph(common).and_then(|graph| dispatch(&cli.command, graph, common));
    match outcome {
        Ok(o) => {
            let body = match common.format {
                Format::Json => {
                    let mut s = serde_json::to_string_pretty(&o.json).expect("reports serialize");
                    s.push('\n');
                    s
                }
                Format::Text => o.text,
                Format::Dot => match o.dot {
                    Some(d) => d,
                    None => {
                        let _ = writeln!(stderr, "error: this command has no DOT output");
                        return EXIT_INPUT;
                    }
                },
            };
            let written = match &common.out {
                Some(path) => std::fs::write(path, body).map_err(|e| e.to_string()),
                None => stdout.write_all(body.as_bytes()).map_err(|e| e.to_string()),
            };
            if let Err(e) = written {
                let _ = writeln!(stderr, "error: {e}");
                return EXIT_INPUT;
            }
            o.code
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            match e {
                Error::Budget(_) => EXIT_INCONCLUSIVE,
                _ => EXIT_INPUT,
            }
        }
    }
}

fn load_graph(common: &Common) -> Result<DefiningGraph> {
    let text = match (&common.presentation, &common.graph) {
        (Some(p), _) => p.clone(),
        (None, Some(path)) if path.as_os_str() == "-" => {
            let mut s = String::new();
            std::io::Read::read_to_string(&mut std::io::stdin(), &mut s).map_err(|e| Error::Parse(e.to_string()))?;
            s
        }
        (None, Some(path)) => {
            std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?
        }
        (None, None) => return Err(Error::Parse("no graph given".into())),
    };
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        DefiningGraph::from_json(trimmed)
    } else {
        DefiningGraph::parse(&text)
    }
}

fn dispatch(command: &Command, graph: DefiningGraph, common: &Common) -> Result<Outcome> {
    let oracle = Arc::new(GroupOracle::new(Arc::new(graph), common.bounds.budget()));
    match command {
        Command::Classify(_) => classify(&oracle),
        Command::Verify { which, opts, .. } => verify(*which, &oracle, &common.bounds, opts),
        Command::Distance { g, h, .. } => distance(&oracle, &common.bounds, g, h),
        Command::Poset(_) => poset(&oracle, &common.bounds),
        Command::Sequence { n, .. } => sequence(&oracle, *n),
    }
}

fn schema(name: &str) -> String {
    format!("artin.{name}/{SCHEMA_VERSION}")
}

fn names(graph: &DefiningGraph, gens: &[crate::Gen]) -> Vec<String> {
    gens.iter().map(|&g| graph.name(g).to_owned()).collect()
}

fn classify(oracle: &GroupOracle) -> Result<Outcome> {
    let graph = oracle.graph();
    let case = classify_theorem_case(graph);
    let witness = names(graph, &case.witness);
    let kind = format!("{:?}", case.case);
    let text = if witness.is_empty() { format!("{kind}\n") } else { format!("{kind} ({})\n", witness.join(",")) };
    let json = json!({
        "schema": schema("classify"),
        "graph": graph.to_text(),
        "case": kind,
        "witness": witness,
        "pattern": case.pattern,
    });
    let code = if case.is_covered() { EXIT_OK } else { EXIT_NOT_COVERED };
    Ok(Outcome::new(code, json, text))
}

fn verdict_code<W>(v: &Verdict<W>) -> i32 {
    match v {
        Verdict::HoldsUpTo(_) => EXIT_OK,
        Verdict::Counterexample(_) => EXIT_COUNTEREXAMPLE,
        Verdict::Inconclusive(_) => EXIT_INCONCLUSIVE,
    }
}

fn bound_json(b: &Bound) -> Value {
    match b {
        Bound::Exact => json!("exact"),
        Bound::Search => json!("search"),
        Bound::Length(n) => json!(n),
    }
}

fn verdict_json<W: Serialize>(v: &Verdict<W>) -> Value {
    match v {
        Verdict::HoldsUpTo(b) => json!({ "status": "holds", "up_to": bound_json(b) }),
        Verdict::Counterexample(w) => json!({ "status": "counterexample", "witness": w }),
        Verdict::Inconclusive(r) => json!({ "status": "inconclusive", "reason": r }),
    }
}

fn verdict_text<W: Serialize>(v: &Verdict<W>) -> String {
    match v {
        Verdict::HoldsUpTo(Bound::Length(n)) => format!("holds up to {n}"),
        Verdict::HoldsUpTo(Bound::Exact) => "holds exactly".to_owned(),
        Verdict::HoldsUpTo(Bound::Search) => "holds within the search limits".to_owned(),
        Verdict::Counterexample(w) => format!("counterexample: {}", compact(w)),
        Verdict::Inconclusive(r) => format!("inconclusive: {r}"),
    }
}

fn compact<W: Serialize>(w: &W) -> String {
    match serde_json::to_value(w).expect("witnesses serialize") {
        Value::String(s) => s,
        v => v.to_string(),
    }
}

fn bounds_json(b: &Bounds) -> Value {
    serde_json::to_value(b).expect("bounds serialize")
}

fn report(name: &str, oracle: &GroupOracle, verdict: Value, bounds: &Bounds, details: Value) -> Value {
    let mut obj = json!({
        "schema": schema(&format!("verify.{name}")),
        "graph": oracle.graph().to_text(),
        "verdict": verdict,
        "bounds": bounds_json(bounds),
    });
    if let (Value::Object(o), Value::Object(d)) = (&mut obj, details) {
        o.extend(d);
    }
    obj
}

fn text_words(graph: &DefiningGraph, v: Verdict<SignedWord>) -> Verdict<String> {
    v.map(|w| w.to_text(graph))
}

/// The sequence named by `--sequence`, or the one the classification of
/// the graph provides.
fn chosen_sequence(oracle: &GroupOracle, file: Option<&PathBuf>) -> Result<BlockingSequence> {
    let graph = oracle.graph();
    if let Some(path) = file {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        return BlockingSequence::parse(graph, &text);
    }
    let case = classify_theorem_case(graph);
    match case.case {
        CaseKind::LargeTriangle => {
            let [a, b, c] = case.witness[..] else { unreachable!("triangles have three vertices") };
            large_type_sequence(graph, a, b, c)
        }
        CaseKind::ThreeFreeTriangle => match find_3free_triangle(graph)? {
            Some((a, b, c)) => three_free_sequence(graph, a, b, c),
            None => Err(Error::Precondition("no triangle with a sequence was found".into())),
        },
        _ => Err(Error::Precondition(format!("no built-in sequence for case {:?}; pass --sequence", case.case))),
    }
}

fn verify(which: Check, oracle: &Arc<GroupOracle>, b: &BoundsArg, opts: &VerifyOpts) -> Result<Outcome> {
    let graph = oracle.graph();
    match which {
        Check::Criterion1 => {
            let l = b.l.unwrap_or(5);
            let r = preserved_signed_suffixes_check(oracle, l)?;
            let text = format!("criterion1: {}\n", verdict_text(&r.verdict));
            let json = report("criterion1", oracle, verdict_json(&r.verdict), &r.bounds, json!({}));
            Ok(Outcome::new(verdict_code(&r.verdict), json, text))
        }
        Check::Criterion2 => {
            if let (Some(u), Some(x)) = (&opts.u, &opts.x) {
                let u = SignedWord::parse(graph, u)?;
                let xw = SignedWord::parse(graph, x)?;
                if xw.len() != 1 {
                    return Err(Error::Parse(format!("expected one letter for --x, got {x:?}")));
                }
                let l = b.l.unwrap_or(4);
                let q = BlockingPairQuery { u: u.clone(), x: xw.letters()[0], max_len: l };
                let r = is_blocking_pair(oracle, &q)?;
                let v = text_words(graph, r.verdict);
                let details = json!({ "mode": "pair", "u": u.to_text(graph), "x": xw.to_text(graph) });
                let text = format!("criterion2 ({}, {}): {}\n", u.to_text(graph), xw.to_text(graph), verdict_text(&v));
                let json = report("criterion2", oracle, verdict_json(&v), &r.bounds, details);
                return Ok(Outcome::new(verdict_code(&v), json, text));
            }
            let seq = chosen_sequence(oracle, opts.sequence.as_ref())?;
            let n = opts.n.unwrap_or(3);
            let l = b.l.unwrap_or(5);
            let base = match opts.base {
                Base::Periodic => BaseContext::Periodic,
                Base::PrefixOnly => BaseContext::PrefixOnly,
            };
            let r = verify_blocking_sequence(oracle, &seq, n, l, base)?;
            let period: Vec<String> = seq.period().iter().map(|w| w.to_text(graph)).collect();
            let mut text =
                format!("criterion2 sequence [{}]: {}\n", period.join(" | "), verdict_text(&r.verdict.verdict));
            for g in &r.guards {
                let guard = g.guard.as_deref().unwrap_or("-");
                let _ = writeln!(text, "  alpha_{} #{} {}: {}", g.index, g.position, g.letter, guard);
            }
            let details = json!({
                "mode": "sequence",
                "period": period,
                "n": n,
                "base": r.base,
                "guards": r.guards,
            });
            let json = report("criterion2", oracle, verdict_json(&r.verdict.verdict), &r.verdict.bounds, details);
            Ok(Outcome::new(verdict_code(&r.verdict.verdict), json, text))
        }
        Check::Wn => {
            let seq = chosen_sequence(oracle, opts.sequence.as_ref())?;
            let n = opts.n.unwrap_or(3);
            let factor = b.b_factor.unwrap_or(seq.max_block().max(3));
            let ctx = MetricContext::new(oracle.clone(), factor)?;
            let mut rows = Vec::new();
            let mut text = String::new();
            let mut last = None;
            let mut code = EXIT_OK;
            let mut verdict = json!({ "status": "holds", "up_to": factor });
            for k in 1..=n {
                let r = verify_wn_geodesic(&ctx, &seq, k)?;
                let d = r.distance.value();
                let monotone = match (last, d) {
                    (Some(a), Some(b)) => b > a,
                    _ => true,
                };
                last = d.or(last);
                let _ = writeln!(
                    text,
                    "w_{k} = {}: distance {} {}",
                    r.word.to_text(graph),
                    d.map_or("?".to_owned(), |v| v.to_string()),
                    verdict_text(&r.verdict.verdict)
                );
                rows.push(json!({
                    "n": k,
                    "word": r.word.to_text(graph),
                    "distance": d,
                    "status": r.distance.status,
                    "witness": r.distance.witness.as_ref().map(|w| w.to_text(graph)),
                    "verdict": verdict_json(&r.verdict.verdict),
                }));
                let c = if monotone { verdict_code(&r.verdict.verdict) } else { EXIT_COUNTEREXAMPLE };
                if c != EXIT_OK && code == EXIT_OK {
                    code = c;
                    verdict = if monotone {
                        verdict_json(&r.verdict.verdict)
                    } else {
                        json!({ "status": "counterexample", "witness": format!("distance of w_{k} does not grow") })
                    };
                }
            }
            let details = json!({ "terms": rows });
            let json = report("wn", oracle, verdict, &ctx.bounds().with("n", n), details);
            Ok(Outcome::new(code, json, text))
        }
        Check::Diameter2 => {
            let radius = b.r.unwrap_or(6) as u32;
            let r = spherical_diameter2_check(oracle, radius)?;
            let v = text_words(graph, r.verdict.verdict);
            let paths: Vec<Value> = r
                .paths
                .iter()
                .map(|p| json!({ "element": p.element.to_text(graph), "path": p.path.to_text(graph) }))
                .collect();
            let text = format!("diameter2: {} ({} elements)\n", verdict_text(&v), paths.len());
            let json = report("diameter2", oracle, verdict_json(&v), &r.verdict.bounds, json!({ "paths": paths }));
            Ok(Outcome::new(verdict_code(&v), json, text))
        }
        Check::Embedding => {
            if opts.subset.is_empty() {
                return Err(Error::Precondition("embedding needs --subset".into()));
            }
            let t = graph.subset_from_names(&opts.subset)?;
            let radius = b.r.unwrap_or(3);
            let factor = b.b_factor.unwrap_or(3);
            let r = isometric_embedding_check(oracle, t, radius, factor)?;
            let text = format!(
                "embedding {{{}}}: {} ({} pairs, max distance {})\n",
                r.subset.join(","),
                verdict_text(&r.verdict.verdict),
                r.pairs,
                r.max_distance
            );
            let details = json!({
                "subset": r.subset,
                "pairs": r.pairs,
                "differences": r.differences,
                "max_distance": r.max_distance,
            });
            let json = report("embedding", oracle, verdict_json(&r.verdict.verdict), &r.verdict.bounds, details);
            Ok(Outcome::new(verdict_code(&r.verdict.verdict), json, text))
        }
        Check::Qi => {
            let radius = b.r.unwrap_or(3);
            let s = b.s.unwrap_or(2);
            let factor = b.b_factor.unwrap_or(s);
            let mut builder = ComplexBuilder::new(oracle)?;
            let ball = builder.coset_poset_ball(radius)?;
            let ball = builder.cone_off(ball, s)?;
            let ctx = MetricContext::new(oracle.clone(), factor)?;
            let r = qi_check(&ball, &ctx, opts.cap)?;
            let text = format!(
                "qi: {} ({} pairs, max d_Cay {}, max d_C {}, max ratio {})\n",
                verdict_text(&r.verdict.verdict),
                r.pairs,
                r.max_cayley,
                r.max_complex,
                r.max_ratio
            );
            let details = json!({
                "vertices": ball.vertices().len(),
                "edges": ball.edge_count(),
                "pairs": r.pairs,
                "truncated": r.truncated,
                "skipped": r.skipped,
                "max_cayley": r.max_cayley,
                "max_complex": r.max_complex,
                "max_ratio": r.max_ratio,
            });
            let json = report("qi", oracle, verdict_json(&r.verdict.verdict), &r.verdict.bounds, details);
            Ok(Outcome::new(verdict_code(&r.verdict.verdict), json, text))
        }
    }
}

fn distance(oracle: &Arc<GroupOracle>, b: &BoundsArg, g: &str, h: &str) -> Result<Outcome> {
    let graph = oracle.graph();
    let g = SignedWord::parse(graph, g)?;
    let h = SignedWord::parse(graph, h)?;
    let ctx = MetricContext::new(oracle.clone(), b.b_factor.unwrap_or(3))?;
    let r = ctx.m_distance(&g, &h, b.l.map(|l| l as u32))?;
    let code = match r.distance {
        Some(_) => EXIT_OK,
        None => EXIT_INCONCLUSIVE,
    };
    let text = match r.distance {
        Some(d) => format!("{d}\n{}\n", r.witness.as_deref().unwrap_or("")),
        None => format!("at least {}, at most {}\n", r.lower, r.upper.map_or("?".to_owned(), |u| u.to_string())),
    };
    let mut json = serde_json::to_value(&r).expect("reports serialize");
    if let Value::Object(o) = &mut json {
        o.insert("schema".into(), json!(schema("distance")));
        o.insert("graph".into(), json!(graph.to_text()));
    }
    Ok(Outcome::new(code, json, text))
}

fn poset(oracle: &GroupOracle, b: &BoundsArg) -> Result<Outcome> {
    let graph = oracle.graph();
    let mut builder = ComplexBuilder::new(oracle)?;
    let mut ball = builder.coset_poset_ball(b.r.unwrap_or(2))?;
    if let Some(s) = b.s {
        ball = builder.cone_off(ball, s)?;
    }
    let mut json = serde_json::to_value(ball.to_doc(graph)).expect("reports serialize");
    if let Value::Object(o) = &mut json {
        o.insert("schema".into(), json!(schema("poset")));
        o.insert("graph".into(), json!(graph.to_text()));
    }
    let text = format!(
        "{} vertices, {} edges, {} maximal simplices\n",
        ball.vertices().len(),
        ball.edge_count(),
        ball.simplices().len()
    );
    let mut out = Outcome::new(EXIT_OK, json, text);
    out.dot = Some(ball.to_dot(graph));
    Ok(out)
}

fn sequence(oracle: &GroupOracle, n: Option<usize>) -> Result<Outcome> {
    let graph = oracle.graph();
    let seq = chosen_sequence(oracle, None)?;
    let period: Vec<String> = seq.period().iter().map(|w| w.to_text(graph)).collect();
    let mut text = period.join("\n");
    text.push('\n');
    let word = n.map(|n| seq.word(n).to_text(graph));
    if let (Some(n), Some(w)) = (n, &word) {
        let _ = writeln!(text, "w_{n} = {w}");
    }
    let json = json!({
        "schema": schema("sequence"),
        "graph": graph.to_text(),
        "period": period,
        "n": n,
        "word": word,
    });
    Ok(Outcome::new(EXIT_OK, json, text))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("artin").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap() + &String::from_utf8(err).unwrap())
    }

    #[test]
    fn bounds_parse() {
        let b: BoundsArg = "L=5, B=3,K=2,b=6,r=3,s=2,budget=100".parse().unwrap();
        assert_eq!(b.l, Some(5));
        assert_eq!(b.b_factor, Some(3));
        assert_eq!(b.budget().slack, 2);
        assert_eq!(b.budget().rule_len, Some(6));
        assert!("Q=1".parse::<BoundsArg>().is_err());
        assert!("L=0".parse::<BoundsArg>().is_err());
        assert_eq!("".parse::<BoundsArg>().unwrap(), BoundsArg::default());
    }

    #[test]
    fn classify_exit_codes() {
        let (code, out) = run_args(&["classify", "--presentation", "a b c; a b 3; b c 3; a c 3", "--format", "text"]);
        assert_eq!((code, out.as_str()), (0, "LargeTriangle (a,b,c)\n"));
        let (code, out) = run_args(&["classify", "--presentation", "a b c; a b 2; b c 2; a c 2", "--format", "text"]);
        assert_eq!((code, out.as_str()), (2, "NotCovered\n"));
        let (code, out) = run_args(&["classify", "--presentation", "s t;", "--format", "text"]);
        assert_eq!((code, out.as_str()), (0, "InfiniteLabelPair (s,t)\n"));
        let (code, _) = run_args(&["classify", "--presentation", "a b; a b 1"]);
        assert_eq!(code, 1);
    }

    #[test]
    fn blocking_pair_counterexample_in_z2() {
        let (code, out) = run_args(&["verify", "criterion2", "--presentation", "a b; a b 2", "--u", "a", "--x", "b"]);
        assert_eq!(code, 3);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["verdict"]["witness"], "b'");
        assert_eq!(v["schema"], "artin.verify.criterion2/1");
    }

    #[test]
    fn distance_in_free_group() {
        let (code, out) =
            run_args(&["distance", "--presentation", "s t;", "--g", "", "--h", "s t' s t'", "--format", "text"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("4\n"), "{out}");
    }

    #[test]
    fn dot_only_for_poset() {
        let (code, _) = run_args(&["classify", "--presentation", "s t;", "--format", "dot"]);
        assert_eq!(code, 1);
        let (code, out) = run_args(&["poset", "--presentation", "s t;", "--bounds", "r=1", "--format", "dot"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("graph deligne {"));
    }
}
