//! Acceptance suite: one line per criterion, non-zero exit if any fails.
//!
//! Distances and counts are compared exactly. The time limits below are
//! wall-clock budgets for a single core.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use artin_core::cayley::{isometric_embedding_check, spherical_diameter2_check, DistanceStatus, MetricContext};
use artin_core::criteria::{
    is_blocking_pair, large_type_sequence, preserved_signed_suffixes_check, spherical_blocking_obstruction,
    three_free_sequence, two_generator_suffix_check, verify_blocking_sequence, verify_wn_geodesic, BaseContext,
    BlockingPairQuery,
};
use artin_core::deligne::{qi_check, ComplexBuilder};
use artin_core::group::{default_rule_len, Budget, Routing, RuleIndex};
use artin_core::monoid::PositiveWord;
use artin_core::{DefiningGraph, Gen, GroupOracle, SignedWord};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TRIANGLE_333: &str = "a b c; a b 3; b c 3; a c 3";
const TRIANGLE_442: &str = "a b c; a b 4; b c 4; a c 2";
const FREE: &str = "s t;";

/// Criterion 1, per dihedral monoid.
const MONOID_LIMIT: Duration = Duration::from_secs(1);
/// Criterion 3, all three groups together.
const DIAMETER_LIMIT: Duration = Duration::from_secs(30);
/// Criterion 7, per group.
const WN_LIMIT: Duration = Duration::from_secs(300);
/// Criterion 5: probability that the mutation drops a rule class.
const MUTATION_DROP: f64 = 0.1;
const MUTATION_SEEDS: u64 = 6;
/// Criterion 11: `d_C ≤ QI_FACTOR · d_Cay`.
const QI_FACTOR: u32 = 2;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn oracle(text: &str) -> Arc<GroupOracle> {
    Arc::new(GroupOracle::from_graph(DefiningGraph::parse(text).unwrap()))
}

fn dihedral(m: Option<u32>) -> String {
    match m {
        Some(m) => format!("a b; a b {m}"),
        None => "a b;".to_owned(),
    }
}

fn word(o: &GroupOracle, text: &str) -> SignedWord {
    SignedWord::parse(o.graph(), text).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn positive_words(gens: &[Gen], max_len: usize) -> Vec<PositiveWord> {
    let mut out = vec![PositiveWord(Vec::new())];
    let mut layer = out.clone();
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w| gens.iter().map(move |&g| PositiveWord([w.0.as_slice(), &[g]].concat())))
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

fn alternating(first: Gen, second: Gen, len: usize) -> PositiveWord {
    PositiveWord((0..len).map(|i| if i % 2 == 0 { first } else { second }).collect())
}

/// Δ has length m and its class is the two alternating words; the simples
/// are the 2m alternating prefixes; Δ² fixes every simple.
fn c1_monoid_exactness() -> Outcome {
    let mut notes = Vec::new();
    for m in 2..=5u32 {
        let t = Instant::now();
        let o = oracle(&dihedral(Some(m)));
        let (a, b) = (Gen(0), Gen(1));
        let monoid = o.monoid();
        let d = monoid.garside_element(o.graph().full()).map_err(|e| e.to_string())?;
        ensure(d.delta.len() == m as usize, || format!("I2({m}): |Δ| = {}", d.delta.len()))?;
        let class: BTreeSet<PositiveWord> = monoid.positive_class(&d.delta).members().iter().cloned().collect();
        let expected: BTreeSet<PositiveWord> =
            [alternating(a, b, m as usize), alternating(b, a, m as usize)].into_iter().collect();
        ensure(class == expected, || format!("I2({m}): class of Δ is {class:?}"))?;
        ensure(d.simples.len() == 2 * m as usize, || format!("I2({m}): {} simples", d.simples.len()))?;
        let prefixes: BTreeSet<PositiveWord> = (0..=m as usize)
            .flat_map(|k| [alternating(a, b, k), alternating(b, a, k)])
            .map(|w| monoid.canonical(&w))
            .collect();
        let simples: BTreeSet<PositiveWord> = d.simples.iter().cloned().collect();
        ensure(simples == prefixes, || format!("I2({m}): simples differ from alternating prefixes"))?;
        for s in &d.simples {
            let once = monoid.delta_conjugation(&d, s).map_err(|e| e.to_string())?;
            let twice = monoid.delta_conjugation(&d, &once).map_err(|e| e.to_string())?;
            ensure(monoid.monoid_equal(&twice, s), || format!("I2({m}): Δ² moves {s:?}"))?;
        }
        let el = t.elapsed();
        ensure(el < MONOID_LIMIT, || format!("I2({m}) took {el:?}"))?;
        notes.push(format!("I2({m}) {:.0?}", el));
    }
    Ok(notes.join(", "))
}

/// Monoid equality agrees with group equality on positive words.
fn c2_paris_embedding() -> Outcome {
    let mut pairs = 0usize;
    for m in [Some(2), Some(3), Some(4), None] {
        let o = oracle(&dihedral(m));
        let words = positive_words(&[Gen(0), Gen(1)], 5);
        let mut bad = 0usize;
        for u in &words {
            for v in &words {
                let monoid = o.monoid().monoid_equal(u, v);
                let group = o.equal(&u.signed(), &v.signed()).is_equal();
                bad += usize::from(monoid != group);
                pairs += 1;
            }
        }
        ensure(bad == 0, || format!("{bad} disagreements for m = {m:?}"))?;
    }
    Ok(format!("0 disagreements over {pairs} pairs"))
}

fn c3_spherical_diameter() -> Outcome {
    let t = Instant::now();
    let mut notes = Vec::new();
    for (m, radius) in [(2, 6), (3, 6), (4, 5)] {
        let o = oracle(&dihedral(Some(m)));
        let r = spherical_diameter2_check(&o, radius).map_err(|e| e.to_string())?;
        ensure(r.verdict.holds(), || format!("I2({m}): {:?}", r.verdict.verdict))?;
        let longest = r.paths.iter().map(|p| p.path.len()).max().unwrap_or(0);
        ensure(longest <= 2, || format!("I2({m}): path of length {longest}"))?;
        notes.push(format!("I2({m}) r={radius}: {} elements", r.paths.len()));
    }
    let el = t.elapsed();
    ensure(el < DIAMETER_LIMIT, || format!("took {el:?}"))?;
    Ok(format!("{} ({el:.1?})", notes.join(", ")))
}

fn c4_free_geodesics() -> Outcome {
    let o = oracle(FREE);
    let ctx = MetricContext::new(o.clone(), 3).map_err(|e| e.to_string())?;
    for m in 1..=5usize {
        let h = word(&o, "s t'").pow(m);
        let r = ctx.m_distance(&SignedWord::empty(), &h, None).map_err(|e| e.to_string())?;
        ensure(r.status == DistanceStatus::Exact && r.distance == Some(2 * m as u32), || {
            format!("m = {m}: {:?} {:?}", r.status, r.distance)
        })?;
    }
    Ok("d(e, (s t')^m) = 2m for m = 1..5".to_owned())
}

fn c5_preserved_suffixes() -> Outcome {
    for text in [FREE, "a b; a b 2", TRIANGLE_333] {
        let r = preserved_signed_suffixes_check(&oracle(text), 5).map_err(|e| e.to_string())?;
        ensure(r.holds(), || format!("{text}: {:?}", r.verdict))?;
    }
    // Sanity: a rule table with a random tenth of its classes removed must
    // be caught.
    let graph = Arc::new(DefiningGraph::parse(TRIANGLE_333).unwrap());
    let b = default_rule_len(&graph);
    let base = RuleIndex::for_graph(&graph, b);
    let table = |classes: Vec<Vec<SignedWord>>| {
        GroupOracle::with_rules(
            graph.clone(),
            Budget::default(),
            Arc::new(RuleIndex::from_classes(classes, b)),
            Routing::Table,
        )
    };
    let control = preserved_signed_suffixes_check(&table(base.classes().to_vec()), 5).map_err(|e| e.to_string())?;
    ensure(control.holds(), || format!("unmutated table: {:?}", control.verdict))?;
    let mut caught = 0;
    for seed in 0..MUTATION_SEEDS {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let kept: Vec<_> = base.classes().iter().filter(|_| !rng.gen_bool(MUTATION_DROP)).cloned().collect();
        let r = preserved_signed_suffixes_check(&table(kept), 5).map_err(|e| e.to_string())?;
        caught += usize::from(r.counterexample().is_some());
    }
    ensure(caught == MUTATION_SEEDS as usize, || format!("mutation caught for {caught} of {MUTATION_SEEDS} seeds"))?;
    Ok(format!("holds at L=5 on free, Z², (3,3,3); mutation caught for {caught}/{MUTATION_SEEDS} seeds"))
}

fn c6_blocking_sequences() -> Outcome {
    let o = oracle(TRIANGLE_333);
    let s = large_type_sequence(o.graph(), Gen(0), Gen(1), Gen(2)).map_err(|e| e.to_string())?;
    let r = verify_blocking_sequence(&o, &s, 3, 5, BaseContext::Periodic).map_err(|e| e.to_string())?;
    ensure(r.verdict.holds(), || format!("(3,3,3): {:?}", r.verdict.verdict))?;
    let o2 = oracle(TRIANGLE_442);
    let s2 = three_free_sequence(o2.graph(), Gen(0), Gen(1), Gen(2)).map_err(|e| e.to_string())?;
    let r2 = verify_blocking_sequence(&o2, &s2, 2, 4, BaseContext::Periodic).map_err(|e| e.to_string())?;
    ensure(r2.verdict.holds(), || format!("(4,4,2): {:?}", r2.verdict.verdict))?;
    let z2 = oracle("a b; a b 2");
    let q = BlockingPairQuery { u: word(&z2, "a"), x: word(&z2, "b").letters()[0], max_len: 4 };
    let v = is_blocking_pair(&z2, &q).map_err(|e| e.to_string())?;
    let w = v.counterexample().map(|w| w.to_text(z2.graph()));
    ensure(w.as_deref() == Some("b'"), || format!("Z² pair (a, b): {:?}", v.verdict))?;
    ensure(z2.geodesic(&word(&z2, "b' a")).unwrap() && !z2.geodesic(&word(&z2, "b' a b")).unwrap(), || {
        "Z² witness does not behave as stated".into()
    })?;
    Ok(format!(
        "(3,3,3) n=3 L=5: {} guards; (4,4,2) n=2 L=4: {} guards; Z² (a,b) broken by w = b'",
        r.guards.len(),
        r2.guards.len()
    ))
}

fn c7_wn_growth() -> Outcome {
    let mut notes = Vec::new();
    for (text, b, three_free) in [(TRIANGLE_333, 3, false), (TRIANGLE_442, 5, true)] {
        let t = Instant::now();
        let o = oracle(text);
        let seq = if three_free {
            three_free_sequence(o.graph(), Gen(0), Gen(1), Gen(2))
        } else {
            large_type_sequence(o.graph(), Gen(0), Gen(1), Gen(2))
        }
        .map_err(|e| e.to_string())?;
        let ctx = MetricContext::new(o.clone(), b).map_err(|e| e.to_string())?;
        let mut ds = Vec::new();
        for n in 1..=3 {
            let r = verify_wn_geodesic(&ctx, &seq, n).map_err(|e| e.to_string())?;
            ensure(r.distance.value() == Some(n as u32), || format!("{text}: w_{n} at {:?}", r.distance.value()))?;
            ds.push(n as u32);
        }
        ensure(ds.windows(2).all(|p| p[0] < p[1]), || format!("{text}: not monotone {ds:?}"))?;
        let el = t.elapsed();
        ensure(el < WN_LIMIT, || format!("{text} took {el:?}"))?;
        notes.push(format!("B={b}: {ds:?} ({el:.1?})"));
    }
    Ok(notes.join("; "))
}

fn c8_spherical_obstruction() -> Outcome {
    let mut count = 0;
    for m in [3, 4] {
        let o = oracle(&dihedral(Some(m)));
        for u in positive_words(&[Gen(0), Gen(1)], 3) {
            for x in [Gen(0), Gen(1)] {
                spherical_blocking_obstruction(&o, &u, x).map_err(|e| format!("I2({m}): {e}"))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} pairs (u, x) on I2(3), I2(4)"))
}

fn c9_two_generator_suffixes() -> Outcome {
    let o = oracle(TRIANGLE_333);
    let r = two_generator_suffix_check(&o, 4).map_err(|e| e.to_string())?;
    ensure(r.holds(), || format!("{:?}", r.verdict.map(|w| w.to_text(o.graph()))))?;
    Ok("0 violations for |w| ≤ 4".to_owned())
}

fn c10_isometric_embedding() -> Outcome {
    let mut notes = Vec::new();
    for (text, names) in [(TRIANGLE_333, ["a", "b"]), ("s t u; t u 3", ["s", "t"])] {
        let o = oracle(text);
        let t = o.graph().subset_from_names(&names).unwrap();
        let r = isometric_embedding_check(&o, t, 3, 3).map_err(|e| e.to_string())?;
        ensure(r.verdict.holds(), || format!("{text}: {:?}", r.verdict.verdict))?;
        notes.push(format!("{{{}}}: {} pairs", names.join(","), r.pairs));
    }
    Ok(notes.join(", "))
}

fn c11_qi_inequality() -> Outcome {
    let mut notes = Vec::new();
    for text in [FREE, TRIANGLE_333] {
        let o = oracle(text);
        let mut builder = ComplexBuilder::new(&o).map_err(|e| e.to_string())?;
        let ball = builder.coset_poset_ball(3).map_err(|e| e.to_string())?;
        let ball = builder.cone_off(ball, 2).map_err(|e| e.to_string())?;
        let ctx = MetricContext::new(o.clone(), 2).map_err(|e| e.to_string())?;
        let r = qi_check(&ball, &ctx, 3).map_err(|e| e.to_string())?;
        ensure(r.verdict.holds(), || format!("{text}: {:?}", r.verdict.verdict))?;
        ensure(r.max_complex <= QI_FACTOR * r.max_cayley.max(1), || format!("{text}: max d_C {}", r.max_complex))?;
        ensure(r.max_ratio.is_finite() && r.max_ratio > 0.0, || format!("{text}: ratio {}", r.max_ratio))?;
        notes.push(format!("{text} {} pairs, max d_Cay/d_C = {}", r.pairs, r.max_ratio));
    }
    Ok(notes.join("; "))
}

fn c12_determinism() -> Outcome {
    let runs: [&[&str]; 6] = [
        &["verify", "criterion1", "--presentation", TRIANGLE_333, "--bounds", "L=4"],
        &["verify", "criterion2", "--presentation", TRIANGLE_333, "--bounds", "L=4", "--n", "2"],
        &["verify", "wn", "--presentation", TRIANGLE_333, "--bounds", "B=3", "--n", "2"],
        &["verify", "diameter2", "--presentation", "a b; a b 3", "--bounds", "r=4"],
        &["verify", "embedding", "--presentation", "s t u; t u 3", "--subset", "s,t", "--bounds", "r=2"],
        &["verify", "qi", "--presentation", FREE, "--bounds", "r=2,s=2"],
    ];
    for args in runs {
        let once = || Command::new(env!("CARGO_BIN_EXE_artin")).args(args).output().unwrap();
        let (a, b) = (once(), once());
        ensure(a.status.code() == Some(0), || format!("{} exited {:?}", args[1], a.status.code()))?;
        ensure(a.stdout == b.stdout && !a.stdout.is_empty(), || format!("{} output differs", args[1]))?;
    }
    Ok(format!("{} verify subcommands byte-identical across two runs", runs.len()))
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("monoid engine exactness", c1_monoid_exactness),
        ("monoid and group equality agree", c2_paris_embedding),
        ("spherical diameter two", c3_spherical_diameter),
        ("free group geodesics", c4_free_geodesics),
        ("preserved signed suffixes", c5_preserved_suffixes),
        ("alternating blocking sequences", c6_blocking_sequences),
        ("growth of w_n", c7_wn_growth),
        ("spherical obstruction", c8_spherical_obstruction),
        ("two-generator suffixes", c9_two_generator_suffixes),
        ("isometric embedding", c10_isometric_embedding),
        ("quasi-isometry inequality", c11_qi_inequality),
        ("determinism", c12_determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let el = t.elapsed();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{el:.1?}]", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} [{el:.1?}]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
