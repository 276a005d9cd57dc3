//! Blocking pairs, preserved signed suffixes and alternating blocking
//! sequences, checked over all words up to a length bound.
//!
//! A pair `(u, x)` of a word and a letter is blocking when `w·u·x` is
//! geodesic for every `w` with `w·u` geodesic. A sign-alternating sequence
//! of constant-sign words is blocking when every letter is guarded by a
//! blocking pair whose first entry is a suffix of the preceding letters.
//! Together with preserved suffixes this makes `α_1⋯α_n` a geodesic of
//! length `n` in the Cayley graph over the monoid, which
//! [`verify_wn_geodesic`] measures directly.

use rayon::prelude::*;
use serde::Serialize;

use crate::cayley::{MDistance, MetricContext};
use crate::error::{Error, Result};
use crate::group::GroupOracle;
use crate::monoid::PositiveWord;
use crate::presentation::{DefiningGraph, Gen, Label};
use crate::verdict::{Bound, BoundedVerdict, Verdict};
use crate::words::{alphabet, Letter, Sign, SignedWord};

/// Geodesic words of length at most `max_len`, in shortlex order.
pub fn geodesic_words(oracle: &GroupOracle, max_len: usize) -> Result<Vec<SignedWord>> {
    let letters = alphabet(oracle.graph().full());
    let mut out = vec![SignedWord::empty()];
    let mut layer = vec![SignedWord::empty()];
    for _ in 0..max_len {
        let cands: Vec<SignedWord> = layer
            .iter()
            .flat_map(|w| {
                letters.iter().filter(move |&&l| w.last() != Some(l.inverse())).map(move |&l| {
                    let mut v = w.clone();
                    v.push(l);
                    v
                })
            })
            .collect();
        let keep: Vec<Result<bool>> = cands.par_iter().map(|v| oracle.geodesic(v)).collect();
        let mut next = Vec::new();
        for (v, k) in cands.into_iter().zip(keep) {
            if k? {
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    Ok(out)
}

/// A candidate blocking pair and the bound on the quantified word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockingPairQuery {
    pub u: SignedWord,
    pub x: Letter,
    pub max_len: usize,
}

enum Probe {
    Fine,
    Broken,
    Stuck(String),
}

fn probe(r: Result<bool>) -> Probe {
    match r {
        Ok(true) => Probe::Fine,
        Ok(false) => Probe::Broken,
        Err(e) => Probe::Stuck(e.to_string()),
    }
}

/// Checks `(u, x)` against every word `w` with `|w| ≤ L` and `w·u`
/// geodesic. The counterexample reported is the shortlex-least `w`.
pub fn is_blocking_pair(oracle: &GroupOracle, q: &BlockingPairQuery) -> Result<BoundedVerdict<SignedWord>> {
    if !q.u.is_freely_reduced() {
        return Err(Error::NotFreelyReduced);
    }
    let bounds = oracle.bounds().with("L", q.max_len);
    let done = |v| Ok(BoundedVerdict::new(v, bounds.clone()));
    let ux = q.u.concat(&SignedWord::from(vec![q.x]));
    let letters = alphabet(oracle.graph().full());
    // Words `w` with `w·u` geodesic are closed under dropping a first letter,
    // so each level is grown from the survivors of the previous one.
    let mut level = vec![SignedWord::empty()];
    if !oracle.geodesic(&q.u)? {
        return done(Verdict::HoldsUpTo(Bound::Length(q.max_len as u64)));
    }
    for len in 0..=q.max_len {
        let results: Vec<Probe> = level.par_iter().map(|w| probe(oracle.geodesic(&w.concat(&ux)))).collect();
        for (w, p) in level.iter().zip(&results) {
            match p {
                Probe::Fine => {}
                Probe::Broken => return done(Verdict::Counterexample(w.clone())),
                Probe::Stuck(r) => return done(Verdict::Inconclusive(r.clone())),
            }
        }
        if len == q.max_len {
            break;
        }
        let mut cands: Vec<SignedWord> = level
            .iter()
            .flat_map(|w| {
                let first = w.first().or(q.u.first());
                letters
                    .iter()
                    .filter(move |&&l| first != Some(l.inverse()))
                    .map(move |&l| SignedWord::from([&[l][..], w.letters()].concat()))
            })
            .collect();
        cands.sort();
        let keep: Vec<Result<bool>> = cands.par_iter().map(|w| oracle.geodesic(&w.concat(&q.u))).collect();
        let mut next = Vec::with_capacity(cands.len());
        for (w, k) in cands.into_iter().zip(keep) {
            match probe(k) {
                Probe::Fine => next.push(w),
                Probe::Broken => {}
                Probe::Stuck(r) => return done(Verdict::Inconclusive(r)),
            }
        }
        level = next;
    }
    done(Verdict::HoldsUpTo(Bound::Length(q.max_len as u64)))
}

/// A letter `a` and geodesic `w` such that no geodesic word for `a·w`
/// checked keeps the longest proper constant-sign suffix of `w`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuffixFailure {
    pub letter: String,
    pub word: String,
    pub suffix: String,
}

/// The longest proper suffix of `w` whose letters share the sign of its
/// last letter.
pub fn proper_signed_suffix(w: &SignedWord) -> Result<SignedWord> {
    let sign = w.last().ok_or(Error::EmptyWord)?.sign();
    let u = w.longest_signed_suffix(sign)?;
    if u.len() == w.len() {
        return Ok(SignedWord::from(w.letters()[1..].to_vec()));
    }
    Ok(u)
}

/// Checks preserved positive and negative suffixes on every geodesic word
/// of length at most `L`.
pub fn preserved_signed_suffixes_check(oracle: &GroupOracle, max_len: usize) -> Result<BoundedVerdict<SuffixFailure>> {
    let bounds = oracle.bounds().with("L", max_len);
    let graph = oracle.graph();
    let words = geodesic_words(oracle, max_len)?;
    let gens: Vec<Gen> = graph.gens().collect();
    let cases: Vec<(Letter, &SignedWord)> = words
        .iter()
        .filter(|w| !w.is_empty())
        .flat_map(|w| {
            let sign = w.last().map(|l| l.sign()).unwrap_or(Sign::Pos);
            gens.iter().map(move |&g| (Letter::new(g, sign), w))
        })
        .collect();
    let results: Vec<Result<bool>> = cases.par_iter().map(|&(a, w)| keeps_suffix(oracle, a, w)).collect();
    for ((a, w), r) in cases.iter().zip(results) {
        match r {
            Ok(true) => {}
            Ok(false) => {
                let failure = SuffixFailure {
                    letter: SignedWord::from(vec![*a]).to_text(graph),
                    word: w.to_text(graph),
                    suffix: proper_signed_suffix(w)?.to_text(graph),
                };
                return Ok(BoundedVerdict::new(Verdict::Counterexample(failure), bounds));
            }
            Err(e) => return Ok(BoundedVerdict::new(Verdict::Inconclusive(e.to_string()), bounds)),
        }
    }
    Ok(BoundedVerdict::new(Verdict::HoldsUpTo(Bound::Length(max_len as u64)), bounds))
}

fn keeps_suffix(oracle: &GroupOracle, a: Letter, w: &SignedWord) -> Result<bool> {
    let u = proper_signed_suffix(w)?;
    let aw = SignedWord::from(vec![a]).concat(w);
    if oracle.geodesic(&aw)? {
        return Ok(true);
    }
    let reps = oracle.geodesic_representatives(&aw)?;
    Ok(reps.words.iter().any(|r| r.letters().ends_with(u.letters())))
}

/// For geodesic words `w·y·z` with `|w| ≤ L` and `y, z` letters of two
/// distinct generators, checks that every geodesic word of the element
/// found ends in a letter of one of those two generators.
pub fn two_generator_suffix_check(oracle: &GroupOracle, max_len: usize) -> Result<BoundedVerdict<SignedWord>> {
    let bounds = oracle.bounds().with("L", max_len);
    let words = geodesic_words(oracle, max_len)?;
    let letters = alphabet(oracle.graph().full());
    let tails: Vec<(Letter, Letter)> = letters
        .iter()
        .flat_map(|&y| letters.iter().filter(move |z| z.gen() != y.gen()).map(move |&z| (y, z)))
        .collect();
    let cases: Vec<SignedWord> = words
        .iter()
        .flat_map(|w| tails.iter().map(move |&(y, z)| w.concat(&SignedWord::from(vec![y, z]))))
        .filter(|v| v.is_freely_reduced())
        .collect();
    let results: Vec<Result<Option<bool>>> = cases
        .par_iter()
        .map(|v| {
            if !oracle.geodesic(v)? {
                return Ok(None);
            }
            let n = v.len();
            let (y, z) = (v.letters()[n - 2].gen(), v.letters()[n - 1].gen());
            let reps = oracle.geodesic_representatives(v)?;
            Ok(Some(reps.words.iter().all(|r| r.last().is_some_and(|l| l.gen() == y || l.gen() == z))))
        })
        .collect();
    for (v, r) in cases.into_iter().zip(results) {
        match r {
            Ok(Some(false)) => return Ok(BoundedVerdict::new(Verdict::Counterexample(v), bounds)),
            Ok(_) => {}
            Err(e) => return Ok(BoundedVerdict::new(Verdict::Inconclusive(e.to_string()), bounds)),
        }
    }
    Ok(BoundedVerdict::new(Verdict::HoldsUpTo(Bound::Length(max_len as u64)), bounds))
}

/// A periodic sequence `α_1, α_2, …` of nonempty words, positive at odd
/// and negative at even indices, with `α_{i+p} = α_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockingSequence {
    period: Vec<SignedWord>,
}

impl BlockingSequence {
    pub fn new(period: Vec<SignedWord>) -> Result<Self> {
        if period.is_empty() || period.len() % 2 == 1 {
            return Err(Error::Precondition("the period must have positive even length".into()));
        }
        for (i, a) in period.iter().enumerate() {
            let ok = if i % 2 == 0 { a.is_positive() } else { a.is_negative() };
            if a.is_empty() || !ok {
                return Err(Error::Precondition(format!("α_{} has the wrong sign or is empty", i + 1)));
            }
        }
        Ok(BlockingSequence { period })
    }

    /// Reads one word per nonempty line.
    pub fn parse(graph: &DefiningGraph, text: &str) -> Result<Self> {
        let period = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty())
            .map(|l| SignedWord::parse(graph, l))
            .collect::<Result<Vec<_>>>()?;
        Self::new(period)
    }

    pub fn period(&self) -> &[SignedWord] {
        &self.period
    }

    /// `α_i` for `i ≥ 1`.
    pub fn alpha(&self, i: usize) -> &SignedWord {
        assert!(i >= 1, "sequence indices start at 1");
        &self.period[(i - 1) % self.period.len()]
    }

    /// `w_n = α_1 ⋯ α_n`.
    pub fn word(&self, n: usize) -> SignedWord {
        (1..=n).fold(SignedWord::empty(), |acc, i| acc.concat(self.alpha(i)))
    }

    pub fn max_block(&self) -> usize {
        self.period.iter().map(SignedWord::len).max().unwrap_or(0)
    }
}

fn word(gens: &[(Gen, Sign)]) -> SignedWord {
    gens.iter().map(|&(g, s)| Letter::new(g, s)).collect()
}

/// The period-6 sequence `ab, c⁻¹a⁻¹, bc, a⁻¹b⁻¹, ca, b⁻¹c⁻¹` for a
/// triangle with all labels at least 3.
pub fn large_type_sequence(graph: &DefiningGraph, a: Gen, b: Gen, c: Gen) -> Result<BlockingSequence> {
    distinct(graph, a, b, c)?;
    for (x, y) in [(a, b), (b, c), (a, c)] {
        if !graph.label(x, y).at_least(3) {
            return Err(Error::Precondition(format!("label of {} {} is below 3", graph.name(x), graph.name(y))));
        }
    }
    use Sign::{Neg as N, Pos as P};
    BlockingSequence::new(vec![
        word(&[(a, P), (b, P)]),
        word(&[(c, N), (a, N)]),
        word(&[(b, P), (c, P)]),
        word(&[(a, N), (b, N)]),
        word(&[(c, P), (a, P)]),
        word(&[(b, N), (c, N)]),
    ])
}

/// The period-2 sequence `babc, b⁻¹a⁻¹b⁻¹c⁻¹` for `m_ab > 3`, `m_bc > 3`
/// and `m_ac = 2`.
pub fn three_free_sequence(graph: &DefiningGraph, a: Gen, b: Gen, c: Gen) -> Result<BlockingSequence> {
    distinct(graph, a, b, c)?;
    let ok = graph.label(a, b).at_least(4) && graph.label(b, c).at_least(4) && graph.label(a, c) == Label::Finite(2);
    if !ok {
        return Err(Error::Precondition("need m_ab > 3, m_bc > 3 and m_ac = 2".into()));
    }
    use Sign::{Neg as N, Pos as P};
    BlockingSequence::new(vec![word(&[(b, P), (a, P), (b, P), (c, P)]), word(&[(b, N), (a, N), (b, N), (c, N)])])
}

fn distinct(graph: &DefiningGraph, a: Gen, b: Gen, c: Gen) -> Result<()> {
    if a == b || b == c || a == c {
        return Err(Error::Precondition("generators must be distinct".into()));
    }
    for g in [a, b, c] {
        if g.index() >= graph.rank() {
            return Err(Error::UnknownGenerator(format!("#{}", g.0)));
        }
    }
    Ok(())
}

/// Context used for the letters of `α_1`, which has no predecessor.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BaseContext {
    /// `α_0` is read as `α_p`, extending the period backwards.
    #[default]
    Periodic,
    /// Only the letters of `α_1` before `x`.
    PrefixOnly,
}

/// The guard found for one letter of the sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Guard {
    /// Index `i` of `α_i`, from 1.
    pub index: usize,
    /// Position of the letter in `α_i`, from 0.
    pub position: usize,
    pub letter: String,
    /// Shortest suffix of the context forming a blocking pair with the letter.
    pub guard: Option<String>,
}

/// Outcome of [`verify_blocking_sequence`].
#[derive(Clone, Debug, Serialize)]
pub struct SequenceReport {
    pub verdict: BoundedVerdict<Guard>,
    pub guards: Vec<Guard>,
    pub base: BaseContext,
}

/// For each letter `x` of `α_1, …, α_n`, tries the suffixes of
/// `α_{i-1}·(α_i before x)` shortest first and records the first that forms
/// a blocking pair with `x` at bound `L`.
pub fn verify_blocking_sequence(
    oracle: &GroupOracle,
    seq: &BlockingSequence,
    n: usize,
    max_len: usize,
    base: BaseContext,
) -> Result<SequenceReport> {
    if n == 0 {
        return Err(Error::Precondition("n must be at least 1".into()));
    }
    let graph = oracle.graph();
    let bounds = oracle.bounds().with("L", max_len).with("n", n);
    let mut guards = Vec::new();
    let mut inconclusive = None;
    // The guards only depend on `i` modulo the period.
    let distinct_i = n.min(seq.period().len() + 1);
    for i in 1..=distinct_i {
        let prev = match (i, base) {
            (1, BaseContext::PrefixOnly) => SignedWord::empty(),
            (1, BaseContext::Periodic) => seq.alpha(seq.period().len()).clone(),
            _ => seq.alpha(i - 1).clone(),
        };
        let alpha = seq.alpha(i);
        for (j, &x) in alpha.letters().iter().enumerate() {
            let context = prev.concat(&SignedWord::from(alpha.letters()[..j].to_vec()));
            let mut found = None;
            for start in (0..=context.len()).rev() {
                let u = SignedWord::from(context.letters()[start..].to_vec());
                let q = BlockingPairQuery { u: u.clone(), x, max_len };
                let v = is_blocking_pair(oracle, &q)?;
                match v.verdict {
                    Verdict::HoldsUpTo(_) => {
                        found = Some(u);
                        break;
                    }
                    Verdict::Inconclusive(r) => {
                        inconclusive.get_or_insert(r);
                    }
                    Verdict::Counterexample(_) => {}
                }
            }
            let guard = Guard {
                index: i,
                position: j,
                letter: SignedWord::from(vec![x]).to_text(graph),
                guard: found.map(|u| u.to_text(graph)),
            };
            let missing = guard.guard.is_none();
            guards.push(guard.clone());
            if missing {
                let verdict = match inconclusive {
                    Some(r) => Verdict::Inconclusive(r),
                    None => Verdict::Counterexample(guard),
                };
                return Ok(SequenceReport { verdict: BoundedVerdict::new(verdict, bounds), guards, base });
            }
        }
    }
    let verdict = Verdict::HoldsUpTo(Bound::Length(max_len as u64));
    Ok(SequenceReport { verdict: BoundedVerdict::new(verdict, bounds), guards, base })
}

/// Outcome of [`verify_wn_geodesic`].
#[derive(Clone, Debug)]
pub struct WnReport {
    pub n: usize,
    pub word: SignedWord,
    pub distance: MDistance,
    /// A counterexample is a factorization shorter than `n`.
    pub verdict: BoundedVerdict<String>,
}

/// Measures `d(e, w_n)` with the factor bound of `ctx`; it should be `n`.
pub fn verify_wn_geodesic(ctx: &MetricContext, seq: &BlockingSequence, n: usize) -> Result<WnReport> {
    if n == 0 {
        return Err(Error::Precondition("n must be at least 1".into()));
    }
    if seq.max_block() > ctx.factor_bound() {
        return Err(Error::Precondition(format!(
            "the factor bound {} is below the longest sequence word {}",
            ctx.factor_bound(),
            seq.max_block()
        )));
    }
    let graph = ctx.oracle().graph();
    let word = seq.word(n);
    let distance = ctx.distance(&word, None)?;
    let verdict = match distance.value() {
        Some(d) if d as usize == n => Verdict::HoldsUpTo(Bound::Length(ctx.factor_bound() as u64)),
        Some(_) => Verdict::Counterexample(distance.witness.as_ref().map(|w| w.to_text(graph)).unwrap_or_default()),
        None => Verdict::Inconclusive(distance.reason.clone().unwrap_or_else(|| "search stopped".into())),
    };
    Ok(WnReport { n, word, distance, verdict: BoundedVerdict::new(verdict, ctx.bounds().with("n", n)) })
}

/// For a spherical graph, returns `Δ²·u`, which is geodesic while
/// `Δ²·u·x⁻¹` is not, so `(u, x⁻¹)` is not a blocking pair.
pub fn spherical_blocking_obstruction(oracle: &GroupOracle, u: &PositiveWord, x: Gen) -> Result<SignedWord> {
    let graph = oracle.graph();
    let d = oracle.spherical_data(graph.full())?;
    let witness = d.delta.signed().pow(2).concat(&u.signed());
    let extended = witness.concat(&SignedWord::from(vec![Letter::neg(x)]));
    let geodesic = oracle.geodesic_length(&witness)? == witness.len();
    let shortens = oracle.geodesic_length(&extended)? < extended.len();
    if !geodesic || !shortens {
        return Err(Error::Precondition(format!(
            "obstruction check failed for u = {}, x = {}",
            u.to_text(graph),
            graph.name(x)
        )));
    }
    Ok(witness)
}
