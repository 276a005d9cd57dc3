//! Distances in the Cayley graph of the group with the positive monoid as
//! generating set.
//!
//! The monoid is infinite, so every search fixes a factor bound `B`: edges
//! are the positive elements spelled by words of length at most `B` and their
//! inverses. [`MetricContext`] caches the layered ball of that graph around
//! the identity and decides `d(e, x) ≤ k` by splitting off a suffix of the
//! path and looking the rest up in the ball.

use std::sync::{Arc, RwLock};

use rayon::prelude::*;
use rustc_hash::{FxHashMap, FxHashSet};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{ElementKey, GroupOracle};
use crate::monoid::PositiveWord;
use crate::presentation::{DefiningGraph, Gen, GenSet};
use crate::verdict::{Bound, BoundedVerdict, Bounds, Verdict};
use crate::words::{Sign, SignedWord};

/// One factor `p` or `p⁻¹` with `p` a nonempty positive word.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MFactor {
    pub sign: Sign,
    pub word: PositiveWord,
}

impl MFactor {
    pub fn new(sign: Sign, word: PositiveWord) -> Result<Self> {
        if word.is_empty() {
            return Err(Error::EmptyWord);
        }
        Ok(MFactor { sign, word })
    }

    /// The signed word this factor spells.
    pub fn signed(&self) -> SignedWord {
        match self.sign {
            Sign::Pos => self.word.signed(),
            Sign::Neg => self.word.signed().inverse(),
        }
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    fn text(&self, graph: &DefiningGraph) -> String {
        format!("[{}]", self.signed().to_text(graph))
    }
}

/// A product of monoid factors and their inverses.
///
/// Factorizations built from sign blocks alternate in sign; paths found by
/// the bounded search may place two factors of one sign side by side when
/// their total length exceeds the bound. [`MFactorization::merged`] restores
/// alternation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MFactorization {
    factors: Vec<MFactor>,
}

impl MFactorization {
    pub fn new(factors: Vec<MFactor>) -> Result<Self> {
        if factors.iter().any(MFactor::is_empty) {
            return Err(Error::EmptyWord);
        }
        Ok(MFactorization { factors })
    }

    /// One factor per sign block of the free reduction of `w`.
    pub fn from_sign_blocks(w: &SignedWord) -> Self {
        Self::chunked(w, usize::MAX)
    }

    /// Sign blocks of the free reduction of `w`, each cut into pieces of at
    /// most `b` letters.
    pub fn chunked(w: &SignedWord, b: usize) -> Self {
        let b = b.max(1);
        let mut factors = Vec::new();
        for block in w.free_reduce().sign_blocks().blocks {
            let sign = block.letters()[0].sign();
            let gens: Vec<Gen> = block.letters().iter().map(|l| l.gen()).collect();
            let gens = if sign == Sign::Neg { gens.into_iter().rev().collect() } else { gens };
            let mut pieces: Vec<&[Gen]> = gens.chunks(b).collect();
            if sign == Sign::Neg {
                pieces.reverse();
            }
            factors.extend(pieces.into_iter().map(|p| MFactor { sign, word: PositiveWord(p.to_vec()) }));
        }
        MFactorization { factors }
    }

    pub fn factors(&self) -> &[MFactor] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// The word obtained by writing the factors one after another.
    pub fn spelled(&self) -> SignedWord {
        self.factors.iter().fold(SignedWord::empty(), |acc, f| acc.concat(&f.signed()))
    }

    pub fn is_alternating(&self) -> bool {
        self.factors.windows(2).all(|p| p[0].sign != p[1].sign)
    }

    pub fn max_factor_len(&self) -> usize {
        self.factors.iter().map(MFactor::len).max().unwrap_or(0)
    }

    /// Adjacent factors of one sign joined into a single factor.
    pub fn merged(&self) -> Self {
        let mut out: Vec<MFactor> = Vec::new();
        for f in &self.factors {
            match out.last_mut() {
                Some(last) if last.sign == f.sign => {
                    last.word = match f.sign {
                        Sign::Pos => last.word.concat(&f.word),
                        Sign::Neg => f.word.concat(&last.word),
                    };
                }
                _ => out.push(f.clone()),
            }
        }
        MFactorization { factors: out }
    }

    /// Factorization of the inverse element.
    pub fn inverse(&self) -> Self {
        let factors =
            self.factors.iter().rev().map(|f| MFactor { sign: f.sign.flip(), word: f.word.clone() }).collect();
        MFactorization { factors }
    }

    pub fn concat(&self, other: &MFactorization) -> Self {
        MFactorization { factors: self.factors.iter().chain(&other.factors).cloned().collect() }
    }

    /// Factors written as bracketed words, e.g. `[a b][c' a']`.
    pub fn to_text(&self, graph: &DefiningGraph) -> String {
        if self.factors.is_empty() {
            return "ε".to_owned();
        }
        self.factors.iter().map(|f| f.text(graph)).collect()
    }
}

/// How far a distance search got.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DistanceStatus {
    /// `lower == upper`.
    Exact,
    /// Stopped at the caller's cap; the distance exceeds `lower - 1`.
    AtLeast,
    /// Search limits hit before the bounds met.
    Inconclusive,
}

/// Result of a bounded distance search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MDistance {
    /// No path shorter than this exists with factors within the bound.
    pub lower: u32,
    /// Length of `witness`, when one is known.
    pub upper: Option<u32>,
    pub witness: Option<MFactorization>,
    pub status: DistanceStatus,
    pub reason: Option<String>,
}

impl MDistance {
    fn exact(w: MFactorization) -> Self {
        let k = w.len() as u32;
        MDistance { lower: k, upper: Some(k), witness: Some(w), status: DistanceStatus::Exact, reason: None }
    }

    pub fn value(&self) -> Option<u32> {
        (self.status == DistanceStatus::Exact).then_some(self.lower)
    }
}

/// JSON form of a distance query.
#[derive(Clone, Debug, Serialize)]
pub struct MDistanceReport {
    pub pair: (String, String),
    pub distance: Option<u32>,
    pub status: DistanceStatus,
    pub lower: u32,
    pub upper: Option<u32>,
    pub witness: Option<String>,
    pub bounds: Bounds,
}

struct CayleyBall {
    keys: Vec<ElementKey>,
    /// `(parent id, step id)`; the root points at itself.
    parent: Vec<(u32, u32)>,
    index: FxHashMap<ElementKey, u32>,
    /// Sphere `k` holds the ids `starts[k]..starts[k + 1]`.
    starts: Vec<usize>,
}

impl CayleyBall {
    fn radius(&self) -> usize {
        self.starts.len() - 2
    }

    fn sphere(&self, k: usize) -> std::ops::Range<usize> {
        self.starts[k]..self.starts[k + 1]
    }

    fn dist(&self, id: usize) -> usize {
        self.starts.partition_point(|&s| s <= id) - 1
    }
}

/// Limits of a [`MetricContext`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MetricLimits {
    /// Largest cached ball, in elements.
    pub max_ball: usize,
    /// The ball grows past the radius a query needs while the next sphere
    /// is expected to stay below this many new elements.
    pub eager_layer: usize,
    /// Node cap for [`MetricContext::alternating_search`].
    pub max_nodes: usize,
}

impl Default for MetricLimits {
    fn default() -> Self {
        MetricLimits { max_ball: 2_000_000, eager_layer: 500_000, max_nodes: 2_000_000 }
    }
}

/// Distance computations for one group and one factor bound.
pub struct MetricContext {
    oracle: Arc<GroupOracle>,
    factor_bound: usize,
    limits: MetricLimits,
    steps: Vec<(ElementKey, MFactor)>,
    ball: RwLock<CayleyBall>,
    memo: RwLock<FxHashMap<ElementKey, MDistance>>,
}

impl MetricContext {
    pub fn new(oracle: Arc<GroupOracle>, factor_bound: usize) -> Result<Self> {
        Self::with_limits(oracle, factor_bound, MetricLimits::default())
    }

    pub fn with_limits(oracle: Arc<GroupOracle>, factor_bound: usize, limits: MetricLimits) -> Result<Self> {
        if factor_bound == 0 {
            return Err(Error::Precondition("the factor bound must be at least 1".into()));
        }
        let steps = monoid_steps(&oracle, factor_bound)?;
        let ball = CayleyBall {
            keys: vec![ElementKey::identity()],
            parent: vec![(0, 0)],
            index: [(ElementKey::identity(), 0)].into_iter().collect(),
            starts: vec![0, 1],
        };
        Ok(MetricContext {
            oracle,
            factor_bound,
            limits,
            steps,
            ball: RwLock::new(ball),
            memo: RwLock::new(FxHashMap::default()),
        })
    }

    pub fn oracle(&self) -> &GroupOracle {
        &self.oracle
    }

    pub fn factor_bound(&self) -> usize {
        self.factor_bound
    }

    /// Number of edges at each vertex.
    pub fn step_count(&self) -> usize {
        self.steps.len()
    }

    pub fn bounds(&self) -> Bounds {
        self.oracle.bounds().with("B", self.factor_bound)
    }

    /// Radius of the cached ball.
    pub fn ball_radius(&self) -> usize {
        self.ball.read().unwrap().radius()
    }

    /// Grows the cached ball to `radius`; the radius reached is returned.
    fn grow(&self, radius: usize, eager: bool) -> Result<usize> {
        loop {
            let (r, last, total) = {
                let b = self.ball.read().unwrap();
                (b.radius(), b.sphere(b.radius()).len(), b.keys.len())
            };
            let estimate = last.saturating_mul(self.steps.len());
            let wanted = r < radius || (eager && estimate <= self.limits.eager_layer);
            if !wanted || total.saturating_add(estimate) > self.limits.max_ball {
                return Ok(r);
            }
            if last == 0 {
                return Ok(r);
            }
            self.add_sphere()?;
        }
    }

    fn add_sphere(&self) -> Result<()> {
        let mut b = self.ball.write().unwrap();
        let r = b.radius();
        let range = b.sphere(r);
        let found: Vec<Result<Vec<(ElementKey, u32, u32)>>> = range
            .clone()
            .into_par_iter()
            .map(|id| {
                let g = &b.keys[id];
                let mut out = Vec::new();
                for (s, (_, f)) in self.steps.iter().enumerate() {
                    let k = self.oracle.key(&g.0.concat(&f.signed()))?;
                    if !b.index.contains_key(&k) {
                        out.push((k, id as u32, s as u32));
                    }
                }
                Ok(out)
            })
            .collect();
        let mut seen: FxHashSet<ElementKey> = FxHashSet::default();
        let mut next = Vec::new();
        for part in found {
            for (k, p, s) in part? {
                if seen.insert(k.clone()) {
                    next.push((k, p, s));
                }
            }
        }
        for (k, p, s) in next {
            let id = b.keys.len() as u32;
            b.index.insert(k.clone(), id);
            b.keys.push(k);
            b.parent.push((p, s));
        }
        let end = b.keys.len();
        b.starts.push(end);
        Ok(())
    }

    fn path(&self, b: &CayleyBall, mut id: usize) -> MFactorization {
        let mut factors = Vec::new();
        while id != 0 {
            let (p, s) = b.parent[id];
            factors.push(self.steps[s as usize].1.clone());
            id = p as usize;
        }
        factors.reverse();
        MFactorization { factors }
    }

    /// `d(e, x)`. The search stops once the distance is known to exceed
    /// `cap`, if given.
    pub fn distance(&self, x: &SignedWord, cap: Option<u32>) -> Result<MDistance> {
        let xr = self.oracle.reduce(x)?;
        if xr.is_empty() {
            return Ok(MDistance::exact(MFactorization::default()));
        }
        let key = self.oracle.key(&xr)?;
        if let Some(d) = self.memo.read().unwrap().get(&key) {
            if d.status == DistanceStatus::Exact {
                return Ok(d.clone());
            }
            match cap {
                Some(c) if d.status == DistanceStatus::AtLeast && d.lower > c => return Ok(d.clone()),
                _ => {}
            }
        }
        let d = self.search(&key.0, cap)?;
        if d.status != DistanceStatus::Inconclusive {
            self.memo.write().unwrap().insert(key, d.clone());
        }
        Ok(d)
    }

    fn search(&self, x: &SignedWord, cap: Option<u32>) -> Result<MDistance> {
        let upper = MFactorization::chunked(x, self.factor_bound);
        let u = upper.len() as u32;
        if self.oracle.graph().is_free_on(self.oracle.graph().full()) && upper.is_alternating() {
            // In a free group the sign blocks of the reduced word are a geodesic.
            return Ok(MDistance::exact(upper));
        }
        for k in 1..u {
            if cap.is_some_and(|c| k > c) {
                return Ok(MDistance {
                    lower: k,
                    upper: Some(u),
                    witness: Some(upper),
                    status: DistanceStatus::AtLeast,
                    reason: None,
                });
            }
            match self.within(x, k as usize) {
                Ok(Some(w)) => return Ok(MDistance::exact(w)),
                Ok(None) => {}
                Err(Error::Budget(reason)) => {
                    return Ok(MDistance {
                        lower: k,
                        upper: Some(u),
                        witness: Some(upper),
                        status: DistanceStatus::Inconclusive,
                        reason: Some(reason),
                    })
                }
                Err(e) => return Err(e),
            }
        }
        Ok(MDistance::exact(upper))
    }

    /// A path of length `k` from `e` to `x`, assuming none is shorter.
    fn within(&self, x: &SignedWord, k: usize) -> Result<Option<MFactorization>> {
        let reached = self.grow(k.div_ceil(2), false)?;
        let reached = if reached < k { self.grow(k, true)? } else { reached };
        if 2 * reached < k {
            return Err(Error::Budget(format!("the cached ball stops at radius {reached}, {k} is out of reach")));
        }
        let b = self.ball.read().unwrap();
        let head = reached.min(k).min(b.radius());
        let tail = k - head;
        let max_len = self.factor_bound * head;
        // A geodesic of length k ends with a path from some element of
        // sphere `tail`; what remains lies in the ball of radius `head`.
        for id in b.sphere(tail) {
            let g = &b.keys[id];
            let y = self.oracle.reduce(&x.concat(&g.0.inverse()))?;
            if y.len() > max_len {
                continue;
            }
            let y = self.oracle.key(&y)?;
            if let Some(&hid) = b.index.get(&y) {
                if b.dist(hid as usize) <= head {
                    return Ok(Some(self.path(&b, hid as usize).concat(&self.path(&b, id))));
                }
            }
        }
        Ok(None)
    }

    /// `d(g, h)`, with a witness path spelling `g⁻¹h`.
    pub fn m_distance(&self, g: &SignedWord, h: &SignedWord, cap: Option<u32>) -> Result<MDistanceReport> {
        let graph = self.oracle.graph();
        let d = self.distance(&g.inverse().concat(h), cap)?;
        Ok(MDistanceReport {
            pair: (g.to_text(graph), h.to_text(graph)),
            distance: d.value(),
            status: d.status,
            lower: d.lower,
            upper: d.upper,
            witness: d.witness.as_ref().map(|w| w.to_text(graph)),
            bounds: self.bounds(),
        })
    }

    /// Whether `x` is one factor of sign `sign`.
    fn is_step(&self, x: &SignedWord, sign: Sign) -> Result<Option<MFactor>> {
        let r = self.oracle.reduce(x)?;
        if r.is_empty() || r.len() > self.factor_bound || !r.letters().iter().all(|l| l.sign() == sign) {
            return Ok(None);
        }
        let word = match sign {
            Sign::Pos => PositiveWord(r.letters().iter().map(|l| l.gen()).collect()),
            Sign::Neg => PositiveWord(r.letters().iter().rev().map(|l| l.gen()).collect()),
        };
        Ok(Some(MFactor { sign, word }))
    }

    /// An alternating factorization of `w` with exactly `k` factors, each of
    /// length at most `B`, optionally starting with a given sign.
    pub fn alternating_search(&self, w: &SignedWord, k: usize, first: Option<Sign>) -> Result<Option<MFactorization>> {
        if k == 0 {
            return Ok(self.oracle.is_identity(w)?.then(MFactorization::default));
        }
        let key = self.oracle.key(w)?;
        let mut failed = FxHashSet::default();
        let mut nodes = 0usize;
        let signs: Vec<Sign> = match first {
            Some(s) => vec![s],
            None => vec![Sign::Pos, Sign::Neg],
        };
        for s in signs {
            if let Some(mut f) = self.alt_dfs(&key, k, s, &mut failed, &mut nodes)? {
                f.reverse();
                return Ok(Some(MFactorization { factors: f }));
            }
        }
        Ok(None)
    }

    fn alt_dfs(
        &self,
        x: &ElementKey,
        k: usize,
        sign: Sign,
        failed: &mut FxHashSet<(ElementKey, usize, Sign)>,
        nodes: &mut usize,
    ) -> Result<Option<Vec<MFactor>>> {
        if k == 1 {
            return Ok(self.is_step(&x.0, sign)?.map(|f| vec![f]));
        }
        if failed.contains(&(x.clone(), k, sign)) {
            return Ok(None);
        }
        *nodes += 1;
        if *nodes > self.limits.max_nodes {
            return Err(Error::Budget(format!("alternating search exceeds {} nodes", self.limits.max_nodes)));
        }
        for (_, f) in self.steps.iter().filter(|(_, f)| f.sign == sign) {
            let rest = self.oracle.key(&f.signed().inverse().concat(&x.0))?;
            if rest.is_empty() {
                continue;
            }
            if let Some(mut tail) = self.alt_dfs(&rest, k - 1, sign.flip(), failed, nodes)? {
                tail.push(f.clone());
                return Ok(Some(tail));
            }
        }
        failed.insert((x.clone(), k, sign));
        Ok(None)
    }

    /// Least `k` with an alternating factorization of `w` into `k` factors
    /// whose first factor has sign `first`, searched up to `max_k`.
    pub fn signed_distance(&self, w: &SignedWord, first: Sign, max_k: usize) -> Result<Option<MFactorization>> {
        if self.oracle.is_identity(w)? {
            return Ok(Some(MFactorization::default()));
        }
        for k in 1..=max_k {
            if let Some(f) = self.alternating_search(w, k, Some(first))? {
                return Ok(Some(f));
            }
        }
        Ok(None)
    }
}

/// Positive elements spelled by words of length `1..=b`, each once, and
/// their inverses.
fn monoid_steps(oracle: &GroupOracle, b: usize) -> Result<Vec<(ElementKey, MFactor)>> {
    let gens: Vec<Gen> = oracle.graph().gens().collect();
    let mut seen: FxHashSet<PositiveWord> = FxHashSet::default();
    let mut pos = Vec::new();
    let mut layer = vec![PositiveWord(Vec::new())];
    for _ in 0..b {
        let mut next = Vec::new();
        for w in &layer {
            for &g in &gens {
                let mut v = w.0.clone();
                v.push(g);
                let v = PositiveWord(v);
                if seen.insert(oracle.monoid().canonical(&v)) {
                    pos.push(oracle.monoid().canonical(&v));
                }
                next.push(v);
            }
        }
        layer = next;
    }
    pos.sort();
    let mut steps = Vec::with_capacity(2 * pos.len());
    for sign in [Sign::Pos, Sign::Neg] {
        for p in &pos {
            let f = MFactor { sign, word: p.clone() };
            steps.push((oracle.key(&f.signed())?, f));
        }
    }
    Ok(steps)
}

/// An element with its two-step path from the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiameterPath {
    pub element: SignedWord,
    pub path: MFactorization,
}

/// Outcome of [`spherical_diameter2_check`].
#[derive(Clone, Debug)]
pub struct Diameter2Report {
    pub verdict: BoundedVerdict<SignedWord>,
    pub paths: Vec<DiameterPath>,
}

/// Checks that every element of the X-ball of `radius` in a spherical group
/// is a product `m·(Δ^n)⁻¹` of a positive element and a power of `Δ`.
pub fn spherical_diameter2_check(oracle: &GroupOracle, radius: u32) -> Result<Diameter2Report> {
    let graph = oracle.graph();
    let g = oracle.spherical_group(graph.full()).ok_or_else(|| Error::NotSpherical(graph.names().join(" ")))?;
    let bounds = oracle.bounds().with("radius", radius);
    let Some(elements) = g.ball_elements(radius) else {
        let v = Verdict::Inconclusive(format!("ball of radius {radius} exceeds the size limit"));
        return Ok(Diameter2Report { verdict: BoundedVerdict::new(v, bounds), paths: Vec::new() });
    };
    let delta = g.data().delta.clone();
    let mut paths = Vec::with_capacity(elements.len());
    for (nf, word) in elements {
        let p = g.public_form(&nf);
        let path = if p.power >= 0 {
            let m = PositiveWord(delta.0.repeat(p.power as usize)).concat(&p.tail());
            MFactorization::new(if m.is_empty() { vec![] } else { vec![MFactor { sign: Sign::Pos, word: m }] })?
        } else {
            let n = (-p.power) as usize;
            let dn = PositiveWord(delta.0.repeat(n));
            let q = g.public_form(&g.normal_form(&word.concat(&dn.signed())));
            if q.power < 0 {
                let v = Verdict::Counterexample(word);
                return Ok(Diameter2Report { verdict: BoundedVerdict::new(v, bounds), paths });
            }
            let m = PositiveWord(delta.0.repeat(q.power as usize)).concat(&q.tail());
            let mut f = Vec::new();
            if !m.is_empty() {
                f.push(MFactor { sign: Sign::Pos, word: m });
            }
            f.push(MFactor { sign: Sign::Neg, word: dn });
            MFactorization::new(f)?
        };
        if path.len() > 2 || !oracle.equal(&path.spelled(), &word).is_equal() {
            let v = Verdict::Counterexample(word);
            return Ok(Diameter2Report { verdict: BoundedVerdict::new(v, bounds), paths });
        }
        paths.push(DiameterPath { element: word, path });
    }
    let v = Verdict::HoldsUpTo(Bound::Length(radius as u64));
    Ok(Diameter2Report { verdict: BoundedVerdict::new(v, bounds), paths })
}

/// A difference element on which the subgroup and the ambient group disagree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EmbeddingMismatch {
    pub element: String,
    pub sub: Option<u32>,
    pub ambient: Option<u32>,
}

/// Outcome of [`isometric_embedding_check`].
#[derive(Clone, Debug, Serialize)]
pub struct EmbeddingReport {
    pub verdict: BoundedVerdict<EmbeddingMismatch>,
    pub subset: Vec<String>,
    pub pairs: usize,
    /// Distinct elements `g⁻¹h` over all pairs.
    pub differences: usize,
    pub max_distance: u32,
}

/// Compares distances between elements of the X-ball of `radius` in `A_T`,
/// computed in the group of the restricted graph and in the ambient group.
pub fn isometric_embedding_check(
    oracle: &Arc<GroupOracle>,
    t: GenSet,
    radius: usize,
    factor_bound: usize,
) -> Result<EmbeddingReport> {
    let graph = oracle.graph();
    graph.check_subset(t)?;
    if t.is_empty() {
        return Err(Error::Precondition("the subset must be nonempty".into()));
    }
    let (sub_graph, map) = graph.restrict(t)?;
    let sub = Arc::new(GroupOracle::new(Arc::new(sub_graph), oracle.budget().clone()));
    let sub_ctx = MetricContext::new(sub.clone(), factor_bound)?;
    let amb_ctx = MetricContext::new(oracle.clone(), factor_bound)?;
    let ball: Vec<ElementKey> = sub.x_ball(radius)?.into_iter().flatten().collect();
    let mut diffs: Vec<ElementKey> = Vec::new();
    let mut seen = FxHashSet::default();
    for g in &ball {
        for h in &ball {
            let d = sub.key(&g.0.inverse().concat(&h.0))?;
            if seen.insert(d.clone()) {
                diffs.push(d);
            }
        }
    }
    diffs.sort();
    let bounds = amb_ctx.bounds().with("radius", radius);
    let mut report = EmbeddingReport {
        verdict: BoundedVerdict::new(Verdict::HoldsUpTo(Bound::Length(radius as u64)), bounds),
        subset: graph.subset_names(t),
        pairs: ball.len() * ball.len(),
        differences: diffs.len(),
        max_distance: 0,
    };
    let mut inconclusive = None;
    for d in &diffs {
        let ds = sub_ctx.distance(&d.0, None)?;
        let lifted = d.0.relabel(|g| map[g.index()]);
        let da = amb_ctx.distance(&lifted, None)?;
        match (ds.value(), da.value()) {
            (Some(a), Some(b)) if a == b => report.max_distance = report.max_distance.max(a),
            (Some(a), Some(b)) => {
                report.verdict.verdict = Verdict::Counterexample(EmbeddingMismatch {
                    element: lifted.to_text(graph),
                    sub: Some(a),
                    ambient: Some(b),
                });
                return Ok(report);
            }
            _ => {
                inconclusive.get_or_insert_with(|| format!("distance of {} not settled", lifted.to_text(graph)));
            }
        }
    }
    if let Some(r) = inconclusive {
        report.verdict.verdict = Verdict::Inconclusive(r);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(text: &str, b: usize) -> MetricContext {
        let o = Arc::new(GroupOracle::from_graph(DefiningGraph::parse(text).unwrap()));
        MetricContext::new(o, b).unwrap()
    }

    fn w(c: &MetricContext, t: &str) -> SignedWord {
        SignedWord::parse(c.oracle().graph(), t).unwrap()
    }

    #[test]
    fn free_alternating_words() {
        let c = ctx("s t", 2);
        for m in 1..=3 {
            let x = w(&c, "s t'").pow(m);
            assert_eq!(c.distance(&x, None).unwrap().value(), Some(2 * m as u32));
        }
    }

    #[test]
    fn dihedral_mixed_word_needs_two() {
        let c = ctx("a b; a b 3", 3);
        let d = c.distance(&w(&c, "a' b"), None).unwrap();
        assert_eq!(d.value(), Some(2));
        let wit = d.witness.unwrap();
        assert!(c.oracle().equal(&wit.spelled(), &w(&c, "a' b")).is_equal());
        assert_eq!(c.distance(&w(&c, "a b a"), None).unwrap().value(), Some(1));
        assert_eq!(c.distance(&w(&c, ""), None).unwrap().value(), Some(0));
    }

    #[test]
    fn chunking_respects_bound() {
        let g = DefiningGraph::parse("a b").unwrap();
        let x = SignedWord::parse(&g, "a a a b' b' a").unwrap();
        let f = MFactorization::chunked(&x, 2);
        assert_eq!(f.spelled(), x);
        assert_eq!(f.len(), 4);
        assert_eq!(f.merged().len(), 3);
        assert_eq!(f.inverse().spelled(), x.inverse());
    }

    #[test]
    fn alternating_search_reads_blocks() {
        let c = ctx("a b c; a b 3; b c 3; a c 3", 3);
        let x = w(&c, "a b c' a'");
        let f = c.alternating_search(&x, 2, None).unwrap().unwrap();
        assert!(f.is_alternating());
        assert!(c.oracle().equal(&f.spelled(), &x).is_equal());
        assert!(c.alternating_search(&x, 1, None).unwrap().is_none());
    }

    #[test]
    fn cap_stops_search() {
        let c = ctx("a b c; a b 3; b c 3; a c 3", 2);
        let x = w(&c, "a b' c a' b c'");
        let d = c.distance(&x, Some(1)).unwrap();
        assert_eq!(d.status, DistanceStatus::AtLeast);
        assert_eq!(d.lower, 2);
    }

    #[test]
    fn diameter_two_in_small_dihedral_groups() {
        for m in [2, 3] {
            let o = GroupOracle::from_graph(DefiningGraph::parse(&format!("a b; a b {m}")).unwrap());
            let r = spherical_diameter2_check(&o, 4).unwrap();
            assert!(r.verdict.holds());
            assert!(r.paths.iter().all(|p| p.path.len() <= 2));
        }
    }
}
