//! The word problem and geodesics in the Artin group.
//!
//! Words with free support are handled by free reduction and words with
//! spherical support by Garside normal forms. Everything else goes through
//! an incremental reducer: a geodesic prefix is kept, and each new letter
//! either extends it or cancels against a member of its class (words
//! reachable by dihedral rules) that ends in the inverse letter.

pub mod garside;
pub mod rules;

use std::collections::VecDeque;
use std::sync::{Arc, RwLock};

use rustc_hash::{FxHashMap, FxHashSet};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::monoid::{MonoidEngine, SphericalData};
use crate::presentation::{DefiningGraph, GenSet};
use crate::verdict::{Bound, BoundedVerdict, Bounds, Verdict};
use crate::words::{Letter, SignedWord};

pub use garside::{garside_nf, BallLimits, GarsideNF, NormalForm, SphericalGroup};
pub use rules::{dihedral_rules, RewriteRuleSet, RuleIndex};

/// Search limits for the group engine.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Budget {
    /// Extra length allowed above the inputs in [`GroupOracle::closure_equal`].
    pub slack: usize,
    /// Longest rule word; `None` means twice the largest finite label.
    pub rule_len: Option<usize>,
    /// Largest class explored by the reducer.
    pub max_class: usize,
    /// Largest radius of an exact Garside ball; longer words are split.
    pub exact_radius: u32,
    /// Largest exact ball, in elements.
    pub max_ball: usize,
    /// Largest spherical subgroup, in simple elements, given exact tables.
    pub max_simples: usize,
    /// Node cap for [`GroupOracle::closure_equal`].
    pub max_nodes: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            slack: 4,
            rule_len: None,
            max_class: 50_000,
            exact_radius: 10,
            max_ball: 1_500_000,
            max_simples: 2_000,
            max_nodes: 400_000,
        }
    }
}

/// Which procedures the oracle may use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Routing {
    /// Exact free and Garside procedures on free and spherical supports,
    /// the reducer with dihedral windows elsewhere.
    Exact,
    /// The reducer with dihedral windows for every word.
    Windows,
    /// The reducer with the bounded rule table for every word.
    Table,
}

/// Shortlex-least geodesic word of an element.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ElementKey(pub SignedWord);

impl ElementKey {
    pub fn word(&self) -> &SignedWord {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn identity() -> Self {
        ElementKey(SignedWord::empty())
    }
}

/// Outcome of an equality test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EqualityVerdict {
    /// `Some(true)` is always certain; `Some(false)` is certain when `exact`.
    pub equal: Option<bool>,
    pub exact: bool,
    /// Geodesic form of `u·v⁻¹` when the words differ.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<SignedWord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub bounds: Bounds,
}

impl EqualityVerdict {
    pub fn is_equal(&self) -> bool {
        self.equal == Some(true)
    }
}

/// Geodesic words of one element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepresentativeSet {
    /// Sorted shortlex.
    pub words: Vec<SignedWord>,
    pub exact: bool,
}

enum Route {
    Free,
    Spherical(Arc<SphericalGroup>),
    General,
}

enum Explore {
    Stopped(Vec<Letter>),
    Complete(Vec<Vec<Letter>>),
}

/// Geodesic words of the element spelled by a two-generator window.
enum Window {
    Geodesics(Vec<Vec<Letter>>),
    Shorter(Vec<Letter>),
}

/// Equality, geodesic and reduction queries for one Artin group.
pub struct GroupOracle {
    graph: Arc<DefiningGraph>,
    budget: Budget,
    rules: Arc<RuleIndex>,
    routing: Routing,
    monoid: MonoidEngine,
    spherical: RwLock<FxHashMap<GenSet, Option<Arc<SphericalGroup>>>>,
    windows: RwLock<FxHashMap<Vec<Letter>, Arc<Window>>>,
}

impl GroupOracle {
    pub fn new(graph: Arc<DefiningGraph>, budget: Budget) -> Self {
        let b = budget.rule_len.unwrap_or_else(|| default_rule_len(&graph));
        let rules = Arc::new(RuleIndex::for_graph(&graph, b));
        Self::with_rules(graph, budget, rules, Routing::Exact)
    }

    pub fn from_graph(graph: DefiningGraph) -> Self {
        Self::new(Arc::new(graph), Budget::default())
    }

    /// An oracle using the given rules, for example a deliberately damaged set.
    pub fn with_rules(graph: Arc<DefiningGraph>, budget: Budget, rules: Arc<RuleIndex>, routing: Routing) -> Self {
        let monoid = MonoidEngine::new(graph.clone());
        GroupOracle {
            graph,
            budget,
            rules,
            routing,
            monoid,
            spherical: RwLock::new(FxHashMap::default()),
            windows: RwLock::new(FxHashMap::default()),
        }
    }

    /// The same group with another routing.
    pub fn rerouted(&self, routing: Routing) -> Self {
        Self::with_rules(self.graph.clone(), self.budget.clone(), self.rules.clone(), routing)
    }

    pub fn graph(&self) -> &DefiningGraph {
        &self.graph
    }

    pub fn graph_arc(&self) -> &Arc<DefiningGraph> {
        &self.graph
    }

    pub fn budget(&self) -> &Budget {
        &self.budget
    }

    pub fn rules(&self) -> &RuleIndex {
        &self.rules
    }

    pub fn routing(&self) -> Routing {
        self.routing
    }

    pub fn monoid(&self) -> &MonoidEngine {
        &self.monoid
    }

    pub fn rule_len(&self) -> usize {
        self.rules.max_len()
    }

    pub fn bounds(&self) -> Bounds {
        Bounds::new(&self.budget).with("rule_len", self.rule_len())
    }

    /// Exact tables for a spherical subset, if it is small enough.
    pub fn spherical_group(&self, s: GenSet) -> Option<Arc<SphericalGroup>> {
        if let Some(g) = self.spherical.read().unwrap().get(&s) {
            return g.clone();
        }
        let limits = BallLimits { max_radius: self.budget.exact_radius, max_ball: self.budget.max_ball };
        let g = SphericalGroup::with_limits(&self.monoid, s, self.budget.max_simples, limits).ok().map(Arc::new);
        self.spherical.write().unwrap().insert(s, g.clone());
        g
    }

    pub fn spherical_data(&self, s: GenSet) -> Result<SphericalData> {
        match self.spherical_group(s) {
            Some(g) => Ok(g.data().clone()),
            None => self.monoid.garside_element(s),
        }
    }

    fn route(&self, s: GenSet) -> Route {
        if self.routing != Routing::Exact {
            return Route::General;
        }
        if self.graph.is_free_on(s) {
            return Route::Free;
        }
        match self.spherical_group(s) {
            Some(g) => Route::Spherical(g),
            None => Route::General,
        }
    }

    /// `true` when the answers for words with support `s` are exact.
    pub fn is_exact_on(&self, s: GenSet) -> bool {
        !matches!(self.route(s), Route::General)
    }

    /// A geodesic word equal to `w`. On exact routes it is the shortlex-least
    /// geodesic; otherwise it is geodesic up to the moves in force.
    pub fn reduce(&self, w: &SignedWord) -> Result<SignedWord> {
        let w = w.free_reduce();
        match self.route(w.support()) {
            Route::Free => Ok(w),
            Route::Spherical(g) => match g.geodesic_length(&w).and_then(|d| g.shortlex_geodesic(&w, d)) {
                Some(s) => Ok(s),
                None => self.reduce_general(&w),
            },
            Route::General => self.reduce_general(&w),
        }
    }

    fn reduce_general(&self, w: &SignedWord) -> Result<SignedWord> {
        let mut g: Vec<Letter> = Vec::with_capacity(w.len());
        for &x in w.letters() {
            self.append_letter(&mut g, x)?;
        }
        Ok(SignedWord::from(g))
    }

    /// Extends the geodesic `g` by `x`, cancelling when some word of its
    /// class ends in `x⁻¹`.
    fn append_letter(&self, g: &mut Vec<Letter>, x: Letter) -> Result<()> {
        let target = x.inverse();
        if g.last() == Some(&target) {
            g.pop();
            return Ok(());
        }
        let n = g.len();
        let hit = self.explore(g, |m| m.last() == Some(&target) || m.len() < n || !crate::words::is_reduced(m))?;
        match hit {
            Explore::Stopped(m) if m.len() == n && m.last() == Some(&target) => {
                *g = m;
                g.pop();
            }
            Explore::Stopped(m) => {
                // `g` was not geodesic after all; start over from the shorter word.
                let mut r = Vec::with_capacity(m.len() + 1);
                for l in m.into_iter().chain(std::iter::once(x)) {
                    self.append_letter(&mut r, l)?;
                }
                *g = r;
            }
            Explore::Complete(_) => g.push(x),
        }
        Ok(())
    }

    fn neighbours(&self, w: &[Letter], out: &mut Vec<Vec<Letter>>) -> Result<()> {
        if self.routing == Routing::Table {
            self.rules.moves(w, |v| out.push(v));
            return Ok(());
        }
        let n = w.len();
        let mut prev_end = 0;
        for p in 0..n {
            let (g0, mut g1) = (w[p].gen(), None);
            let mut end = p + 1;
            while end < n {
                let g = w[end].gen();
                if g != g0 && g1.is_some_and(|h| h != g) {
                    break;
                }
                if g != g0 {
                    g1 = Some(g);
                }
                end += 1;
            }
            if end <= prev_end {
                continue;
            }
            prev_end = end;
            let Some(h) = g1 else { continue };
            if self.graph.label(g0, h).is_infinite() {
                continue;
            }
            match &*self.window(&w[p..end])? {
                Window::Geodesics(reps) => {
                    for r in reps {
                        if r.as_slice() != &w[p..end] {
                            out.push([&w[..p], r.as_slice(), &w[end..]].concat());
                        }
                    }
                }
                Window::Shorter(r) => out.push([&w[..p], r.as_slice(), &w[end..]].concat()),
            }
        }
        Ok(())
    }

    fn window(&self, w: &[Letter]) -> Result<Arc<Window>> {
        if let Some(c) = self.windows.read().unwrap().get(w) {
            return Ok(c.clone());
        }
        let word = SignedWord::from(w.to_vec());
        let s = word.support();
        let g = self.spherical_group(s).ok_or_else(|| Error::Budget("no exact tables for a dihedral window".into()))?;
        let fail = || Error::Budget(format!("window of length {} exceeds the exact ball", w.len()));
        let d = g.geodesic_length(&word).ok_or_else(fail)?;
        let c = if (d as usize) < w.len() {
            Window::Shorter(g.shortlex_geodesic(&word, d).ok_or_else(fail)?.into_letters())
        } else {
            let reps = g.all_geodesics(&word, d, self.budget.max_class).ok_or_else(fail)?;
            Window::Geodesics(reps.into_iter().map(SignedWord::into_letters).collect())
        };
        let c = Arc::new(c);
        self.windows.write().unwrap().insert(w.to_vec(), c.clone());
        Ok(c)
    }

    fn explore(&self, start: &[Letter], mut stop: impl FnMut(&[Letter]) -> bool) -> Result<Explore> {
        if stop(start) {
            return Ok(Explore::Stopped(start.to_vec()));
        }
        let mut seen: FxHashSet<Vec<Letter>> = FxHashSet::default();
        seen.insert(start.to_vec());
        let mut queue: VecDeque<Vec<Letter>> = VecDeque::new();
        queue.push_back(start.to_vec());
        let mut next = Vec::new();
        while let Some(cur) = queue.pop_front() {
            next.clear();
            self.neighbours(&cur, &mut next)?;
            for v in next.drain(..) {
                if seen.contains(&v) {
                    continue;
                }
                if stop(&v) {
                    return Ok(Explore::Stopped(v));
                }
                seen.insert(v.clone());
                queue.push_back(v);
            }
            if seen.len() > self.budget.max_class {
                return Err(Error::Budget(format!("class exceeds {} words", self.budget.max_class)));
            }
        }
        let mut all: Vec<Vec<Letter>> = seen.into_iter().collect();
        all.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        Ok(Explore::Complete(all))
    }

    /// All words reachable from the geodesic `r` by length-preserving moves.
    fn class_of(&self, r: &SignedWord) -> Result<Vec<SignedWord>> {
        let n = r.len();
        match self.explore(r.letters(), |m| m.len() < n)? {
            Explore::Complete(all) => Ok(all.into_iter().map(SignedWord::from).collect()),
            Explore::Stopped(_) => Err(Error::Budget("a reduced word shortened further".into())),
        }
    }

    fn exact_geodesic_len(&self, g: &SphericalGroup, r: &SignedWord) -> bool {
        g.geodesic_length(r) == Some(r.len() as u32)
    }

    /// Canonical key of the element: its shortlex-least geodesic word.
    pub fn key(&self, w: &SignedWord) -> Result<ElementKey> {
        let r = self.reduce(w)?;
        match self.route(r.support()) {
            Route::Free => Ok(ElementKey(r)),
            Route::Spherical(g) if self.exact_geodesic_len(&g, &r) => {
                Ok(ElementKey(g.shortlex_geodesic(&r, r.len() as u32).unwrap_or(r)))
            }
            _ => Ok(ElementKey(self.class_of(&r)?.swap_remove(0))),
        }
    }

    /// Spheres of the X-ball of the given radius, each sorted by key.
    pub fn x_ball(&self, radius: usize) -> Result<Vec<Vec<ElementKey>>> {
        let letters = crate::words::alphabet(self.graph.full());
        let mut spheres = vec![vec![ElementKey::identity()]];
        let mut seen: FxHashSet<ElementKey> = spheres[0].iter().cloned().collect();
        for r in 1..=radius {
            let mut next = Vec::new();
            for g in &spheres[r - 1] {
                for &l in &letters {
                    if g.0.last() == Some(l.inverse()) {
                        continue;
                    }
                    let mut w = g.0.clone();
                    w.push(l);
                    let k = self.key(&w)?;
                    if k.len() == r && seen.insert(k.clone()) {
                        next.push(k);
                    }
                }
            }
            next.sort();
            spheres.push(next);
        }
        Ok(spheres)
    }

    pub fn is_identity(&self, w: &SignedWord) -> Result<bool> {
        Ok(self.reduce(w)?.is_empty())
    }

    pub fn equal(&self, u: &SignedWord, v: &SignedWord) -> EqualityVerdict {
        let d = u.concat(&v.inverse()).free_reduce();
        let exact = self.is_exact_on(d.support());
        match self.reduce(&d) {
            Ok(r) if r.is_empty() => {
                EqualityVerdict { equal: Some(true), exact: true, witness: None, reason: None, bounds: self.bounds() }
            }
            Ok(r) => {
                EqualityVerdict { equal: Some(false), exact, witness: Some(r), reason: None, bounds: self.bounds() }
            }
            Err(e) => EqualityVerdict {
                equal: None,
                exact: false,
                witness: None,
                reason: Some(e.to_string()),
                bounds: self.bounds(),
            },
        }
    }

    /// Whether `w` is a geodesic word; a counterexample is a shorter equal word.
    pub fn is_geodesic(&self, w: &SignedWord) -> BoundedVerdict<SignedWord> {
        let bounds = self.bounds();
        if !w.is_freely_reduced() {
            return BoundedVerdict::new(Verdict::Counterexample(w.free_reduce()), bounds);
        }
        if w.is_positive() || w.is_negative() {
            return BoundedVerdict::new(Verdict::HoldsUpTo(Bound::Exact), bounds);
        }
        let exact = self.is_exact_on(w.support());
        let verdict = match self.reduce(w) {
            Ok(r) if r.len() < w.len() => Verdict::Counterexample(r),
            Ok(_) if exact => Verdict::HoldsUpTo(Bound::Exact),
            Ok(_) => Verdict::HoldsUpTo(Bound::Search),
            Err(e) => Verdict::Inconclusive(e.to_string()),
        };
        BoundedVerdict::new(verdict, bounds)
    }

    /// Fast form of [`GroupOracle::is_geodesic`] for internal loops.
    pub fn geodesic(&self, w: &SignedWord) -> Result<bool> {
        if !w.is_freely_reduced() {
            return Ok(false);
        }
        if w.is_positive() || w.is_negative() {
            return Ok(true);
        }
        Ok(self.reduce(w)?.len() == w.len())
    }

    pub fn geodesic_length(&self, w: &SignedWord) -> Result<usize> {
        Ok(self.reduce(w)?.len())
    }

    /// Every geodesic word of the element `w` within the budget.
    pub fn geodesic_representatives(&self, w: &SignedWord) -> Result<RepresentativeSet> {
        let r = self.reduce(w)?;
        match self.route(r.support()) {
            Route::Free => Ok(RepresentativeSet { words: vec![r], exact: true }),
            Route::Spherical(g) if self.exact_geodesic_len(&g, &r) => {
                match g.all_geodesics(&r, r.len() as u32, self.budget.max_class) {
                    Some(words) => Ok(RepresentativeSet { words, exact: true }),
                    None => Err(Error::Budget("too many geodesic representatives".into())),
                }
            }
            _ => Ok(RepresentativeSet { words: self.class_of(&r)?, exact: false }),
        }
    }

    /// Garside normal form of a word whose support lies in `subset`.
    pub fn garside_nf(&self, w: &SignedWord, subset: GenSet) -> Result<GarsideNF> {
        if !w.support().is_subset(subset) {
            return Err(Error::SubsetNotInGraph);
        }
        let g = self
            .spherical_group(subset)
            .ok_or_else(|| Error::NotSpherical(self.graph.subset_names(subset).join(" ")))?;
        Ok(g.public_form(&g.normal_form(w)))
    }

    /// Equality by breadth-first search over words of length at most
    /// `max(|u|, |v|) + slack`, moving by rules and free insertions and
    /// deletions. Certifies equality; a miss is only up to the bound.
    pub fn closure_equal(&self, u: &SignedWord, v: &SignedWord) -> EqualityVerdict {
        let cap = u.len().max(v.len()) + self.budget.slack;
        let target = v.letters().to_vec();
        let letters = crate::words::alphabet(self.graph.full());
        let mut seen: FxHashSet<Vec<Letter>> = FxHashSet::default();
        let mut queue = VecDeque::new();
        seen.insert(u.letters().to_vec());
        queue.push_back(u.letters().to_vec());
        let bounds = self.bounds().with("cap", cap);
        while let Some(cur) = queue.pop_front() {
            if cur == target {
                return EqualityVerdict { equal: Some(true), exact: true, witness: None, reason: None, bounds };
            }
            let mut next = Vec::new();
            self.rules.moves(&cur, |v| next.push(v));
            for i in 0..cur.len().saturating_sub(1) {
                if cur[i] == cur[i + 1].inverse() {
                    next.push([&cur[..i], &cur[i + 2..]].concat());
                }
            }
            if cur.len() + 2 <= cap {
                for i in 0..=cur.len() {
                    for &l in &letters {
                        next.push([&cur[..i], &[l, l.inverse()][..], &cur[i..]].concat());
                    }
                }
            }
            for v in next {
                if seen.insert(v.clone()) {
                    queue.push_back(v);
                }
            }
            if seen.len() > self.budget.max_nodes {
                return EqualityVerdict {
                    equal: None,
                    exact: false,
                    witness: None,
                    reason: Some(format!("closure exceeds {} words", self.budget.max_nodes)),
                    bounds,
                };
            }
        }
        EqualityVerdict { equal: Some(false), exact: false, witness: None, reason: None, bounds }
    }
}

/// Default rule length: twice the largest finite label, at least 2.
pub fn default_rule_len(graph: &DefiningGraph) -> usize {
    (2 * graph.max_finite_label().unwrap_or(1) as usize).max(2)
}
