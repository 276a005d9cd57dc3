//! Bounded pieces of the Deligne complex and of its coned-off version.
//!
//! Vertices of the Deligne complex are cosets `gA_T` of spherical special
//! subgroups, with an edge for each strict inclusion. The coned-off complex
//! adds a vertex `v_g` for each group element, joined to every coset
//! `g·m·A_T` with `m` positive. Both are infinite; a [`ComplexBall`] keeps
//! the elements `g` of X-length at most `r` and the positive `m` of length
//! at most `s`.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;

use rustc_hash::{FxHashMap, FxHashSet};
use serde::Serialize;

use crate::cayley::MetricContext;
use crate::error::{Error, Result};
use crate::group::{ElementKey, GroupOracle};
use crate::monoid::PositiveWord;
use crate::presentation::{is_spherical, DefiningGraph, GenSet};
use crate::verdict::{Bound, BoundedVerdict, Bounds, Verdict};
use crate::words::SignedWord;

/// The coset `rep·A_subset`, named by its shortlex-least element of
/// least length.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CosetVertex {
    pub rep: ElementKey,
    pub subset: GenSet,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Vertex {
    Coset(CosetVertex),
    /// The cone point `v_g` over `g·D⁺`.
    Cone(ElementKey),
}

/// Whether `g ∈ A_T`. Special subgroups are convex, so this holds exactly
/// when a geodesic word for `g` uses only letters of `T`.
pub fn in_special_subgroup(oracle: &GroupOracle, g: &SignedWord, t: GenSet) -> Result<bool> {
    Ok(oracle.reduce(g)?.support().is_subset(t))
}

/// Whether `gA_T = hA_T`.
pub fn same_coset(oracle: &GroupOracle, g: &SignedWord, h: &SignedWord, t: GenSet) -> Result<bool> {
    in_special_subgroup(oracle, &g.inverse().concat(h), t)
}

/// Spherical subsets of the generators, smallest first.
pub fn spherical_subsets(graph: &DefiningGraph) -> Result<Vec<GenSet>> {
    let mut out = Vec::new();
    for s in graph.full().subsets() {
        if is_spherical(graph, s)? {
            out.push(s);
        }
    }
    out.sort_by_key(|s| (s.len(), s.0));
    Ok(out)
}

/// Maximal chains `∅ ⊂ T_1 ⊂ ⋯` of spherical subsets, growing by one
/// generator at a time.
fn maximal_chains(spherical: &[GenSet]) -> Vec<Vec<GenSet>> {
    let set: FxHashSet<GenSet> = spherical.iter().copied().collect();
    let mut out = Vec::new();
    let mut stack = vec![vec![GenSet::EMPTY]];
    while let Some(chain) = stack.pop() {
        let top = *chain.last().unwrap();
        let ups: Vec<GenSet> =
            spherical.iter().copied().filter(|s| s.len() == top.len() + 1 && top.is_subset(*s)).collect();
        if ups.is_empty() {
            out.push(chain);
            continue;
        }
        for u in ups.into_iter().rev() {
            debug_assert!(set.contains(&u));
            let mut c = chain.clone();
            c.push(u);
            stack.push(c);
        }
    }
    out.sort();
    out
}

/// A finite piece of the (coned-off) Deligne complex.
#[derive(Clone, Debug)]
pub struct ComplexBall {
    vertices: Vec<Vertex>,
    index: FxHashMap<Vertex, u32>,
    edges: BTreeSet<(u32, u32)>,
    simplices: Vec<Vec<u32>>,
    spherical: Vec<GenSet>,
    elements: Vec<ElementKey>,
    radius: usize,
    monoid_radius: usize,
    coned: bool,
}

/// Builds [`ComplexBall`]s, remembering coset names.
pub struct ComplexBuilder<'a> {
    oracle: &'a GroupOracle,
    spherical: Vec<GenSet>,
    chains: Vec<Vec<GenSet>>,
    cosets: FxHashMap<(ElementKey, GenSet), ElementKey>,
}

impl<'a> ComplexBuilder<'a> {
    pub fn new(oracle: &'a GroupOracle) -> Result<Self> {
        let spherical = spherical_subsets(oracle.graph())?;
        let chains = maximal_chains(&spherical);
        Ok(ComplexBuilder { oracle, spherical, chains, cosets: FxHashMap::default() })
    }

    pub fn spherical(&self) -> &[GenSet] {
        &self.spherical
    }

    /// The name of `gA_T`: starting from `g`, a last letter in `T` is
    /// removed from some geodesic word while possible, over all choices,
    /// and the shortlex-least element reached is kept.
    pub fn coset_rep(&mut self, g: &ElementKey, t: GenSet) -> Result<ElementKey> {
        if t.is_empty() {
            return Ok(g.clone());
        }
        if let Some(r) = self.cosets.get(&(g.clone(), t)) {
            return Ok(r.clone());
        }
        let mut seen: FxHashSet<ElementKey> = FxHashSet::default();
        let mut queue = VecDeque::from([g.clone()]);
        seen.insert(g.clone());
        let mut best: Option<ElementKey> = None;
        while let Some(e) = queue.pop_front() {
            if best.as_ref().is_some_and(|b| b.len() < e.len()) {
                continue;
            }
            let reps = self.oracle.geodesic_representatives(&e.0)?;
            let mut terminal = true;
            for r in &reps.words {
                if r.last().is_some_and(|l| t.contains(l.gen())) {
                    terminal = false;
                    let k = self.oracle.key(&SignedWord::from(r.letters()[..r.len() - 1].to_vec()))?;
                    if seen.insert(k.clone()) {
                        queue.push_back(k);
                    }
                }
            }
            if terminal && best.as_ref().is_none_or(|b| e < *b) {
                best = Some(e);
            }
        }
        let best = best.expect("the search reaches a word with no last letter in T");
        self.cosets.insert((g.clone(), t), best.clone());
        Ok(best)
    }

    /// Cosets `gA_T` for `|g| ≤ r` and every spherical `T`, with inclusion
    /// edges and the maximal chains as simplices.
    pub fn coset_poset_ball(&mut self, radius: usize) -> Result<ComplexBall> {
        let elements: Vec<ElementKey> = self.oracle.x_ball(radius)?.into_iter().flatten().collect();
        let mut ball = ComplexBall {
            vertices: Vec::new(),
            index: FxHashMap::default(),
            edges: BTreeSet::new(),
            simplices: Vec::new(),
            spherical: self.spherical.clone(),
            elements: elements.clone(),
            radius,
            monoid_radius: 0,
            coned: false,
        };
        for g in &elements {
            self.add_translate_cosets(&mut ball, g)?;
        }
        ball.simplices.sort();
        ball.simplices.dedup();
        Ok(ball)
    }

    /// Cosets of one element `h`, their inclusion edges and chains; returns
    /// the chain simplices for coning.
    fn add_translate_cosets(&mut self, ball: &mut ComplexBall, h: &ElementKey) -> Result<Vec<Vec<u32>>> {
        let mut ids = FxHashMap::default();
        for &t in &self.spherical.clone() {
            let rep = self.coset_rep(h, t)?;
            ids.insert(t, ball.add_vertex(Vertex::Coset(CosetVertex { rep, subset: t })));
        }
        for (i, &t) in self.spherical.iter().enumerate() {
            for &r in &self.spherical[i + 1..] {
                if t.is_subset(r) && t != r {
                    ball.add_edge(ids[&t], ids[&r]);
                }
            }
        }
        let mut chains = Vec::new();
        for c in &self.chains {
            let mut s: Vec<u32> = c.iter().map(|t| ids[t]).collect();
            s.sort_unstable();
            ball.simplices.push(s.clone());
            chains.push(s);
        }
        Ok(chains)
    }

    /// Adds `v_g` for every element of the ball, joined to the cosets
    /// `g·m·A_T` with `m` positive of length at most `s`.
    pub fn cone_off(&mut self, mut ball: ComplexBall, monoid_radius: usize) -> Result<ComplexBall> {
        let monoid = positive_elements(self.oracle, monoid_radius);
        for g in ball.elements.clone() {
            let v = ball.add_vertex(Vertex::Cone(g.clone()));
            for m in &monoid {
                let h = self.oracle.key(&g.0.concat(&m.signed()))?;
                let chains = self.add_translate_cosets(&mut ball, &h)?;
                for c in chains {
                    for &x in &c {
                        ball.add_edge(v, x);
                    }
                    let mut s = c;
                    s.push(v);
                    s.sort_unstable();
                    ball.simplices.push(s);
                }
            }
        }
        ball.simplices.sort();
        ball.simplices.dedup();
        ball.monoid_radius = monoid_radius;
        ball.coned = true;
        Ok(ball)
    }
}

/// Positive elements of word length at most `s`, including the identity,
/// one canonical word each.
fn positive_elements(oracle: &GroupOracle, s: usize) -> Vec<PositiveWord> {
    let gens: Vec<_> = oracle.graph().gens().collect();
    let mut seen = BTreeSet::new();
    let mut layer = vec![PositiveWord(Vec::new())];
    seen.insert(PositiveWord(Vec::new()));
    for _ in 0..s {
        let mut next = Vec::new();
        for w in &layer {
            for &g in &gens {
                let mut v = w.0.clone();
                v.push(g);
                let c = oracle.monoid().canonical(&PositiveWord(v));
                if seen.insert(c.clone()) {
                    next.push(c);
                }
            }
        }
        layer = next;
    }
    seen.into_iter().collect()
}

/// Distance in the 1-skeleton of a [`ComplexBall`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SkeletonDistance {
    /// `None` when the vertices lie in different components of the ball.
    pub distance: Option<u32>,
    pub radius: usize,
    pub monoid_radius: usize,
}

impl ComplexBall {
    fn add_vertex(&mut self, v: Vertex) -> u32 {
        if let Some(&i) = self.index.get(&v) {
            return i;
        }
        let i = self.vertices.len() as u32;
        self.index.insert(v.clone(), i);
        self.vertices.push(v);
        i
    }

    fn add_edge(&mut self, a: u32, b: u32) {
        if a != b {
            self.edges.insert((a.min(b), a.max(b)));
        }
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex_id(&self, v: &Vertex) -> Option<u32> {
        self.index.get(v).copied()
    }

    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, a: u32, b: u32) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    /// Maximal chains of cosets, and their cones once coned off.
    pub fn simplices(&self) -> &[Vec<u32>] {
        &self.simplices
    }

    pub fn spherical(&self) -> &[GenSet] {
        &self.spherical
    }

    /// The elements `g` with `|g| ≤ r`, by key.
    pub fn elements(&self) -> &[ElementKey] {
        &self.elements
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn monoid_radius(&self) -> usize {
        self.monoid_radius
    }

    pub fn is_coned(&self) -> bool {
        self.coned
    }

    pub fn cone_vertex(&self, g: &ElementKey) -> Option<u32> {
        self.vertex_id(&Vertex::Cone(g.clone()))
    }

    fn adjacency(&self) -> Vec<Vec<u32>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for &(a, b) in &self.edges {
            adj[a as usize].push(b);
            adj[b as usize].push(a);
        }
        adj
    }

    /// Breadth-first distances from `p` to every vertex.
    pub fn distances_from(&self, p: u32) -> Vec<Option<u32>> {
        bfs(&self.adjacency(), p)
    }

    pub fn skeleton_distance(&self, p: u32, q: u32) -> SkeletonDistance {
        SkeletonDistance {
            distance: self.distances_from(p)[q as usize],
            radius: self.radius,
            monoid_radius: self.monoid_radius,
        }
    }

    fn vertex_label(&self, graph: &DefiningGraph, v: &Vertex) -> String {
        match v {
            Vertex::Coset(c) => {
                format!("{}·A{{{}}}", c.rep.0.to_text(graph), graph.subset_names(c.subset).join(","))
            }
            Vertex::Cone(g) => format!("v[{}]", g.0.to_text(graph)),
        }
    }

    /// The 1-skeleton in DOT, with coset vertices classed by rank.
    pub fn to_dot(&self, graph: &DefiningGraph) -> String {
        let mut s = String::from("graph deligne {\n");
        for (i, v) in self.vertices.iter().enumerate() {
            let (class, shape) = match v {
                Vertex::Coset(c) => (format!("rank{}", c.subset.len()), "ellipse"),
                Vertex::Cone(_) => ("cone".to_owned(), "box"),
            };
            let label = self.vertex_label(graph, v).replace('"', "\\\"");
            let _ = writeln!(s, "  n{i} [label=\"{label}\", class=\"{class}\", shape={shape}];");
        }
        for &(a, b) in &self.edges {
            let _ = writeln!(s, "  n{a} -- n{b};");
        }
        s.push_str("}\n");
        s
    }

    /// Vertices and edges as a serializable document.
    pub fn to_doc(&self, graph: &DefiningGraph) -> ComplexDoc {
        let vertices = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| match v {
                Vertex::Coset(c) => VertexDoc {
                    id: i as u32,
                    kind: "coset",
                    rep: c.rep.0.to_text(graph),
                    subset: Some(graph.subset_names(c.subset)),
                },
                Vertex::Cone(g) => VertexDoc { id: i as u32, kind: "cone", rep: g.0.to_text(graph), subset: None },
            })
            .collect();
        ComplexDoc {
            radius: self.radius,
            monoid_radius: self.monoid_radius,
            spherical: self.spherical.iter().map(|&t| graph.subset_names(t)).collect(),
            vertices,
            edges: self.edges.iter().copied().collect(),
            simplices: self.simplices.len(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VertexDoc {
    pub id: u32,
    pub kind: &'static str,
    pub rep: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subset: Option<Vec<String>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComplexDoc {
    pub radius: usize,
    pub monoid_radius: usize,
    pub spherical: Vec<Vec<String>>,
    pub vertices: Vec<VertexDoc>,
    pub edges: Vec<(u32, u32)>,
    pub simplices: usize,
}

fn bfs(adj: &[Vec<u32>], p: u32) -> Vec<Option<u32>> {
    let mut dist = vec![None; adj.len()];
    dist[p as usize] = Some(0);
    let mut queue = VecDeque::from([p]);
    while let Some(v) = queue.pop_front() {
        let d = dist[v as usize].unwrap();
        for &w in &adj[v as usize] {
            if dist[w as usize].is_none() {
                dist[w as usize] = Some(d + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

/// One element pair of a [`QiReport`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QiPair {
    pub x: String,
    pub y: String,
    pub cayley: u32,
    pub complex: Option<u32>,
}

/// Outcome of [`qi_check`].
#[derive(Clone, Debug, Serialize)]
pub struct QiReport {
    /// Counterexample: a pair with `d_C > 2·d_Cay` whose Cayley path stays
    /// inside the ball.
    pub verdict: BoundedVerdict<QiPair>,
    /// Pairs whose Cayley distance was settled within the cap.
    pub pairs: usize,
    /// Pairs whose Cayley path leaves the ball and whose complex distance
    /// exceeds the bound; these say nothing about the inequality.
    pub truncated: Vec<QiPair>,
    pub max_cayley: u32,
    pub max_complex: u32,
    /// Largest `d_Cay / d_C` over pairs with `d_C > 0`.
    pub max_ratio: f64,
    /// Pairs skipped because a distance search was inconclusive.
    pub skipped: usize,
}

/// Compares `d_C(v_x, v_y)` with `2·d_Cay(x, y)` for all element pairs of a
/// coned-off ball with `d_Cay ≤ cap`.
pub fn qi_check(ball: &ComplexBall, ctx: &MetricContext, cap: u32) -> Result<QiReport> {
    if !ball.is_coned() {
        return Err(Error::Precondition("the ball has no cone vertices".into()));
    }
    let oracle = ctx.oracle();
    let graph = oracle.graph();
    let adj = ball.adjacency();
    let inside: FxHashSet<&ElementKey> = ball.elements.iter().collect();
    let bounds: Bounds = ctx.bounds().with("r", ball.radius).with("s", ball.monoid_radius).with("cap", cap);
    let mut report = QiReport {
        verdict: BoundedVerdict::new(Verdict::HoldsUpTo(Bound::Length(cap as u64)), bounds),
        pairs: 0,
        truncated: Vec::new(),
        max_cayley: 0,
        max_complex: 0,
        max_ratio: 0.0,
        skipped: 0,
    };
    for (i, x) in ball.elements.iter().enumerate() {
        let vx = ball.cone_vertex(x).expect("every element has a cone vertex");
        let dist = bfs(&adj, vx);
        for y in &ball.elements[i..] {
            let d = ctx.distance(&x.0.inverse().concat(&y.0), Some(cap))?;
            let Some(dc) = d.value() else {
                if d.status == crate::cayley::DistanceStatus::Inconclusive {
                    report.skipped += 1;
                }
                continue;
            };
            let vy = ball.cone_vertex(y).expect("every element has a cone vertex");
            let complex = dist[vy as usize];
            report.pairs += 1;
            let pair = QiPair { x: x.0.to_text(graph), y: y.0.to_text(graph), cayley: dc, complex };
            let fine = complex.is_some_and(|c| c <= 2 * dc);
            if !fine {
                let path = d.witness.as_ref().expect("exact distances carry a witness");
                let mut at = x.0.clone();
                let mut stays = path.max_factor_len() <= ball.monoid_radius;
                for f in path.factors() {
                    at = oracle.key(&at.concat(&f.signed()))?.0;
                    stays &= inside.contains(&ElementKey(at.clone()));
                }
                if stays {
                    report.verdict.verdict = Verdict::Counterexample(pair);
                    return Ok(report);
                }
                report.truncated.push(pair);
                continue;
            }
            let c = complex.unwrap_or(0);
            report.max_cayley = report.max_cayley.max(dc);
            report.max_complex = report.max_complex.max(c);
            if c > 0 {
                report.max_ratio = report.max_ratio.max(dc as f64 / c as f64);
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::reduced_words;

    fn oracle(text: &str) -> GroupOracle {
        GroupOracle::from_graph(DefiningGraph::parse(text).unwrap())
    }

    #[test]
    fn spherical_subsets_of_triangle() {
        let o = oracle("a b c; a b 3; b c 3; a c 3");
        let s = spherical_subsets(o.graph()).unwrap();
        assert_eq!(s.len(), 7);
        assert!(s.iter().all(|t| t.len() <= 2));
        assert_eq!(maximal_chains(&s).len(), 6);
    }

    #[test]
    fn coset_names_match_membership() {
        for text in ["a b c; a b 3; b c 3; a c 3", "s t u; t u 3", "a b c; a b 4; b c 4; a c 2"] {
            let o = oracle(text);
            let mut b = ComplexBuilder::new(&o).unwrap();
            let words = reduced_words(o.graph().full(), 3);
            let keys: Vec<ElementKey> = words.iter().map(|w| o.key(w).unwrap()).collect();
            for t in b.spherical().to_vec() {
                let reps: Vec<ElementKey> = keys.iter().map(|k| b.coset_rep(k, t).unwrap()).collect();
                for i in (0..keys.len()).step_by(7) {
                    for j in 0..keys.len() {
                        let same = same_coset(&o, &keys[i].0, &keys[j].0, t).unwrap();
                        assert_eq!(same, reps[i] == reps[j], "{text}: {:?} {:?}", keys[i], keys[j]);
                    }
                }
            }
        }
    }

    #[test]
    fn cone_edges_reach_identity_cosets() {
        let o = oracle("s t;");
        let mut b = ComplexBuilder::new(&o).unwrap();
        let ball = b.coset_poset_ball(2).unwrap();
        let ball = b.cone_off(ball, 1).unwrap();
        for g in ball.elements() {
            let v = ball.cone_vertex(g).unwrap();
            let c = ball.vertex_id(&Vertex::Coset(CosetVertex { rep: g.clone(), subset: GenSet::EMPTY })).unwrap();
            assert!(ball.has_edge(v, c));
            assert_eq!(ball.skeleton_distance(v, c).distance, Some(1));
        }
        assert!(ball.to_dot(o.graph()).starts_with("graph deligne {"));
    }
}
