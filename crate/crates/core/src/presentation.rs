//! Defining graphs, generator subsets and the finite-type classification.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported number of generators; subsets are `u64` bitmasks.
pub const MAX_GENERATORS: usize = 64;

/// A generator, identified by its position in the graph's generator list.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Gen(pub u8);

impl Gen {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Edge label of a defining graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Label {
    Finite(u32),
    Infinite,
}

impl Label {
    pub fn finite(self) -> Option<u32> {
        match self {
            Label::Finite(m) => Some(m),
            Label::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Label::Infinite)
    }

    /// `true` when the label is at least `n`, with `∞` above every integer.
    pub fn at_least(self, n: u32) -> bool {
        match self {
            Label::Finite(m) => m >= n,
            Label::Infinite => true,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Finite(m) => write!(f, "{m}"),
            Label::Infinite => write!(f, "inf"),
        }
    }
}

/// A set of generators as a bitmask.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GenSet(pub u64);

/// A standard parabolic subgroup `A_T` is named by its generator set `T`.
pub type SubgroupSpec = GenSet;

impl GenSet {
    pub const EMPTY: GenSet = GenSet(0);

    pub fn singleton(g: Gen) -> Self {
        GenSet(1u64 << g.0)
    }

    pub fn from_gens<I: IntoIterator<Item = Gen>>(gens: I) -> Self {
        gens.into_iter().fold(GenSet::EMPTY, |s, g| s.with(g))
    }

    pub fn with(self, g: Gen) -> Self {
        GenSet(self.0 | (1u64 << g.0))
    }

    pub fn without(self, g: Gen) -> Self {
        GenSet(self.0 & !(1u64 << g.0))
    }

    pub fn contains(self, g: Gen) -> bool {
        self.0 >> g.0 & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: GenSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: GenSet) -> Self {
        GenSet(self.0 | other.0)
    }

    pub fn iter(self) -> impl Iterator<Item = Gen> {
        (0..MAX_GENERATORS as u8).filter(move |&i| self.0 >> i & 1 == 1).map(Gen)
    }

    /// All subsets of `self`, in increasing bitmask order.
    pub fn subsets(self) -> Vec<GenSet> {
        let mut out = Vec::with_capacity(1 << self.len());
        let mut sub = 0u64;
        loop {
            out.push(GenSet(sub));
            if sub == self.0 {
                break;
            }
            sub = (sub.wrapping_sub(self.0)) & self.0;
        }
        out.sort();
        out
    }
}

/// Labelled simplicial graph presenting an Artin group.
///
/// Pairs without an entry carry the label `∞`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GraphDoc", into = "GraphDoc")]
pub struct DefiningGraph {
    names: Vec<String>,
    labels: Vec<Label>,
}

/// JSON shape of a defining graph.
#[derive(Serialize, Deserialize)]
struct GraphDoc {
    generators: Vec<String>,
    edges: Vec<(String, String, u32)>,
}

impl TryFrom<GraphDoc> for DefiningGraph {
    type Error = Error;

    fn try_from(doc: GraphDoc) -> Result<Self> {
        let mut b = Builder::new(doc.generators, false)?;
        for (x, y, m) in doc.edges {
            b.edge(&x, &y, m)?;
        }
        Ok(b.finish())
    }
}

impl From<DefiningGraph> for GraphDoc {
    fn from(g: DefiningGraph) -> Self {
        GraphDoc {
            edges: g.edges().map(|(a, b, m)| (g.name(a).to_owned(), g.name(b).to_owned(), m)).collect(),
            generators: g.names,
        }
    }
}

struct Builder {
    names: Vec<String>,
    index: BTreeMap<String, usize>,
    edges: BTreeMap<(usize, usize), u32>,
    implicit: bool,
}

impl Builder {
    fn new(names: Vec<String>, implicit: bool) -> Result<Self> {
        let mut b = Builder { names: Vec::new(), index: BTreeMap::new(), edges: BTreeMap::new(), implicit };
        for n in names {
            if b.index.contains_key(&n) {
                return Err(Error::DuplicateGenerator(n));
            }
            b.declare(n)?;
        }
        Ok(b)
    }

    fn declare(&mut self, name: String) -> Result<usize> {
        if !valid_name(&name) {
            return Err(Error::Parse(format!("invalid generator name {name:?}")));
        }
        if self.names.len() == MAX_GENERATORS {
            return Err(Error::TooManyGenerators { max: MAX_GENERATORS, got: MAX_GENERATORS + 1 });
        }
        self.index.insert(name.clone(), self.names.len());
        self.names.push(name);
        Ok(self.names.len() - 1)
    }

    fn lookup(&mut self, name: &str) -> Result<usize> {
        match self.index.get(name) {
            Some(&i) => Ok(i),
            None if self.implicit => self.declare(name.to_owned()),
            None => Err(Error::UnknownGenerator(name.to_owned())),
        }
    }

    fn edge(&mut self, x: &str, y: &str, m: u32) -> Result<()> {
        let i = self.lookup(x)?;
        let j = self.lookup(y)?;
        if i == j {
            return Err(Error::SelfLoop(x.to_owned()));
        }
        if m < 2 {
            return Err(Error::LabelBelowTwo { a: x.to_owned(), b: y.to_owned(), label: m });
        }
        let key = (i.min(j), i.max(j));
        match self.edges.get(&key) {
            Some(&prev) if prev != m => {
                Err(Error::AsymmetricLabel { a: x.to_owned(), b: y.to_owned(), first: prev, second: m })
            }
            _ => {
                self.edges.insert(key, m);
                Ok(())
            }
        }
    }

    fn finish(self) -> DefiningGraph {
        let n = self.names.len();
        let mut labels = vec![Label::Infinite; n * n];
        for (&(i, j), &m) in &self.edges {
            labels[i * n + j] = Label::Finite(m);
            labels[j * n + i] = Label::Finite(m);
        }
        DefiningGraph { names: self.names, labels }
    }
}

fn valid_name(name: &str) -> bool {
    !name.is_empty()
        && name != "1"
        && name != "ε"
        && !name.contains(['\'', '^', ';', '#', ','])
        && !name.chars().any(char::is_whitespace)
}

impl DefiningGraph {
    /// Builds a graph from generator names and `(i, j, m)` edges.
    pub fn new(names: &[&str], edges: &[(usize, usize, u32)]) -> Result<Self> {
        let mut b = Builder::new(names.iter().map(|s| s.to_string()).collect(), false)?;
        for &(i, j, m) in edges {
            let x = names.get(i).ok_or_else(|| Error::UnknownGenerator(i.to_string()))?;
            let y = names.get(j).ok_or_else(|| Error::UnknownGenerator(j.to_string()))?;
            b.edge(x, y, m)?;
        }
        Ok(b.finish())
    }

    /// Parses the text format `a b c; a b 3; b c 3`.
    ///
    /// Names before the first `;` are the generators in canonical order; text
    /// without a `;` is a bare generator list.
    /// Each later entry, separated by `;` or a newline, is `g h m`. A label
    /// of `inf` is accepted and leaves the pair at `∞`. `#` starts a comment.
    /// Names first seen in an entry are appended to the generator list.
    pub fn parse(text: &str) -> Result<Self> {
        let text: String = text.lines().map(|l| l.split('#').next().unwrap_or("")).collect::<Vec<_>>().join("\n");
        let (head, rest) = text.split_once(';').unwrap_or((&text, ""));
        let mut b = Builder::new(head.split_whitespace().map(String::from).collect(), true)?;
        for entry in rest.split([';', '\n']) {
            let toks: Vec<&str> = entry.split_whitespace().collect();
            match toks.as_slice() {
                [] => {}
                [x, y, m] if matches!(*m, "inf" | "∞") => {
                    b.lookup(x)?;
                    b.lookup(y)?;
                }
                [x, y, m] => {
                    let m: u32 = m.parse().map_err(|_| Error::Parse(format!("bad label {m:?}")))?;
                    b.edge(x, y, m)?;
                }
                _ => return Err(Error::Parse(format!("expected 'g h m', got {:?}", entry.trim()))),
            }
        }
        Ok(b.finish())
    }

    /// Text format accepted by [`DefiningGraph::parse`].
    pub fn to_text(&self) -> String {
        let mut s = self.names.join(" ");
        s.push(';');
        for (a, b, m) in self.edges() {
            s.push_str(&format!(" {} {} {m};", self.name(a), self.name(b)));
        }
        if s.ends_with(';') && self.edges().next().is_some() {
            s.pop();
        }
        s
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("graph serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn gens(&self) -> impl Iterator<Item = Gen> {
        (0..self.rank() as u8).map(Gen)
    }

    pub fn full(&self) -> GenSet {
        GenSet::from_gens(self.gens())
    }

    pub fn name(&self, g: Gen) -> &str {
        &self.names[g.index()]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn gen_by_name(&self, name: &str) -> Option<Gen> {
        self.names.iter().position(|n| n == name).map(|i| Gen(i as u8))
    }

    /// Label of the pair `{a, b}`; `a` and `b` must differ.
    pub fn label(&self, a: Gen, b: Gen) -> Label {
        assert_ne!(a, b, "label of a generator with itself");
        self.labels[a.index() * self.rank() + b.index()]
    }

    /// Finite-label edges `(a, b, m)` with `a < b`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Gen, Gen, u32)> + '_ {
        self.gens().flat_map(move |a| {
            self.gens().filter(move |&b| b > a).filter_map(move |b| self.label(a, b).finite().map(|m| (a, b, m)))
        })
    }

    pub fn max_finite_label(&self) -> Option<u32> {
        self.edges().map(|e| e.2).max()
    }

    /// `true` when every pair of distinct generators in `s` is labelled `∞`.
    pub fn is_free_on(&self, s: GenSet) -> bool {
        s.iter().all(|a| s.iter().filter(|&b| b > a).all(|b| self.label(a, b).is_infinite()))
    }

    pub fn check_subset(&self, s: GenSet) -> Result<()> {
        if s.is_subset(self.full()) {
            Ok(())
        } else {
            Err(Error::SubsetNotInGraph)
        }
    }

    pub fn subset_from_names<S: AsRef<str>>(&self, names: &[S]) -> Result<GenSet> {
        names.iter().try_fold(GenSet::EMPTY, |s, n| {
            let n = n.as_ref();
            self.gen_by_name(n).map(|g| s.with(g)).ok_or_else(|| Error::UnknownGenerator(n.to_owned()))
        })
    }

    pub fn subset_names(&self, s: GenSet) -> Vec<String> {
        s.iter().map(|g| self.name(g).to_owned()).collect()
    }

    /// The full subgraph on `s`, with generators renumbered in order.
    ///
    /// Returns the subgraph and, for each new generator, the old one.
    pub fn restrict(&self, s: GenSet) -> Result<(DefiningGraph, Vec<Gen>)> {
        self.check_subset(s)?;
        let old: Vec<Gen> = s.iter().collect();
        let names: Vec<String> = old.iter().map(|&g| self.name(g).to_owned()).collect();
        let n = old.len();
        let mut labels = vec![Label::Infinite; n * n];
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    labels[i * n + j] = self.label(old[i], old[j]);
                }
            }
        }
        Ok((DefiningGraph { names, labels }, old))
    }
}

impl fmt::Display for DefiningGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Connected finite Coxeter diagram types.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CoxeterType {
    A(usize),
    B(usize),
    D(usize),
    E(usize),
    F4,
    H(usize),
    /// Dihedral of order `2m`, used for two generators with `m ∉ {3, 4}`.
    I2(u32),
}

impl CoxeterType {
    /// Length of the longest element, which is the length of `Δ`.
    pub fn longest_length(self) -> usize {
        match self {
            CoxeterType::A(n) => n * (n + 1) / 2,
            CoxeterType::B(n) => n * n,
            CoxeterType::D(n) => n * (n - 1),
            CoxeterType::E(6) => 36,
            CoxeterType::E(7) => 63,
            CoxeterType::E(_) => 120,
            CoxeterType::F4 => 24,
            CoxeterType::H(3) => 15,
            CoxeterType::H(_) => 60,
            CoxeterType::I2(m) => m as usize,
        }
    }

    /// Order of the Coxeter group, saturating on overflow.
    pub fn group_order(self) -> u128 {
        let fact = |n: usize| (1..=n as u128).product::<u128>();
        match self {
            CoxeterType::A(n) => fact(n + 1),
            CoxeterType::B(n) => (1u128 << n) * fact(n),
            CoxeterType::D(n) => (1u128 << (n - 1)) * fact(n),
            CoxeterType::E(6) => 51_840,
            CoxeterType::E(7) => 2_903_040,
            CoxeterType::E(_) => 696_729_600,
            CoxeterType::F4 => 1152,
            CoxeterType::H(3) => 120,
            CoxeterType::H(_) => 14_400,
            CoxeterType::I2(m) => 2 * m as u128,
        }
    }
}

impl fmt::Display for CoxeterType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoxeterType::A(n) => write!(f, "A{n}"),
            CoxeterType::B(n) => write!(f, "B{n}"),
            CoxeterType::D(n) => write!(f, "D{n}"),
            CoxeterType::E(n) => write!(f, "E{n}"),
            CoxeterType::F4 => write!(f, "F4"),
            CoxeterType::H(n) => write!(f, "H{n}"),
            CoxeterType::I2(m) => write!(f, "I2({m})"),
        }
    }
}

/// Finite types of the components of the Coxeter diagram on `s`, or `None`
/// when `A_s` is not of spherical type. Components are listed by least
/// generator.
pub fn spherical_type(graph: &DefiningGraph, s: GenSet) -> Result<Option<Vec<CoxeterType>>> {
    graph.check_subset(s)?;
    let gens: Vec<Gen> = s.iter().collect();
    for (i, &a) in gens.iter().enumerate() {
        for &b in &gens[i + 1..] {
            if graph.label(a, b).is_infinite() {
                return Ok(None);
            }
        }
    }
    let mut seen = GenSet::EMPTY;
    let mut types = Vec::new();
    for &start in &gens {
        if seen.contains(start) {
            continue;
        }
        let mut comp = vec![start];
        seen = seen.with(start);
        let mut k = 0;
        while k < comp.len() {
            let a = comp[k];
            for &b in &gens {
                if !seen.contains(b) && b != a && graph.label(a, b).at_least(3) {
                    seen = seen.with(b);
                    comp.push(b);
                }
            }
            k += 1;
        }
        comp.sort();
        match component_type(graph, &comp) {
            Some(t) => types.push(t),
            None => return Ok(None),
        }
    }
    Ok(Some(types))
}

/// `true` when `A_s` is of spherical type. The empty set is spherical.
pub fn is_spherical(graph: &DefiningGraph, s: GenSet) -> Result<bool> {
    Ok(spherical_type(graph, s)?.is_some())
}

fn component_type(graph: &DefiningGraph, comp: &[Gen]) -> Option<CoxeterType> {
    let k = comp.len();
    let m = |a: Gen, b: Gen| graph.label(a, b).finite().expect("finite labels checked");
    match k {
        1 => return Some(CoxeterType::A(1)),
        2 => {
            return Some(match m(comp[0], comp[1]) {
                3 => CoxeterType::A(2),
                4 => CoxeterType::B(2),
                l => CoxeterType::I2(l),
            })
        }
        _ => {}
    }
    let nbrs = |a: Gen| -> Vec<Gen> { comp.iter().copied().filter(|&b| b != a && m(a, b) >= 3).collect() };
    let edges: usize = comp.iter().map(|&a| nbrs(a).len()).sum::<usize>() / 2;
    if edges != k - 1 {
        return None;
    }
    let branch: Vec<Gen> = comp.iter().copied().filter(|&a| nbrs(a).len() >= 3).collect();
    if comp.iter().any(|&a| nbrs(a).len() > 3) || branch.len() > 1 {
        return None;
    }
    if let Some(&centre) = branch.first() {
        if comp.iter().any(|&a| nbrs(a).iter().any(|&b| m(a, b) != 3)) {
            return None;
        }
        let mut arms: Vec<usize> = nbrs(centre)
            .into_iter()
            .map(|first| {
                let (mut prev, mut cur, mut len) = (centre, first, 1);
                loop {
                    let next: Vec<Gen> = nbrs(cur).into_iter().filter(|&b| b != prev).collect();
                    match next.as_slice() {
                        [n] => {
                            prev = cur;
                            cur = *n;
                            len += 1;
                        }
                        _ => break len,
                    }
                }
            })
            .collect();
        arms.sort();
        return match arms.as_slice() {
            [1, 1, _] => Some(CoxeterType::D(k)),
            [1, 2, 2] => Some(CoxeterType::E(6)),
            [1, 2, 3] => Some(CoxeterType::E(7)),
            [1, 2, 4] => Some(CoxeterType::E(8)),
            _ => None,
        };
    }
    // A path: walk it from an end and read the labels in order.
    let end = *comp.iter().find(|&&a| nbrs(a).len() == 1)?;
    let mut path = vec![end];
    while path.len() < k {
        let cur = *path.last().unwrap();
        let next = nbrs(cur).into_iter().find(|b| !path.contains(b))?;
        path.push(next);
    }
    let labels: Vec<u32> = path.windows(2).map(|w| m(w[0], w[1])).collect();
    let odd: Vec<(usize, u32)> = labels.iter().copied().enumerate().filter(|&(_, l)| l != 3).collect();
    let at_end = |i: usize| i == 0 || i == k - 2;
    match odd.as_slice() {
        [] => Some(CoxeterType::A(k)),
        [(i, 4)] if at_end(*i) => Some(CoxeterType::B(k)),
        [(1, 4)] if k == 4 => Some(CoxeterType::F4),
        [(i, 5)] if at_end(*i) && (k == 3 || k == 4) => Some(CoxeterType::H(k)),
        _ => None,
    }
}

/// Which hypothesis of the main theorem a graph satisfies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseKind {
    /// Some pair of generators is labelled `∞`.
    InfiniteLabelPair,
    /// Some triangle has all three labels at least 3.
    LargeTriangle,
    /// Some triangle has no label 3 and at most one label 2.
    ThreeFreeTriangle,
    NotCovered,
}

/// Shape of a three-free witness triangle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ThreeFreePattern {
    /// Exactly one label is 2; the other two exceed 3.
    OneCommutingPair,
    /// All three labels exceed 3.
    NoCommutingPair,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremCase {
    pub case: CaseKind,
    /// The pair or triangle found first in lexicographic order.
    pub witness: Vec<Gen>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pattern: Option<ThreeFreePattern>,
}

impl TheoremCase {
    pub fn is_covered(&self) -> bool {
        self.case != CaseKind::NotCovered
    }
}

fn triples(n: u8) -> impl Iterator<Item = (Gen, Gen, Gen)> {
    (0..n).flat_map(move |i| (i + 1..n).flat_map(move |j| (j + 1..n).map(move |k| (Gen(i), Gen(j), Gen(k)))))
}

/// Decides which case of the main theorem covers `graph`.
///
/// The cases are tried in order and the first witness in lexicographic
/// order is reported.
pub fn classify_theorem_case(graph: &DefiningGraph) -> TheoremCase {
    let n = graph.rank() as u8;
    for a in graph.gens() {
        for b in graph.gens().filter(|&b| b > a) {
            if graph.label(a, b).is_infinite() {
                return TheoremCase { case: CaseKind::InfiniteLabelPair, witness: vec![a, b], pattern: None };
            }
        }
    }
    let labels = |(a, b, c): (Gen, Gen, Gen)| [graph.label(a, b), graph.label(b, c), graph.label(a, c)];
    if let Some((a, b, c)) = triples(n).find(|&t| labels(t).iter().all(|l| l.at_least(3))) {
        return TheoremCase { case: CaseKind::LargeTriangle, witness: vec![a, b, c], pattern: None };
    }
    for t in triples(n) {
        let ls = labels(t);
        let twos = ls.iter().filter(|&&l| l == Label::Finite(2)).count();
        if twos <= 1 && !ls.contains(&Label::Finite(3)) {
            let pattern =
                if twos == 1 { ThreeFreePattern::OneCommutingPair } else { ThreeFreePattern::NoCommutingPair };
            return TheoremCase {
                case: CaseKind::ThreeFreeTriangle,
                witness: vec![t.0, t.1, t.2],
                pattern: Some(pattern),
            };
        }
    }
    TheoremCase { case: CaseKind::NotCovered, witness: Vec::new(), pattern: None }
}

/// In a graph with no label 3 and no label `∞`, finds a triangle `(a, b, c)`
/// with `m_ab > 3`, `m_bc > 3` and at most one label 2.
///
/// Triangles are scanned lexicographically; the middle vertex is the least
/// one whose two triangle edges both exceed 3.
pub fn find_3free_triangle(graph: &DefiningGraph) -> Result<Option<(Gen, Gen, Gen)>> {
    for a in graph.gens() {
        for b in graph.gens().filter(|&b| b > a) {
            match graph.label(a, b) {
                Label::Infinite => return Err(Error::Precondition("graph has a label ∞".into())),
                Label::Finite(3) => return Err(Error::Precondition("graph has a label 3".into())),
                _ => {}
            }
        }
    }
    let big = |x: Gen, y: Gen| graph.label(x, y).at_least(4);
    for (x, y, z) in triples(graph.rank() as u8) {
        let twos = [(x, y), (y, z), (x, z)].iter().filter(|&&(p, q)| graph.label(p, q) == Label::Finite(2)).count();
        if twos > 1 {
            continue;
        }
        for (mid, p, q) in [(x, y, z), (y, x, z), (z, x, y)] {
            if big(p, mid) && big(mid, q) {
                return Ok(Some((p, mid, q)));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_triangle() {
        let g = DefiningGraph::parse("a b c; a b 3; b c 3; a c 3").unwrap();
        assert_eq!(g.rank(), 3);
        assert_eq!(g.label(Gen(0), Gen(2)), Label::Finite(3));
        let round = DefiningGraph::parse(&g.to_text()).unwrap();
        assert_eq!(round, g);
        assert_eq!(DefiningGraph::from_json(&g.to_json()).unwrap(), g);
    }

    #[test]
    fn omitted_pairs_are_infinite() {
        let g = DefiningGraph::parse("s t;").unwrap();
        assert!(g.label(Gen(0), Gen(1)).is_infinite());
        assert!(g.is_free_on(g.full()));
    }

    #[test]
    fn edge_names_extend_generators() {
        let g = DefiningGraph::parse("s t; t u 3").unwrap();
        assert_eq!(g.names(), ["s", "t", "u"]);
        assert!(g.label(Gen(0), Gen(2)).is_infinite());
    }

    #[test]
    fn rejects_bad_labels() {
        assert!(matches!(DefiningGraph::parse("a b; a b 1"), Err(Error::LabelBelowTwo { .. })));
        assert!(matches!(DefiningGraph::parse("a b; a b 3; b a 4"), Err(Error::AsymmetricLabel { .. })));
        assert!(DefiningGraph::parse("a b; a b 3; b a 3").is_ok());
        assert!(matches!(DefiningGraph::parse("a a;"), Err(Error::DuplicateGenerator(_))));
        assert_eq!(DefiningGraph::parse("a b").unwrap().rank(), 2);
        assert!(DefiningGraph::parse("a b; a b").is_err());
    }

    #[test]
    fn finite_types() {
        let ty = |text: &str| {
            let g = DefiningGraph::parse(text).unwrap();
            spherical_type(&g, g.full()).unwrap()
        };
        assert_eq!(ty("a b c; a b 3; b c 3; a c 2"), Some(vec![CoxeterType::A(3)]));
        assert_eq!(ty("a b c; a b 3; b c 3; a c 3"), None);
        assert_eq!(ty("a b c; a b 4; b c 3; a c 2"), Some(vec![CoxeterType::B(3)]));
        assert_eq!(ty("a b c; a b 5; b c 3; a c 2"), Some(vec![CoxeterType::H(3)]));
        assert_eq!(ty("a b c; a b 6; b c 3; a c 2"), None);
        assert_eq!(ty("a b c d; a b 3; b c 4; c d 3; a c 2; a d 2; b d 2"), Some(vec![CoxeterType::F4]));
        assert_eq!(ty("a b c d; a b 3; b c 3; b d 3; a c 2; a d 2; c d 2"), Some(vec![CoxeterType::D(4)]));
        assert_eq!(ty("a b; a b 2"), Some(vec![CoxeterType::A(1), CoxeterType::A(1)]));
        assert_eq!(ty("a b; a b 7"), Some(vec![CoxeterType::I2(7)]));
        assert_eq!(ty("a b;"), None);
    }

    #[test]
    fn case_one_reports_first_infinite_pair() {
        let g = DefiningGraph::parse("a b c; a b 3").unwrap();
        let c = classify_theorem_case(&g);
        assert_eq!(c.case, CaseKind::InfiniteLabelPair);
        assert_eq!(c.witness, vec![Gen(0), Gen(2)]);
    }

    #[test]
    fn classification_cases() {
        let case = |t: &str| classify_theorem_case(&DefiningGraph::parse(t).unwrap());
        assert_eq!(case("a b c; a b 3; b c 3; a c 3").case, CaseKind::LargeTriangle);
        let c = case("a b c; a b 4; b c 4; a c 2");
        assert_eq!(c.case, CaseKind::ThreeFreeTriangle);
        assert_eq!(c.pattern, Some(ThreeFreePattern::OneCommutingPair));
        assert_eq!(case("a b c; a b 3; b c 3; a c 2").case, CaseKind::NotCovered);
        assert_eq!(case("a b; a b 5").case, CaseKind::NotCovered);
    }

    #[test]
    fn three_free_triangle_orientation() {
        let g = DefiningGraph::parse("a b c; a b 4; b c 4; a c 2").unwrap();
        assert_eq!(find_3free_triangle(&g).unwrap(), Some((Gen(0), Gen(1), Gen(2))));
        let g = DefiningGraph::parse("a b c; a c 4; b c 4; a b 2").unwrap();
        assert_eq!(find_3free_triangle(&g).unwrap(), Some((Gen(0), Gen(2), Gen(1))));
        let g = DefiningGraph::parse("a b c; a b 2; b c 2; a c 4").unwrap();
        assert_eq!(find_3free_triangle(&g).unwrap(), None);
        let g = DefiningGraph::parse("a b c; a b 3; b c 4; a c 4").unwrap();
        assert!(find_3free_triangle(&g).is_err());
    }

    #[test]
    fn subsets_enumerate_powerset() {
        let s = GenSet(0b101);
        assert_eq!(s.subsets(), vec![GenSet(0), GenSet(1), GenSet(4), GenSet(5)]);
    }
}
