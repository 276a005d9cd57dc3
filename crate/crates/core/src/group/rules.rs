//! Length-preserving rewrite rules from the dihedral subgroups.

use std::collections::BTreeMap;
use std::sync::Arc;

use rustc_hash::FxHashMap;

use crate::monoid::MonoidEngine;
use crate::presentation::{DefiningGraph, Gen, GenSet, Label};
use crate::words::{reduced_words, Letter, SignedWord};

use super::garside::SphericalGroup;

/// Classes of equal-length freely reduced words over two generators `0, 1`
/// that are equal in the Artin group with label `m`. Only classes with at
/// least two members are kept.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteRuleSet {
    pub label: Label,
    pub max_len: usize,
    classes: Vec<Vec<SignedWord>>,
}

impl RewriteRuleSet {
    pub fn classes(&self) -> &[Vec<SignedWord>] {
        &self.classes
    }

    /// Unordered pairs of distinct equal words, each listed once.
    pub fn pairs(&self) -> impl Iterator<Item = (&SignedWord, &SignedWord)> {
        self.classes
            .iter()
            .flat_map(|c| c.iter().enumerate().flat_map(move |(i, u)| c[i + 1..].iter().map(move |v| (u, v))))
    }

    pub fn contains_pair(&self, u: &SignedWord, v: &SignedWord) -> bool {
        u != v && self.classes.iter().any(|c| c.contains(u) && c.contains(v))
    }
}

/// All rules of length at most `b` for the dihedral Artin group with label `m`.
///
/// Words are grouped by their Garside normal form; for `m = ∞` the group is
/// free and there are no rules.
pub fn dihedral_rules(m: Label, b: usize) -> RewriteRuleSet {
    let Label::Finite(mv) = m else {
        return RewriteRuleSet { label: m, max_len: b, classes: Vec::new() };
    };
    let graph = Arc::new(DefiningGraph::new(&["x", "y"], &[(0, 1, mv)]).expect("dihedral graph"));
    let monoid = MonoidEngine::new(graph.clone());
    let group = SphericalGroup::new(&monoid, graph.full(), usize::MAX).expect("dihedral type is spherical");
    let mut groups: BTreeMap<(usize, super::garside::NormalForm), Vec<SignedWord>> = BTreeMap::new();
    for w in reduced_words(GenSet(0b11), b) {
        if w.len() >= 2 {
            groups.entry((w.len(), group.normal_form(&w))).or_default().push(w);
        }
    }
    let mut classes: Vec<Vec<SignedWord>> = groups.into_values().filter(|c| c.len() > 1).collect();
    for c in classes.iter_mut() {
        c.sort();
    }
    classes.sort();
    RewriteRuleSet { label: m, max_len: b, classes }
}

/// Rule classes of a whole graph, indexed by word.
#[derive(Clone, Debug, Default)]
pub struct RuleIndex {
    max_len: usize,
    lookup: FxHashMap<Vec<Letter>, u32>,
    classes: Vec<Vec<SignedWord>>,
}

impl RuleIndex {
    /// Dihedral rules of length at most `b` for every finite-label pair.
    pub fn for_graph(graph: &DefiningGraph, b: usize) -> Self {
        let mut by_label: BTreeMap<u32, RewriteRuleSet> = BTreeMap::new();
        let mut classes = Vec::new();
        for (x, y, m) in graph.edges() {
            let rules = by_label.entry(m).or_insert_with(|| dihedral_rules(Label::Finite(m), b));
            let map = |g: Gen| if g.0 == 0 { x } else { y };
            for c in rules.classes() {
                classes.push(c.iter().map(|w| w.relabel(map)).collect());
            }
        }
        RuleIndex::from_classes(classes, b)
    }

    /// Index over arbitrary classes; words in one class are treated as equal.
    pub fn from_classes(classes: Vec<Vec<SignedWord>>, max_len: usize) -> Self {
        let mut lookup = FxHashMap::default();
        let mut kept = Vec::new();
        for c in classes {
            if c.len() < 2 {
                continue;
            }
            let id = kept.len() as u32;
            for w in &c {
                lookup.insert(w.letters().to_vec(), id);
            }
            kept.push(c);
        }
        RuleIndex { max_len, lookup, classes: kept }
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn classes(&self) -> &[Vec<SignedWord>] {
        &self.classes
    }

    pub fn class_of(&self, w: &[Letter]) -> Option<&[SignedWord]> {
        self.lookup.get(w).map(|&i| self.classes[i as usize].as_slice())
    }

    /// Calls `f` with every word one rule application away from `w`.
    pub fn moves(&self, w: &[Letter], mut f: impl FnMut(Vec<Letter>)) {
        let n = w.len();
        for p in 0..n {
            let g0 = w[p].gen();
            let mut g1: Option<Gen> = None;
            for end in p + 1..=n.min(p + self.max_len) {
                let g = w[end - 1].gen();
                if g != g0 {
                    match g1 {
                        None => g1 = Some(g),
                        Some(h) if h != g => break,
                        _ => {}
                    }
                }
                if g1.is_none() {
                    continue;
                }
                if let Some(class) = self.class_of(&w[p..end]) {
                    for q in class {
                        if q.letters() != &w[p..end] {
                            let mut v = Vec::with_capacity(n - (end - p) + q.len());
                            v.extend_from_slice(&w[..p]);
                            v.extend_from_slice(q.letters());
                            v.extend_from_slice(&w[end..]);
                            f(v);
                        }
                    }
                }
            }
        }
    }
}
