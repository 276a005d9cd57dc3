//! The positive monoid: word problem, divisibility, lcms and Garside elements.
//!
//! Positive relations preserve length, so the monoid class of a positive
//! word is a finite set found by closing under the braid relations.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::sync::{Arc, RwLock};

use rustc_hash::FxHashMap;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::presentation::{spherical_type, DefiningGraph, Gen, GenSet};
use crate::words::SignedWord;

/// A word in the generators only. `Ord` is shortlex.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PositiveWord(pub Vec<Gen>);

impl Ord for PositiveWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for PositiveWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PositiveWord {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn gens(&self) -> &[Gen] {
        &self.0
    }

    pub fn concat(&self, other: &PositiveWord) -> PositiveWord {
        PositiveWord([self.0.as_slice(), other.0.as_slice()].concat())
    }

    pub fn reversed(&self) -> PositiveWord {
        PositiveWord(self.0.iter().rev().copied().collect())
    }

    pub fn signed(&self) -> SignedWord {
        SignedWord::positive(&self.0)
    }

    pub fn support(&self) -> GenSet {
        GenSet::from_gens(self.0.iter().copied())
    }

    /// Reads a positive word; fails if a letter is inverted.
    pub fn from_signed(w: &SignedWord) -> Result<PositiveWord> {
        w.as_positive().map(PositiveWord).ok_or_else(|| Error::Precondition("word is not positive".into()))
    }

    pub fn to_text(&self, graph: &DefiningGraph) -> String {
        self.signed().to_text(graph)
    }
}

impl Serialize for PositiveWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.iter().map(|g| g.0).collect::<Vec<u8>>().serialize(s)
    }
}

/// All positive words equal in the monoid to a given one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositiveClass {
    members: Vec<PositiveWord>,
}

impl PositiveClass {
    /// Shortlex-least member.
    pub fn canonical(&self) -> &PositiveWord {
        &self.members[0]
    }

    /// Members in shortlex order.
    pub fn members(&self) -> &[PositiveWord] {
        &self.members
    }

    pub fn contains(&self, w: &PositiveWord) -> bool {
        self.members.binary_search(w).is_ok()
    }

    pub fn contains_gens(&self, w: &[Gen]) -> bool {
        self.members.binary_search_by(|m| m.0.len().cmp(&w.len()).then_with(|| m.0.as_slice().cmp(w))).is_ok()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Length shared by every member.
    pub fn word_len(&self) -> usize {
        self.members[0].len()
    }
}

/// Calls `f` on every word one braid relation away from `w`.
pub(crate) fn braid_moves(graph: &DefiningGraph, w: &[Gen], mut f: impl FnMut(Vec<Gen>)) {
    for p in 0..w.len().saturating_sub(1) {
        let (x, y) = (w[p], w[p + 1]);
        if x == y {
            continue;
        }
        let Some(m) = graph.label(x, y).finite() else { continue };
        let m = m as usize;
        if p + m > w.len() {
            continue;
        }
        if (0..m).all(|i| w[p + i] == if i % 2 == 0 { x } else { y }) {
            let mut v = w.to_vec();
            for (i, slot) in v[p..p + m].iter_mut().enumerate() {
                *slot = if i % 2 == 0 { y } else { x };
            }
            f(v);
        }
    }
}

/// Monoid computations over one defining graph, with a memo of classes.
pub struct MonoidEngine {
    graph: Arc<DefiningGraph>,
    memo: RwLock<FxHashMap<PositiveWord, Arc<PositiveClass>>>,
    capacity: Option<usize>,
}

impl MonoidEngine {
    pub fn new(graph: Arc<DefiningGraph>) -> Self {
        MonoidEngine { graph, memo: RwLock::new(FxHashMap::default()), capacity: None }
    }

    /// Caps the number of memoized words; classes beyond it are recomputed.
    pub fn with_memo_capacity(mut self, words: usize) -> Self {
        self.capacity = Some(words);
        self
    }

    pub fn graph(&self) -> &DefiningGraph {
        &self.graph
    }

    pub fn positive_class(&self, w: &PositiveWord) -> Arc<PositiveClass> {
        if let Some(c) = self.memo.read().unwrap().get(w) {
            return c.clone();
        }
        let mut seen: BTreeSet<PositiveWord> = BTreeSet::new();
        seen.insert(w.clone());
        let mut queue = vec![w.0.clone()];
        while let Some(cur) = queue.pop() {
            braid_moves(&self.graph, &cur, |v| {
                let v = PositiveWord(v);
                if !seen.contains(&v) {
                    queue.push(v.0.clone());
                    seen.insert(v);
                }
            });
        }
        let class = Arc::new(PositiveClass { members: seen.into_iter().collect() });
        let mut memo = self.memo.write().unwrap();
        if self.capacity.is_none_or(|cap| memo.len() + class.len() <= cap) {
            for m in class.members() {
                memo.insert(m.clone(), class.clone());
            }
        }
        class
    }

    pub fn canonical(&self, w: &PositiveWord) -> PositiveWord {
        self.positive_class(w).canonical().clone()
    }

    pub fn monoid_equal(&self, u: &PositiveWord, v: &PositiveWord) -> bool {
        u.len() == v.len() && self.positive_class(u).contains(v)
    }

    /// `u ≼ v`: some `p` has `u·p = v`.
    pub fn left_divides(&self, u: &PositiveWord, v: &PositiveWord) -> bool {
        if u.len() > v.len() {
            return false;
        }
        let cu = self.positive_class(u);
        self.positive_class(v).members().iter().any(|m| cu.contains_gens(&m.0[..u.len()]))
    }

    /// `v ≽ u`: some `p` has `p·u = v`.
    pub fn right_divides(&self, u: &PositiveWord, v: &PositiveWord) -> bool {
        if u.len() > v.len() {
            return false;
        }
        let cu = self.positive_class(u);
        self.positive_class(v).members().iter().any(|m| cu.contains_gens(&m.0[v.len() - u.len()..]))
    }

    /// Cap used by [`MonoidEngine::left_lcm`] when none is given.
    pub fn default_lcm_cap(&self, u: &PositiveWord, v: &PositiveWord) -> usize {
        let m = self.graph.max_finite_label().unwrap_or(2) as usize;
        (2 * u.len().max(1) * v.len().max(1)).max(u.len().max(v.len()) * m)
    }

    /// Least common right multiple of `u` and `v`, searched up to `cap` letters.
    ///
    /// Returns the canonical word of the unique minimal common multiple, or
    /// `None` if there is none of length at most `cap`.
    pub fn left_lcm(&self, u: &PositiveWord, v: &PositiveWord, cap: Option<usize>) -> Option<PositiveWord> {
        let cap = cap.unwrap_or_else(|| self.default_lcm_cap(u, v));
        self.lcm_search(u, v, cap, self.graph.full(), false)
    }

    /// Least common left multiple, searched up to `cap` letters.
    pub fn right_lcm(&self, u: &PositiveWord, v: &PositiveWord, cap: Option<usize>) -> Option<PositiveWord> {
        let cap = cap.unwrap_or_else(|| self.default_lcm_cap(u, v));
        let (ru, rv) = (u.reversed(), v.reversed());
        self.lcm_search(&ru, &rv, cap, self.graph.full(), false).map(|w| self.canonical(&w.reversed()))
    }

    fn square_free(&self, w: &PositiveWord) -> bool {
        self.positive_class(w).members().iter().all(|m| m.0.windows(2).all(|p| p[0] != p[1]))
    }

    /// Layered search over right multiples of `u` by atoms of `gens`. With
    /// `simple_only`, non-square-free elements are pruned; every left divisor
    /// of `Δ` is square free, so this is safe when looking for `Δ`.
    fn lcm_search(
        &self,
        u: &PositiveWord,
        v: &PositiveWord,
        cap: usize,
        gens: GenSet,
        simple_only: bool,
    ) -> Option<PositiveWord> {
        let (u, v) = if u.len() >= v.len() { (u, v) } else { (v, u) };
        let gens: Vec<Gen> = gens.iter().collect();
        let mut layer: BTreeSet<PositiveWord> = BTreeSet::new();
        layer.insert(self.canonical(u));
        for _ in u.len()..=cap {
            if let Some(hit) = layer.iter().find(|x| self.left_divides(v, x)) {
                return Some(hit.clone());
            }
            let mut next = BTreeSet::new();
            for x in &layer {
                for &g in &gens {
                    let mut y = x.0.clone();
                    y.push(g);
                    let y = self.canonical(&PositiveWord(y));
                    if !simple_only || self.square_free(&y) {
                        next.insert(y);
                    }
                }
            }
            layer = next;
        }
        None
    }

    /// The Garside element `Δ_T` of a spherical subset `T`, with its
    /// simple elements and the conjugation permutation of the atoms.
    pub fn garside_element(&self, subset: GenSet) -> Result<SphericalData> {
        let types = spherical_type(&self.graph, subset)?
            .ok_or_else(|| Error::NotSpherical(self.graph.subset_names(subset).join(" ")))?;
        let cap: usize = types.iter().map(|t| t.longest_length()).sum();
        let atoms: Vec<Gen> = subset.iter().collect();
        let mut delta = PositiveWord::default();
        for &x in &atoms {
            delta = self
                .lcm_search(&delta, &PositiveWord(vec![x]), cap, subset, true)
                .ok_or_else(|| Error::Budget("lcm of the atoms exceeds the longest length".into()))?;
        }
        if delta.len() != cap {
            return Err(Error::Budget(format!("Δ has length {} but the type predicts {cap}", delta.len())));
        }
        for &x in &atoms {
            if !self.right_divides(&PositiveWord(vec![x]), &delta) {
                return Err(Error::Budget("Δ is not a right multiple of every atom".into()));
            }
        }
        let mut simples: BTreeSet<PositiveWord> = BTreeSet::new();
        for m in self.positive_class(&delta).members() {
            for k in 0..=m.len() {
                simples.insert(self.canonical(&PositiveWord(m.0[..k].to_vec())));
            }
        }
        let mut conjugation = Vec::with_capacity(atoms.len());
        for &x in &atoms {
            let xd = PositiveWord(vec![x]).concat(&delta);
            let y = atoms
                .iter()
                .copied()
                .find(|&y| self.monoid_equal(&xd, &delta.concat(&PositiveWord(vec![y]))))
                .ok_or_else(|| Error::Budget("Δ does not normalize the atoms".into()))?;
            conjugation.push((x, y));
        }
        Ok(SphericalData { subset, delta, simples: simples.into_iter().collect(), conjugation })
    }

    /// Image of `w` under `σ`, where `x·Δ = Δ·σ(x)` on atoms.
    pub fn delta_conjugation(&self, d: &SphericalData, w: &PositiveWord) -> Result<PositiveWord> {
        w.0.iter().map(|&g| d.sigma(g).ok_or(Error::SubsetNotInGraph)).collect::<Result<Vec<_>>>().map(PositiveWord)
    }
}

/// Garside data of a spherical standard parabolic subgroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SphericalData {
    pub subset: GenSet,
    pub delta: PositiveWord,
    /// Canonical words of the left divisors of `Δ`, in shortlex order.
    pub simples: Vec<PositiveWord>,
    /// Pairs `(x, σ(x))` with `x·Δ = Δ·σ(x)`.
    pub conjugation: Vec<(Gen, Gen)>,
}

impl SphericalData {
    pub fn sigma(&self, g: Gen) -> Option<Gen> {
        self.conjugation.iter().find(|p| p.0 == g).map(|p| p.1)
    }

    pub fn sigma_inverse(&self, g: Gen) -> Option<Gen> {
        self.conjugation.iter().find(|p| p.1 == g).map(|p| p.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn engine(text: &str) -> MonoidEngine {
        MonoidEngine::new(Arc::new(DefiningGraph::parse(text).unwrap()))
    }

    fn p(v: &[u8]) -> PositiveWord {
        PositiveWord(v.iter().map(|&i| Gen(i)).collect())
    }

    #[test]
    fn braid_class() {
        let e = engine("a b; a b 3");
        let c = e.positive_class(&p(&[0, 1, 0]));
        assert_eq!(c.members(), &[p(&[0, 1, 0]), p(&[1, 0, 1])]);
        assert!(!e.monoid_equal(&p(&[0, 1, 0, 1]), &p(&[1, 0, 1, 0])));
        assert!(e.monoid_equal(&p(&[0, 1, 0, 0]), &p(&[1, 0, 1, 0])));
        assert!(e.monoid_equal(&p(&[1, 0, 1, 1]), &p(&[0, 1, 0, 1])));
    }

    #[test]
    fn divisibility_and_lcm() {
        let e = engine("a b; a b 3");
        assert!(e.left_divides(&p(&[1]), &p(&[0, 1, 0])));
        assert!(!e.left_divides(&p(&[1]), &p(&[0, 1])));
        assert!(e.right_divides(&p(&[1]), &p(&[0, 1, 0])));
        assert_eq!(e.left_lcm(&p(&[0]), &p(&[1]), None), Some(p(&[0, 1, 0])));
        let free = engine("a b;");
        assert_eq!(free.left_lcm(&p(&[0]), &p(&[1]), Some(12)), None);
        let z2 = engine("a b; a b 2");
        assert_eq!(z2.left_lcm(&p(&[0]), &p(&[1]), None), Some(p(&[0, 1])));
    }

    #[test]
    fn dihedral_garside_elements() {
        for m in 2..=6u32 {
            let e = engine(&format!("a b; a b {m}"));
            let d = e.garside_element(GenSet(0b11)).unwrap();
            assert_eq!(d.delta.len(), m as usize);
            assert_eq!(d.simples.len(), 2 * m as usize);
            let swap = m % 2 == 1;
            assert_eq!(d.sigma(Gen(0)), Some(if swap { Gen(1) } else { Gen(0) }));
        }
    }

    #[test]
    fn type_a3_garside() {
        let e = engine("a b c; a b 3; b c 3; a c 2");
        let d = e.garside_element(GenSet(0b111)).unwrap();
        assert_eq!(d.delta.len(), 6);
        assert_eq!(d.simples.len(), 24);
        assert_eq!(d.sigma(Gen(0)), Some(Gen(2)));
        let rl = e.right_lcm(&p(&[0]), &p(&[1]), None).unwrap();
        assert!(e.monoid_equal(&rl, &p(&[0, 1, 0])));
    }

    #[test]
    fn rejects_infinite_type() {
        let e = engine("a b c; a b 3; b c 3; a c 3");
        assert!(matches!(e.garside_element(GenSet(0b111)), Err(Error::NotSpherical(_))));
    }

    #[test]
    fn conjugation_matches_class_search() {
        let e = engine("a b c; a b 4; b c 3; a c 2");
        let d = e.garside_element(GenSet(0b111)).unwrap();
        for w in [p(&[0, 1]), p(&[2, 1, 0]), p(&[1, 1, 2])] {
            let s = e.delta_conjugation(&d, &w).unwrap();
            assert!(e.monoid_equal(&w.concat(&d.delta), &d.delta.concat(&s)));
        }
    }

    proptest! {
        #[test]
        fn classes_are_closed(v in proptest::collection::vec(0u8..3, 0..8)) {
            let e = engine("a b c; a b 3; b c 4; a c 2");
            let w = p(&v);
            let c = e.positive_class(&w);
            prop_assert!(c.contains(&w));
            for m in c.members() {
                prop_assert_eq!(m.len(), w.len());
                prop_assert_eq!(&*e.positive_class(m), &*c);
                braid_moves(e.graph(), &m.0, |x| assert!(c.contains(&PositiveWord(x))));
            }
        }

        #[test]
        fn reversal_preserves_classes(v in proptest::collection::vec(0u8..3, 0..8)) {
            let e = engine("a b c; a b 3; b c 5; a c 2");
            let w = p(&v);
            let rev: Vec<PositiveWord> = e.positive_class(&w).members().iter().map(|m| m.reversed()).collect();
            let c = e.positive_class(&w.reversed());
            prop_assert_eq!(rev.len(), c.len());
            for r in rev { prop_assert!(c.contains(&r)); }
        }
    }
}
