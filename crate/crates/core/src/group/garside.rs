//! Exact arithmetic in spherical-type Artin groups via Garside normal forms.

use std::sync::{Arc, RwLock};

use rustc_hash::FxHashMap;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::monoid::{MonoidEngine, PositiveWord, SphericalData};
use crate::presentation::{DefiningGraph, Gen, GenSet};
use crate::words::{alphabet, Letter, SignedWord};

const NONE: u16 = u16::MAX;

/// Left-greedy normal form `Δ^power · s_1 ⋯ s_r` with simple factors,
/// `s_1 ≠ Δ`, no trivial factors and every adjacent pair left-weighted.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NormalForm {
    pub power: i32,
    pub factors: Vec<u16>,
}

impl NormalForm {
    pub fn identity() -> Self {
        NormalForm { power: 0, factors: Vec::new() }
    }

    pub fn is_identity(&self) -> bool {
        self.power == 0 && self.factors.is_empty()
    }
}

/// Public view of a normal form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GarsideNF {
    pub power: i64,
    pub factors: Vec<PositiveWord>,
}

impl GarsideNF {
    /// The positive part `s_1 ⋯ s_r` as one word.
    pub fn tail(&self) -> PositiveWord {
        PositiveWord(self.factors.iter().flat_map(|f| f.0.iter().copied()).collect())
    }
}

struct Ball {
    dist: FxHashMap<NormalForm, u32>,
    layers: Vec<Vec<(NormalForm, SignedWord)>>,
    radius: u32,
}

/// Size limits for the exact ball of a spherical group.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BallLimits {
    pub max_radius: u32,
    pub max_ball: usize,
}

impl Default for BallLimits {
    fn default() -> Self {
        BallLimits { max_radius: 10, max_ball: 1_500_000 }
    }
}

/// A spherical standard parabolic subgroup with tables over its simples.
pub struct SphericalGroup {
    data: SphericalData,
    alphabet: Vec<Letter>,
    atom_pos: [u8; 64],
    words: Vec<PositiveWord>,
    index: FxHashMap<PositiveWord, u16>,
    delta: u16,
    atom_simple: Vec<u16>,
    mul: Vec<u16>,
    ldiv: Vec<u16>,
    tau: Vec<u16>,
    complement: Vec<u16>,
    limits: BallLimits,
    ball: RwLock<Ball>,
}

impl SphericalGroup {
    /// Builds the tables for `subset`. Fails when `A_subset` is not spherical
    /// or has more than `max_simples` simple elements.
    pub fn new(monoid: &MonoidEngine, subset: GenSet, max_simples: usize) -> Result<Self> {
        Self::with_limits(monoid, subset, max_simples, BallLimits::default())
    }

    pub fn with_limits(monoid: &MonoidEngine, subset: GenSet, max_simples: usize, limits: BallLimits) -> Result<Self> {
        let graph = monoid.graph();
        let order: u128 = crate::presentation::spherical_type(graph, subset)?
            .ok_or_else(|| Error::NotSpherical(graph.subset_names(subset).join(" ")))?
            .iter()
            .map(|t| t.group_order())
            .product();
        if order > max_simples as u128 {
            return Err(Error::Budget(format!("{order} simple elements exceed the cap {max_simples}")));
        }
        let data = monoid.garside_element(subset)?;
        let atoms: Vec<Gen> = subset.iter().collect();
        let na = atoms.len();
        let mut atom_pos = [u8::MAX; 64];
        for (i, g) in atoms.iter().enumerate() {
            atom_pos[g.index()] = i as u8;
        }
        let words = data.simples.clone();
        let index: FxHashMap<PositiveWord, u16> =
            words.iter().enumerate().map(|(i, w)| (w.clone(), i as u16)).collect();
        let lookup = |w: PositiveWord| index.get(&monoid.canonical(&w)).copied().unwrap_or(NONE);
        let delta = index[&data.delta];
        let ns = words.len();
        let mut mul = vec![NONE; ns * na];
        let mut ldiv = vec![NONE; ns * na];
        for (s, w) in words.iter().enumerate() {
            for (a, &g) in atoms.iter().enumerate() {
                mul[s * na + a] = lookup(w.concat(&PositiveWord(vec![g])));
                let t = lookup(PositiveWord(vec![g]).concat(w));
                if t != NONE {
                    ldiv[t as usize * na + a] = s as u16;
                }
            }
        }
        let tau: Vec<u16> = words
            .iter()
            .map(|w| lookup(PositiveWord(w.0.iter().map(|&g| data.sigma_inverse(g).unwrap()).collect())))
            .collect();
        let atom_simple: Vec<u16> = atoms.iter().map(|&g| index[&PositiveWord(vec![g])]).collect();
        let complement: Vec<u16> =
            (0..na).map(|a| (0..ns).find(|&s| mul[s * na + a] == delta).map(|s| s as u16).unwrap()).collect();
        let mut dist = FxHashMap::default();
        dist.insert(NormalForm::identity(), 0);
        Ok(SphericalGroup {
            alphabet: alphabet(subset),
            data,
            atom_pos,
            words,
            index,
            delta,
            atom_simple,
            mul,
            ldiv,
            tau,
            complement,
            limits,
            ball: RwLock::new(Ball {
                dist,
                layers: vec![vec![(NormalForm::identity(), SignedWord::empty())]],
                radius: 0,
            }),
        })
    }

    pub fn data(&self) -> &SphericalData {
        &self.data
    }

    pub fn subset(&self) -> GenSet {
        self.data.subset
    }

    pub fn simple_count(&self) -> usize {
        self.words.len()
    }

    pub fn simple_word(&self, s: u16) -> &PositiveWord {
        &self.words[s as usize]
    }

    pub fn simple_id(&self, w: &PositiveWord) -> Option<u16> {
        self.index.get(w).copied()
    }

    fn na(&self) -> usize {
        self.alphabet.len() / 2
    }

    fn pos(&self, g: Gen) -> usize {
        let p = self.atom_pos[g.index()];
        assert!(p != u8::MAX, "generator outside the spherical subset");
        p as usize
    }

    fn normalize(&self, nf: &mut NormalForm) {
        let na = self.na();
        let f = &mut nf.factors;
        loop {
            let mut changed = false;
            for i in (0..f.len().saturating_sub(1)).rev() {
                loop {
                    let (s, t) = (f[i] as usize, f[i + 1] as usize);
                    let hit = (0..na).find(|&a| self.mul[s * na + a] != NONE && self.ldiv[t * na + a] != NONE);
                    match hit {
                        Some(a) => {
                            f[i] = self.mul[s * na + a];
                            f[i + 1] = self.ldiv[t * na + a];
                            changed = true;
                        }
                        None => break,
                    }
                }
            }
            f.retain(|&s| s != 0);
            if !changed {
                break;
            }
        }
        let k = f.iter().take_while(|&&s| s == self.delta).count();
        f.drain(..k);
        nf.power += k as i32;
    }

    /// Right multiplication by one letter of the subset.
    pub fn mul_letter(&self, nf: &mut NormalForm, l: Letter) {
        let a = self.pos(l.gen());
        if l.is_positive() {
            nf.factors.push(self.atom_simple[a]);
        } else {
            for s in nf.factors.iter_mut() {
                *s = self.tau[*s as usize];
            }
            nf.power -= 1;
            nf.factors.push(self.complement[a]);
        }
        self.normalize(nf);
    }

    pub fn normal_form(&self, w: &SignedWord) -> NormalForm {
        let mut nf = NormalForm::identity();
        for &l in w.letters() {
            self.mul_letter(&mut nf, l);
        }
        nf
    }

    pub fn public_form(&self, nf: &NormalForm) -> GarsideNF {
        GarsideNF {
            power: nf.power as i64,
            factors: nf.factors.iter().map(|&s| self.words[s as usize].clone()).collect(),
        }
    }

    /// A word spelling `nf`: `Δ^k` or `(Δ^{-1})^{-k}` followed by the factors.
    pub fn word_of(&self, nf: &NormalForm) -> SignedWord {
        let d = self.data.delta.signed();
        let head = if nf.power >= 0 { d.pow(nf.power as usize) } else { d.inverse().pow((-nf.power) as usize) };
        nf.factors.iter().fold(head, |acc, &s| acc.concat(&self.words[s as usize].signed()))
    }

    /// Grows the ball towards `radius` while it stays within the size limit.
    /// Returns the radius reached.
    fn grow_to(&self, radius: u32) -> u32 {
        let radius = radius.min(self.limits.max_radius);
        {
            let ball = self.ball.read().unwrap();
            if ball.radius >= radius || ball.dist.len() > self.limits.max_ball {
                return ball.radius;
            }
        }
        let mut ball = self.ball.write().unwrap();
        while ball.radius < radius && ball.dist.len() <= self.limits.max_ball {
            self.grow(&mut ball);
        }
        ball.radius
    }

    fn grow(&self, ball: &mut Ball) {
        let r = ball.radius + 1;
        let mut next = Vec::new();
        for (g, w) in &ball.layers[ball.radius as usize] {
            for &l in &self.alphabet {
                if w.last() == Some(l.inverse()) {
                    continue;
                }
                let mut h = g.clone();
                self.mul_letter(&mut h, l);
                if !ball.dist.contains_key(&h) {
                    ball.dist.insert(h.clone(), r);
                    let mut hw = w.clone();
                    hw.push(l);
                    next.push((h, hw));
                }
            }
        }
        next.sort();
        ball.layers.push(next);
        ball.radius = r;
    }

    /// Elements of X-length at most `radius`, sorted by length and then
    /// normal form, each with a geodesic word. `None` past the size limit.
    pub fn ball_elements(&self, radius: u32) -> Option<Vec<(NormalForm, SignedWord)>> {
        if self.grow_to(radius) < radius {
            return None;
        }
        let ball = self.ball.read().unwrap();
        Some(ball.layers[..=radius as usize].iter().flatten().cloned().collect())
    }

    /// Whether `nf` has X-length at most `k`; `None` if the limits do not
    /// allow a decision. Lengths beyond the ball radius `R` are decided by
    /// splitting off a suffix of length at most `k - R`.
    pub fn length_le_nf(&self, nf: &NormalForm, k: u32) -> Option<bool> {
        if nf.is_identity() {
            return Some(true);
        }
        if k == 0 {
            return Some(false);
        }
        let r = self.grow_to(k);
        let ball = self.ball.read().unwrap();
        if let Some(&d) = ball.dist.get(nf) {
            return Some(d <= k);
        }
        if r >= k {
            return Some(false);
        }
        let j = k - r;
        if j > r {
            return None;
        }
        for layer in &ball.layers[1..=j as usize] {
            for (_, hw) in layer {
                let mut f = nf.clone();
                for &l in hw.letters().iter().rev() {
                    self.mul_letter(&mut f, l.inverse());
                }
                if ball.dist.contains_key(&f) {
                    return Some(true);
                }
            }
        }
        Some(false)
    }

    pub fn length_le(&self, w: &SignedWord, k: u32) -> Option<bool> {
        if w.len() as u32 <= k {
            return Some(true);
        }
        self.length_le_nf(&self.normal_form(w), k)
    }

    /// X-length of the element spelled by `w`, or `None` if the limits do
    /// not allow a decision.
    pub fn geodesic_length(&self, w: &SignedWord) -> Option<u32> {
        let w = w.free_reduce();
        let n = w.len() as u32;
        if w.is_positive() || w.is_negative() {
            return Some(n);
        }
        // Relations are homogeneous, so length and exponent sum agree mod 2.
        let nf = self.normal_form(&w);
        let mut d = n;
        while d >= 2 && self.length_le_nf(&nf, d - 2)? {
            d -= 2;
        }
        Some(d)
    }

    /// Shortlex-least geodesic word for the element spelled by `w`, whose
    /// length is `d`.
    pub fn shortlex_geodesic(&self, w: &SignedWord, d: u32) -> Option<SignedWord> {
        let mut rem = w.free_reduce();
        let mut out = SignedWord::empty();
        for i in 0..d {
            let want = d - i - 1;
            let mut found = false;
            for &l in &self.alphabet {
                let cand = SignedWord::from(vec![l.inverse()]).concat(&rem).free_reduce();
                if self.length_le(&cand, want)? {
                    out.push(l);
                    rem = cand;
                    found = true;
                    break;
                }
            }
            if !found {
                return None;
            }
        }
        Some(out)
    }

    /// Every geodesic word for the element spelled by `w` of length `d`, in
    /// shortlex order, or `None` past `limit` words or the ball limits.
    pub fn all_geodesics(&self, w: &SignedWord, d: u32, limit: usize) -> Option<Vec<SignedWord>> {
        let mut out = Vec::new();
        let mut stack: Vec<(SignedWord, SignedWord)> = vec![(SignedWord::empty(), w.free_reduce())];
        while let Some((prefix, rem)) = stack.pop() {
            let i = prefix.len() as u32;
            if i == d {
                out.push(prefix);
                if out.len() > limit {
                    return None;
                }
                continue;
            }
            for &l in self.alphabet.iter().rev() {
                if prefix.last() == Some(l.inverse()) {
                    continue;
                }
                let cand = SignedWord::from(vec![l.inverse()]).concat(&rem).free_reduce();
                if self.length_le(&cand, d - i - 1)? {
                    let mut p = prefix.clone();
                    p.push(l);
                    stack.push((p, cand));
                }
            }
        }
        out.sort();
        Some(out)
    }
}

/// Garside normal form of `w` in the spherical subgroup described by `d`.
pub fn garside_nf(graph: &Arc<DefiningGraph>, w: &SignedWord, d: &SphericalData) -> Result<GarsideNF> {
    if !w.support().is_subset(d.subset) {
        return Err(Error::SubsetNotInGraph);
    }
    let g = SphericalGroup::new(&MonoidEngine::new(graph.clone()), d.subset, usize::MAX)?;
    Ok(g.public_form(&g.normal_form(w)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(text: &str) -> (Arc<DefiningGraph>, SphericalGroup) {
        let g = Arc::new(DefiningGraph::parse(text).unwrap());
        let m = MonoidEngine::new(g.clone());
        let sg = SphericalGroup::new(&m, g.full(), 10_000).unwrap();
        (g, sg)
    }

    #[test]
    fn inverse_letter_normal_form() {
        let (g, sg) = group("a b; a b 3");
        let w = SignedWord::parse(&g, "a' b").unwrap();
        let nf = sg.public_form(&sg.normal_form(&w));
        assert_eq!(nf.power, -1);
        assert_eq!(nf.tail().to_text(&g), "a b b");
    }

    #[test]
    fn delta_is_central_squared() {
        let (g, sg) = group("a b c; a b 3; b c 3; a c 2");
        let d = sg.data().delta.signed();
        for text in ["a", "b c'", "c a b'"] {
            let w = SignedWord::parse(&g, text).unwrap();
            let lhs = sg.normal_form(&d.pow(2).concat(&w));
            let rhs = sg.normal_form(&w.concat(&d.pow(2)));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn word_of_round_trips() {
        let (g, sg) = group("a b; a b 4");
        for text in ["a b' a' b b", "b' b' a", "a a b a b a"] {
            let w = SignedWord::parse(&g, text).unwrap();
            let nf = sg.normal_form(&w);
            assert_eq!(sg.normal_form(&sg.word_of(&nf)), nf);
            assert!(sg.normal_form(&w.concat(&w.inverse())).is_identity());
        }
    }

    #[test]
    fn ball_sizes_free_abelian() {
        let (_, sg) = group("a b; a b 2");
        let sizes: Vec<usize> = (0..4).map(|r| sg.ball_elements(r).unwrap().len()).collect();
        assert_eq!(sizes, vec![1, 5, 13, 25]);
    }

    #[test]
    fn shortlex_geodesic_in_braid_group() {
        let (g, sg) = group("a b; a b 3");
        let w = SignedWord::parse(&g, "a b a'").unwrap();
        let d = sg.geodesic_length(&w).unwrap();
        assert_eq!(d, 3);
        let s = sg.shortlex_geodesic(&w, d).unwrap();
        assert_eq!(s.to_text(&g), "a b a'");
        let reps = sg.all_geodesics(&w, d, 100).unwrap();
        let texts: Vec<String> = reps.iter().map(|r| r.to_text(&g)).collect();
        assert_eq!(texts, ["a b a'", "b' a b"]);
    }
}
