//! Signed words over a generating set and their combinatorics.

use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::presentation::{DefiningGraph, Gen, GenSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }
}

/// A generator or its inverse, packed as `2·gen + (1 if inverse)`.
///
/// The derived order is the letter order used for shortlex: generators in
/// graph order, each generator before its inverse.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(u8);

impl Letter {
    pub fn new(g: Gen, sign: Sign) -> Letter {
        Letter(g.0 << 1 | (sign == Sign::Neg) as u8)
    }

    pub fn pos(g: Gen) -> Letter {
        Letter::new(g, Sign::Pos)
    }

    pub fn neg(g: Gen) -> Letter {
        Letter::new(g, Sign::Neg)
    }

    pub fn gen(self) -> Gen {
        Gen(self.0 >> 1)
    }

    pub fn sign(self) -> Sign {
        if self.0 & 1 == 0 {
            Sign::Pos
        } else {
            Sign::Neg
        }
    }

    pub fn is_positive(self) -> bool {
        self.0 & 1 == 0
    }

    pub fn inverse(self) -> Letter {
        Letter(self.0 ^ 1)
    }

    /// The same letter with its generator replaced through `map`.
    pub fn relabel(self, map: impl Fn(Gen) -> Gen) -> Letter {
        Letter::new(map(self.gen()), self.sign())
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.gen().0, if self.is_positive() { "" } else { "'" })
    }
}

/// A word in the generators and their inverses.
///
/// `Ord` is shortlex: shorter words first, then lexicographic by letter.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct SignedWord(Vec<Letter>);

impl Ord for SignedWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for SignedWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for SignedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl From<Vec<Letter>> for SignedWord {
    fn from(v: Vec<Letter>) -> Self {
        SignedWord(v)
    }
}

impl FromIterator<Letter> for SignedWord {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        SignedWord(iter.into_iter().collect())
    }
}

/// A maximal run of one generator with a nonzero exponent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Syllable {
    pub gen: Gen,
    pub exp: i32,
}

/// Splitting of a word into maximal single-sign blocks.
///
/// Blocks alternate in sign and concatenate to the source word; the block
/// count is the monoidal length of the word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignBlockDecomposition {
    pub blocks: Vec<SignedWord>,
}

impl SignBlockDecomposition {
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn max_block(&self) -> usize {
        self.blocks.iter().map(SignedWord::len).max().unwrap_or(0)
    }
}

impl SignedWord {
    pub fn empty() -> Self {
        SignedWord(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, l: Letter) {
        self.0.push(l);
    }

    pub fn last(&self) -> Option<Letter> {
        self.0.last().copied()
    }

    pub fn first(&self) -> Option<Letter> {
        self.0.first().copied()
    }

    /// The positive word spelling `gens` in order.
    pub fn positive(gens: &[Gen]) -> Self {
        gens.iter().map(|&g| Letter::pos(g)).collect()
    }

    pub fn concat(&self, other: &SignedWord) -> SignedWord {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        SignedWord(v)
    }

    /// `self^k` for `k >= 0`.
    pub fn pow(&self, k: usize) -> SignedWord {
        SignedWord(self.0.repeat(k))
    }

    pub fn inverse(&self) -> SignedWord {
        self.0.iter().rev().map(|l| l.inverse()).collect()
    }

    pub fn relabel(&self, map: impl Fn(Gen) -> Gen) -> SignedWord {
        self.0.iter().map(|l| l.relabel(&map)).collect()
    }

    pub fn is_freely_reduced(&self) -> bool {
        self.0.windows(2).all(|w| w[0] != w[1].inverse())
    }

    pub fn free_reduce(&self) -> SignedWord {
        let mut out: Vec<Letter> = Vec::with_capacity(self.len());
        for &l in &self.0 {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        SignedWord(out)
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|l| l.is_positive())
    }

    pub fn is_negative(&self) -> bool {
        self.0.iter().all(|l| !l.is_positive())
    }

    /// Generators occurring in the word.
    pub fn support(&self) -> GenSet {
        GenSet::from_gens(self.0.iter().map(|l| l.gen()))
    }

    /// Underlying generators of a positive word; `None` if any letter is inverted.
    pub fn as_positive(&self) -> Option<Vec<Gen>> {
        self.0.iter().map(|l| l.is_positive().then(|| l.gen())).collect()
    }

    pub fn sign_blocks(&self) -> SignBlockDecomposition {
        let blocks =
            self.0.chunk_by(|a, b| a.is_positive() == b.is_positive()).map(|c| SignedWord(c.to_vec())).collect();
        SignBlockDecomposition { blocks }
    }

    /// Number of sign blocks of the free reduction.
    pub fn monoidal_length(&self) -> usize {
        self.free_reduce().sign_blocks().len()
    }

    /// Syllable decomposition of a freely reduced word.
    pub fn syllables(&self) -> Result<Vec<Syllable>> {
        if !self.is_freely_reduced() {
            return Err(Error::NotFreelyReduced);
        }
        Ok(self
            .0
            .chunk_by(|a, b| a.gen() == b.gen())
            .map(|c| Syllable {
                gen: c[0].gen(),
                exp: if c[0].is_positive() { c.len() as i32 } else { -(c.len() as i32) },
            })
            .collect())
    }

    /// Longest suffix all of whose letters have sign `sign`.
    ///
    /// Fails on the empty word. The suffix is empty when the last letter has
    /// the other sign.
    pub fn longest_signed_suffix(&self, sign: Sign) -> Result<SignedWord> {
        if self.is_empty() {
            return Err(Error::EmptyWord);
        }
        let k = self.0.iter().rev().take_while(|l| l.sign() == sign).count();
        Ok(SignedWord(self.0[self.len() - k..].to_vec()))
    }

    /// Parses whitespace-separated generator names, each optionally followed
    /// by `^-1` or `'`. `ε`, `1` or an empty string denote the empty word.
    pub fn parse(graph: &DefiningGraph, text: &str) -> Result<SignedWord> {
        let mut out = Vec::new();
        for tok in text.split_whitespace() {
            if tok == "ε" || tok == "1" {
                continue;
            }
            let (name, sign) = if let Some(n) = tok.strip_suffix("^-1") {
                (n, Sign::Neg)
            } else if let Some(n) = tok.strip_suffix('\'') {
                (n, Sign::Neg)
            } else if let Some(n) = tok.strip_suffix("^1") {
                (n, Sign::Pos)
            } else {
                (tok, Sign::Pos)
            };
            let g = graph.gen_by_name(name).ok_or_else(|| Error::UnknownGenerator(name.to_owned()))?;
            out.push(Letter::new(g, sign));
        }
        Ok(SignedWord(out))
    }

    /// Text form with names from `graph`, inverses marked `'`; `ε` when empty.
    pub fn to_text(&self, graph: &DefiningGraph) -> String {
        if self.is_empty() {
            return "ε".to_owned();
        }
        self.0
            .iter()
            .map(|l| {
                let n = graph.name(l.gen());
                if l.is_positive() {
                    n.to_owned()
                } else {
                    format!("{n}'")
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl Serialize for SignedWord {
    /// Serialized as packed letter codes; reports use [`SignedWord::to_text`].
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.iter().map(|l| l.0).collect::<Vec<u8>>().serialize(s)
    }
}

pub fn free_reduce(w: &SignedWord) -> SignedWord {
    w.free_reduce()
}

pub fn monoidal_length(w: &SignedWord) -> usize {
    w.monoidal_length()
}

pub fn sign_blocks(w: &SignedWord) -> SignBlockDecomposition {
    w.sign_blocks()
}

pub fn syllables(w: &SignedWord) -> Result<Vec<Syllable>> {
    w.syllables()
}

pub fn longest_signed_suffix(w: &SignedWord, sign: Sign) -> Result<SignedWord> {
    w.longest_signed_suffix(sign)
}

pub(crate) fn is_reduced(w: &[Letter]) -> bool {
    w.windows(2).all(|p| p[0] != p[1].inverse())
}

/// The letters `a, a', b, b', ...` of the generators in `s`, in letter order.
pub fn alphabet(s: GenSet) -> Vec<Letter> {
    s.iter().flat_map(|g| [Letter::pos(g), Letter::neg(g)]).collect()
}

/// All freely reduced words over the letters of `s` of length at most
/// `max_len`, in shortlex order.
pub fn reduced_words(s: GenSet, max_len: usize) -> Vec<SignedWord> {
    let alpha = alphabet(s);
    let mut out = vec![SignedWord::empty()];
    let mut layer = vec![SignedWord::empty()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(layer.len() * alpha.len());
        for w in &layer {
            for &l in &alpha {
                if w.last() != Some(l.inverse()) {
                    let mut v = w.clone();
                    v.push(l);
                    next.push(v);
                }
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn graph() -> DefiningGraph {
        DefiningGraph::parse("a b c; a b 3; b c 3; a c 3").unwrap()
    }

    fn w(text: &str) -> SignedWord {
        SignedWord::parse(&graph(), text).unwrap()
    }

    #[test]
    fn parse_and_print() {
        let g = graph();
        let x = w("a b c' a^-1");
        assert_eq!(x.to_text(&g), "a b c' a'");
        assert_eq!(SignedWord::parse(&g, "ε").unwrap(), SignedWord::empty());
        assert_eq!(SignedWord::empty().to_text(&g), "ε");
        assert!(SignedWord::parse(&g, "a d").is_err());
    }

    #[test]
    fn reduction_and_blocks() {
        assert_eq!(w("a b b' c").free_reduce(), w("a c"));
        assert_eq!(w("a b c' a'").monoidal_length(), 2);
        assert_eq!(w("a b b' a").monoidal_length(), 1);
        assert_eq!(w("").monoidal_length(), 0);
        let s = w("a a b' a").syllables().unwrap();
        assert_eq!(s.iter().map(|s| s.exp).collect::<Vec<_>>(), vec![2, -1, 1]);
        assert!(w("a a'").syllables().is_err());
    }

    #[test]
    fn signed_suffix() {
        assert_eq!(w("c' a b").longest_signed_suffix(Sign::Pos).unwrap(), w("a b"));
        assert_eq!(w("c' a b").longest_signed_suffix(Sign::Neg).unwrap(), w(""));
        assert_eq!(SignedWord::empty().longest_signed_suffix(Sign::Pos), Err(Error::EmptyWord));
    }

    #[test]
    fn reduced_word_counts() {
        let all = reduced_words(GenSet(0b11), 3);
        assert_eq!(all.len(), 1 + 4 + 12 + 36);
        assert!(all.windows(2).all(|p| p[0] < p[1]));
    }

    fn arb_word() -> impl Strategy<Value = SignedWord> {
        proptest::collection::vec(0u8..6, 0..12).prop_map(|v| v.into_iter().map(Letter).collect())
    }

    proptest! {
        #[test]
        fn free_reduce_is_idempotent(x in arb_word()) {
            let r = x.free_reduce();
            prop_assert!(r.is_freely_reduced());
            prop_assert_eq!(r.free_reduce(), r.clone());
            prop_assert_eq!(x.concat(&x.inverse()).free_reduce(), SignedWord::empty());
        }

        #[test]
        fn blocks_concatenate_and_alternate(x in arb_word()) {
            let d = x.sign_blocks();
            let joined = d.blocks.iter().fold(SignedWord::empty(), |acc, b| acc.concat(b));
            prop_assert_eq!(joined, x.clone());
            for pair in d.blocks.windows(2) {
                prop_assert_ne!(pair[0].is_positive(), pair[1].is_positive());
            }
        }

        #[test]
        fn monoidal_length_subadditive(x in arb_word(), y in arb_word()) {
            prop_assert!(x.concat(&y).monoidal_length() <= x.monoidal_length() + y.monoidal_length());
            prop_assert_eq!(x.inverse().monoidal_length(), x.monoidal_length());
        }

        #[test]
        fn print_parse_round_trip(x in arb_word()) {
            let g = graph();
            prop_assert_eq!(SignedWord::parse(&g, &x.to_text(&g)).unwrap(), x);
        }
    }
}
