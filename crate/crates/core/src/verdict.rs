//! Results of bounded checks.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::group::Budget;

/// How far a positive result reaches.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Bound {
    /// Decided by an exact procedure.
    Exact,
    /// Holds within the search limits echoed alongside.
    Search,
    /// Holds for every instance up to this length or radius.
    Length(u64),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict<W> {
    HoldsUpTo(Bound),
    Counterexample(W),
    Inconclusive(String),
}

impl<W> Verdict<W> {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::HoldsUpTo(_))
    }

    pub fn counterexample(&self) -> Option<&W> {
        match self {
            Verdict::Counterexample(w) => Some(w),
            _ => None,
        }
    }

    pub fn is_inconclusive(&self) -> bool {
        matches!(self, Verdict::Inconclusive(_))
    }

    pub fn map<V>(self, f: impl FnOnce(W) -> V) -> Verdict<V> {
        match self {
            Verdict::HoldsUpTo(b) => Verdict::HoldsUpTo(b),
            Verdict::Counterexample(w) => Verdict::Counterexample(f(w)),
            Verdict::Inconclusive(r) => Verdict::Inconclusive(r),
        }
    }
}

/// Search limits in force for a result.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Bounds {
    pub engine: Budget,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, u64>,
}

impl Bounds {
    pub fn new(engine: &Budget) -> Self {
        Bounds { engine: engine.clone(), params: BTreeMap::new() }
    }

    pub fn with(mut self, key: &str, value: impl TryInto<u64>) -> Self {
        self.params.insert(key.to_owned(), value.try_into().unwrap_or(u64::MAX));
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundedVerdict<W> {
    pub verdict: Verdict<W>,
    pub bounds: Bounds,
}

impl<W> BoundedVerdict<W> {
    pub fn new(verdict: Verdict<W>, bounds: Bounds) -> Self {
        BoundedVerdict { verdict, bounds }
    }

    pub fn holds(&self) -> bool {
        self.verdict.holds()
    }

    pub fn counterexample(&self) -> Option<&W> {
        self.verdict.counterexample()
    }

    pub fn is_inconclusive(&self) -> bool {
        self.verdict.is_inconclusive()
    }
}
