//! Finite multisets with deterministic iteration order.

use std::collections::BTreeMap;
use std::fmt;

/// A finite multiset over an ordered element type, backed by a `BTreeMap`
/// so that iteration and comparison are deterministic.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Multiset<T: Ord> {
    counts: BTreeMap<T, u32>,
}

impl<T: Ord> Default for Multiset<T> {
    fn default() -> Self {
        Multiset::new()
    }
}

impl<T: Ord> Multiset<T> {
    pub fn new() -> Self {
        Multiset {
            counts: BTreeMap::new(),
        }
    }

    /// Cardinality: total number of elements counting multiplicity.
    pub fn len(&self) -> u32 {
        self.counts.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// Number of distinct elements (size of the support).
    pub fn distinct(&self) -> usize {
        self.counts.len()
    }

    pub fn count(&self, item: &T) -> u32 {
        self.counts.get(item).copied().unwrap_or(0)
    }

    pub fn contains(&self, item: &T) -> bool {
        self.counts.contains_key(item)
    }

    pub fn insert(&mut self, item: T) {
        self.insert_n(item, 1);
    }

    pub fn insert_n(&mut self, item: T, n: u32) {
        if n > 0 {
            *self.counts.entry(item).or_insert(0) += n;
        }
    }

    /// Removes up to `n` copies of `item`; returns how many were removed.
    pub fn remove_n(&mut self, item: &T, n: u32) -> u32 {
        match self.counts.get_mut(item) {
            None => 0,
            Some(c) => {
                let removed = n.min(*c);
                *c -= removed;
                if *c == 0 {
                    self.counts.remove(item);
                }
                removed
            }
        }
    }

    /// Multiset inclusion: `self(x) <= other(x)` for every `x`.
    pub fn subset_of(&self, other: &Self) -> bool {
        self.counts.iter().all(|(x, &n)| other.count(x) >= n)
    }

    /// Iterate over `(element, multiplicity)` pairs in element order.
    pub fn iter(&self) -> impl Iterator<Item = (&T, u32)> {
        self.counts.iter().map(|(t, &n)| (t, n))
    }

    /// Iterate over distinct elements in order.
    pub fn support(&self) -> impl Iterator<Item = &T> {
        self.counts.keys()
    }

    /// Iterate elements with multiplicity (each repeated `count` times).
    pub fn expand(&self) -> impl Iterator<Item = &T> {
        self.counts
            .iter()
            .flat_map(|(t, &n)| std::iter::repeat_n(t, n as usize))
    }
}

impl<T: Ord + Clone> Multiset<T> {
    /// Pointwise sum.
    pub fn sum(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (t, n) in other.iter() {
            out.insert_n(t.clone(), n);
        }
        out
    }

    /// Pointwise maximum (the join `⊔`).
    pub fn join(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (t, n) in other.iter() {
            let have = out.count(t);
            if n > have {
                out.insert_n(t.clone(), n - have);
            }
        }
        out
    }

    /// Pointwise difference; `None` unless `other ⊆ self`.
    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        if !other.subset_of(self) {
            return None;
        }
        let mut out = self.clone();
        for (t, n) in other.iter() {
            out.remove_n(t, n);
        }
        Some(out)
    }

    /// Image under a mapping; multiplicities of collapsing elements add up.
    pub fn map<U: Ord, F: FnMut(&T) -> U>(&self, mut f: F) -> Multiset<U> {
        let mut out = Multiset::new();
        for (t, n) in self.iter() {
            out.insert_n(f(t), n);
        }
        out
    }
}

impl<T: Ord> FromIterator<T> for Multiset<T> {
    fn from_iter<I: IntoIterator<Item = T>>(iter: I) -> Self {
        let mut out = Multiset::new();
        for t in iter {
            out.insert(t);
        }
        out
    }
}

impl<T: Ord + fmt::Debug> fmt::Debug for Multiset<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.counts.iter()).finish()
    }
}
