//! Renaming-invariant canonical forms and the embedding order on markings.
//!
//! A marking is represented up to renaming by the multiset of its name
//! profiles: for each name, the vector of per-place counts. Two markings are
//! renaming-equivalent iff their canonical forms are equal, and one embeds
//! into another (under some injective renaming) iff the profile multisets
//! embed, decided here by maximum bipartite matching.

use crate::net::{Marking, NameId};
use std::collections::BTreeMap;
use std::fmt::Write;

/// Per-place count vector of a single name (the name's profile).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct NameProfile(pub Vec<u32>);

impl NameProfile {
    /// Componentwise order.
    pub fn le(&self, other: &NameProfile) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }
}

/// The renaming-invariant normal form of a marking: the multiset of name
/// profiles, stored sorted in descending lexicographic order so the
/// representation is unique.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CanonicalMarking {
    profiles: Vec<NameProfile>,
}

impl CanonicalMarking {
    pub fn profiles(&self) -> &[NameProfile] {
        &self.profiles
    }

    /// Number of distinct names of any marking this form represents.
    pub fn width(&self) -> usize {
        self.profiles.len()
    }

    /// Largest per-place count of a single name.
    pub fn depth(&self) -> u32 {
        self.profiles
            .iter()
            .flat_map(|p| p.0.iter().copied())
            .max()
            .unwrap_or(0)
    }

    pub fn total(&self) -> u32 {
        self.profiles.iter().map(|p| p.total()).sum()
    }

    /// Embedding order: true iff `self` embeds into `other`.
    pub fn le(&self, other: &CanonicalMarking) -> bool {
        multiset_embed(&self.profiles, &other.profiles).is_some()
    }

    /// Strict embedding. On canonical forms mutual embedding implies
    /// equality, so this is `le` plus inequality.
    pub fn lt(&self, other: &CanonicalMarking) -> bool {
        self != other && self.le(other)
    }

    /// Deterministic textual rendering: profiles in stored order, each as
    /// the nonzero per-place counts in net place order.
    pub fn render(&self, place_names: &[String]) -> String {
        let mut out = String::from("{");
        for (i, profile) in self.profiles.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push('{');
            let mut first = true;
            for (p, &count) in profile.0.iter().enumerate() {
                if count > 0 {
                    if !first {
                        out.push(',');
                    }
                    write!(out, "{}:{}", place_names[p], count).unwrap();
                    first = false;
                }
            }
            out.push('}');
        }
        out.push('}');
        out
    }
}

/// The canonical form of a marking: one profile per name occurring in it.
pub fn canonicalize(m: &Marking) -> CanonicalMarking {
    let mut profiles: Vec<NameProfile> = m
        .ids()
        .into_iter()
        .map(|a| {
            NameProfile(
                (0..m.num_places())
                    .map(|p| m.place(crate::net::Place(p)).count(&a))
                    .collect(),
            )
        })
        .collect();
    profiles.sort_by(|x, y| y.cmp(x));
    CanonicalMarking { profiles }
}

/// Equality up to a bijective renaming of names.
pub fn alpha_equiv(m1: &Marking, m2: &Marking) -> bool {
    canonicalize(m1) == canonicalize(m2)
}

/// Decides multiset embedding: an injective index map `h` with
/// `a[i] ≤ b[h[i]]` componentwise for all `i`, if one exists.
///
/// Decided by maximum bipartite matching with augmenting paths over the
/// componentwise-compatibility graph.
pub fn multiset_embed(a: &[NameProfile], b: &[NameProfile]) -> Option<Vec<usize>> {
    if a.len() > b.len() {
        return None;
    }
    let adj: Vec<Vec<usize>> = a
        .iter()
        .map(|ai| {
            b.iter()
                .enumerate()
                .filter(|(_, bj)| ai.le(bj))
                .map(|(j, _)| j)
                .collect()
        })
        .collect();
    let mut matched_to: Vec<Option<usize>> = vec![None; b.len()];

    fn augment(
        i: usize,
        adj: &[Vec<usize>],
        seen: &mut [bool],
        matched_to: &mut [Option<usize>],
    ) -> bool {
        for &j in &adj[i] {
            if seen[j] {
                continue;
            }
            seen[j] = true;
            let free = match matched_to[j] {
                None => true,
                Some(prev) => augment(prev, adj, seen, matched_to),
            };
            if free {
                matched_to[j] = Some(i);
                return true;
            }
        }
        false
    }

    let mut seen = vec![false; b.len()];
    for i in 0..a.len() {
        seen.iter_mut().for_each(|s| *s = false);
        if !augment(i, &adj, &mut seen, &mut matched_to) {
            return None;
        }
    }
    let mut h = vec![usize::MAX; a.len()];
    for (j, m) in matched_to.iter().enumerate() {
        if let Some(i) = m {
            h[*i] = j;
        }
    }
    Some(h)
}

/// Profiles of a marking together with the names that produced them, sorted
/// the same way as in the canonical form (ties broken by name).
fn tagged_profiles(m: &Marking) -> Vec<(NameProfile, NameId)> {
    let mut v: Vec<(NameProfile, NameId)> = m
        .ids()
        .into_iter()
        .map(|a| {
            (
                NameProfile(
                    (0..m.num_places())
                        .map(|p| m.place(crate::net::Place(p)).count(&a))
                        .collect(),
                ),
                a,
            )
        })
        .collect();
    v.sort_by(|x, y| y.0.cmp(&x.0).then(x.1.cmp(&y.1)));
    v
}

/// Embedding up to renaming: an injective renaming `ι` of the names of `m1`
/// with `m1(p)(a) ≤ m2(p)(ι(a))` for all places and names, if one exists.
pub fn leq_alpha(m1: &Marking, m2: &Marking) -> Option<BTreeMap<NameId, NameId>> {
    let t1 = tagged_profiles(m1);
    let t2 = tagged_profiles(m2);
    let a: Vec<NameProfile> = t1.iter().map(|(p, _)| p.clone()).collect();
    let b: Vec<NameProfile> = t2.iter().map(|(p, _)| p.clone()).collect();
    let h = multiset_embed(&a, &b)?;
    let iota: BTreeMap<NameId, NameId> = h
        .iter()
        .enumerate()
        .map(|(i, &j)| (t1[i].1, t2[j].1))
        .collect();
    debug_assert!(iota.iter().all(|(&from, &to)| {
        (0..m1.num_places()).all(|p| {
            m1.place(crate::net::Place(p)).count(&from)
                <= m2.place(crate::net::Place(p)).count(&to)
        })
    }));
    Some(iota)
}

/// Reduces a set of canonical markings to the minimal ones: the result is an
/// antichain under embedding, every input element dominates some output
/// element, and the output is a subset of the input.
pub fn minor_set<I: IntoIterator<Item = CanonicalMarking>>(items: I) -> Vec<CanonicalMarking> {
    let mut v: Vec<CanonicalMarking> = items.into_iter().collect();
    v.sort();
    v.dedup();
    let mut out = Vec::new();
    for (i, c) in v.iter().enumerate() {
        let dominated = v
            .iter()
            .enumerate()
            .any(|(j, d)| j != i && d.total() <= c.total() && d.le(c));
        if !dominated {
            out.push(c.clone());
        }
    }
    out
}
