//! Shared generators and independent oracles for the integration suites.
//!
//! Everything here stays independent of the decision procedures it checks:
//! equivalences are decided by brute-force search over renamings, source
//! nets are explored with their own textbook semantics, and termination of
//! reset nets is decided directly on count vectors.

#![allow(dead_code)]

use nupn::reduce::{InhibitorNet, ResetNet};
use nupn::{ArcLabel, Marking, NameId, NuNet, Place, Variable};
use std::collections::{BTreeMap, BTreeSet, VecDeque};

/// Splittable 64-bit generator; parameters pinned so every run sees the
/// same sequence.
pub struct Rng(u64);

impl Rng {
    pub fn new(seed: u64) -> Rng {
        Rng(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }

    pub fn pick(&mut self, n: usize) -> usize {
        assert!(n > 0);
        (self.next_u64() % n as u64) as usize
    }

    pub fn chance(&mut self, percent: u64) -> bool {
        self.next_u64() % 100 < percent
    }
}

/// A random marking over `places` places using name ids `1..=max_names`
/// with per-entry counts up to `max_count`.
pub fn random_marking(rng: &mut Rng, places: usize, max_names: u64, max_count: u32) -> Marking {
    let mut m = Marking::new(places);
    for p in 0..places {
        for name in 1..=max_names {
            if rng.chance(40) {
                let count = rng.pick(max_count as usize) as u32 + 1;
                m.add(Place(p), NameId(name), count);
            }
        }
    }
    m
}

/// A random bijective renaming of the names of `m` into a shuffled window.
pub fn random_bijection(rng: &mut Rng, m: &Marking) -> BTreeMap<NameId, NameId> {
    let ids: Vec<NameId> = m.ids().into_iter().collect();
    let offset = rng.pick(10) as u64 + 1;
    let mut targets: Vec<NameId> = (0..ids.len() as u64).map(|k| NameId(k + offset)).collect();
    // shuffle
    for i in (1..targets.len()).rev() {
        let j = rng.pick(i + 1);
        targets.swap(i, j);
    }
    ids.into_iter().zip(targets).collect()
}

fn injections_rec(
    from: &[NameId],
    to: &[NameId],
    used: &mut Vec<bool>,
    current: &mut Vec<(NameId, NameId)>,
    out: &mut Vec<BTreeMap<NameId, NameId>>,
) {
    if current.len() == from.len() {
        out.push(current.iter().copied().collect());
        return;
    }
    let i = current.len();
    for (j, &t) in to.iter().enumerate() {
        if used[j] {
            continue;
        }
        used[j] = true;
        current.push((from[i], t));
        injections_rec(from, to, used, current, out);
        current.pop();
        used[j] = false;
    }
}

/// All injective maps from `from` into `to`.
pub fn injections(from: &[NameId], to: &[NameId]) -> Vec<BTreeMap<NameId, NameId>> {
    if from.len() > to.len() {
        return Vec::new();
    }
    let mut out = Vec::new();
    injections_rec(from, to, &mut vec![false; to.len()], &mut Vec::new(), &mut out);
    out
}

/// Renaming-equivalence by brute force: some bijection between the name
/// sets maps one marking onto the other exactly.
pub fn brute_alpha_equiv(m1: &Marking, m2: &Marking) -> bool {
    let ids1: Vec<NameId> = m1.ids().into_iter().collect();
    let ids2: Vec<NameId> = m2.ids().into_iter().collect();
    if ids1.len() != ids2.len() {
        return false;
    }
    injections(&ids1, &ids2)
        .into_iter()
        .any(|iota| &m1.rename(&iota) == m2)
}

/// Embedding by brute force: some injection of the name sets makes the
/// first marking pointwise included in the second.
pub fn brute_leq_alpha(m1: &Marking, m2: &Marking) -> bool {
    let ids1: Vec<NameId> = m1.ids().into_iter().collect();
    let ids2: Vec<NameId> = m2.ids().into_iter().collect();
    injections(&ids1, &ids2)
        .into_iter()
        .any(|iota| m1.rename(&iota).le(m2))
}

/// All markings over `places` places with names `1..=max_names` and at most
/// `max_total` tokens.
pub fn enumerate_markings(places: usize, max_names: u64, max_total: u32) -> Vec<Marking> {
    let cells: Vec<(usize, u64)> = (0..places)
        .flat_map(|p| (1..=max_names).map(move |n| (p, n)))
        .collect();
    let mut out = Vec::new();
    let mut current = Marking::new(places);
    fn rec(
        cells: &[(usize, u64)],
        idx: usize,
        budget: u32,
        current: &mut Marking,
        out: &mut Vec<Marking>,
    ) {
        if idx == cells.len() {
            out.push(current.clone());
            return;
        }
        let (p, n) = cells[idx];
        for count in 0..=budget {
            if count > 0 {
                current.add(Place(p), NameId(n), count);
            }
            rec(cells, idx + 1, budget - count, current, out);
            if count > 0 {
                current.place_mut(Place(p)).remove_n(&NameId(n), count);
            }
        }
    }
    rec(&cells, 0, max_total, &mut current, &mut out);
    out
}

/// A random well-formed net: up to 3 places and 2 transitions, at most two
/// input and two output tokens per transition, over two plain variables and
/// one fresh variable.
pub fn random_small_net(rng: &mut Rng) -> NuNet {
    let mut net = NuNet::new();
    let nplaces = rng.pick(3) + 1;
    let places: Vec<Place> = (0..nplaces)
        .map(|i| net.add_place(format!("p{i}")))
        .collect();
    let x = Variable::plain(0);
    let y = Variable::plain(1);
    let nu = Variable::fresh(0);
    let ntrans = rng.pick(2) + 1;
    for ti in 0..ntrans {
        let t = net.add_transition(format!("t{ti}"));
        let mut pre_labels = vec![ArcLabel::new(); nplaces];
        let mut pre_vars: Vec<Variable> = Vec::new();
        for _ in 0..rng.pick(3) {
            let p = rng.pick(nplaces);
            let v = [x, y][rng.pick(2)];
            pre_labels[p].insert(v);
            if !pre_vars.contains(&v) {
                pre_vars.push(v);
            }
        }
        let mut post_labels = vec![ArcLabel::new(); nplaces];
        let mut candidates = pre_vars.clone();
        candidates.push(nu);
        for _ in 0..rng.pick(3) {
            let p = rng.pick(nplaces);
            let v = candidates[rng.pick(candidates.len())];
            post_labels[p].insert(v);
        }
        for (p, label) in pre_labels.into_iter().enumerate() {
            if !label.is_empty() {
                net.set_pre(places[p], t, label);
            }
        }
        for (p, label) in post_labels.into_iter().enumerate() {
            if !label.is_empty() {
                net.set_post(t, places[p], label);
            }
        }
    }
    debug_assert!(net.validate().is_empty());
    net
}

/// Largest instantiated output effect over the transitions of `net`.
pub fn max_post_effect(net: &NuNet) -> u32 {
    net.transitions()
        .map(|t| net.places().map(|p| net.post_label(t, p).len()).sum())
        .max()
        .unwrap_or(0)
}

/// One-step cover oracle: does `m` have a successor dominating `query` up
/// to renaming?
pub fn has_covering_successor(net: &NuNet, m: &Marking, query: &Marking) -> bool {
    let q = nupn::canonicalize(query);
    net.successors(m)
        .iter()
        .any(|c| nupn::multiset_embed(q.profiles(), c.profiles()).is_some())
}

/// Exhaustive reachability set of a reset net; `None` when the cap is hit
/// (the net is then treated as too large or unbounded).
pub fn reset_reach(net: &ResetNet, m0: &[u32], cap: usize) -> Option<BTreeSet<Vec<u32>>> {
    let mut seen: BTreeSet<Vec<u32>> = BTreeSet::new();
    seen.insert(m0.to_vec());
    let mut queue: VecDeque<Vec<u32>> = VecDeque::new();
    queue.push_back(m0.to_vec());
    while let Some(m) = queue.pop_front() {
        for t in 0..net.num_transitions() {
            if let Some(next) = net.fire(&m, t) {
                if seen.insert(next.clone()) {
                    if seen.len() > cap {
                        return None;
                    }
                    queue.push_back(next);
                }
            }
        }
    }
    Some(seen)
}

/// Exhaustive reachability set of an inhibitor net, same contract.
pub fn inhibitor_reach(net: &InhibitorNet, m0: &[u32], cap: usize) -> Option<BTreeSet<Vec<u32>>> {
    let mut seen: BTreeSet<Vec<u32>> = BTreeSet::new();
    seen.insert(m0.to_vec());
    let mut queue: VecDeque<Vec<u32>> = VecDeque::new();
    queue.push_back(m0.to_vec());
    while let Some(m) = queue.pop_front() {
        for t in 0..net.num_transitions() {
            if let Some(next) = net.fire(&m, t) {
                if seen.insert(next.clone()) {
                    if seen.len() > cap {
                        return None;
                    }
                    queue.push_back(next);
                }
            }
        }
    }
    Some(seen)
}

/// Termination of a reset net, decided directly on count vectors with the
/// standard reduced tree: a branch whose node dominates an ancestor
/// pointwise can be pumped forever.
pub fn reset_terminates(net: &ResetNet, m0: &[u32]) -> bool {
    struct Node {
        m: Vec<u32>,
        parent: Option<usize>,
    }
    let mut nodes = vec![Node {
        m: m0.to_vec(),
        parent: None,
    }];
    let mut queue: VecDeque<usize> = VecDeque::new();
    queue.push_back(0);
    while let Some(i) = queue.pop_front() {
        let mut cursor = nodes[i].parent;
        let mut dominated = false;
        while let Some(j) = cursor {
            if nodes[j].m.iter().zip(&nodes[i].m).all(|(a, b)| a <= b) {
                dominated = true;
                break;
            }
            cursor = nodes[j].parent;
        }
        if dominated {
            return false;
        }
        for t in 0..net.num_transitions() {
            if let Some(next) = net.fire(&nodes[i].m, t) {
                nodes.push(Node {
                    m: next,
                    parent: Some(i),
                });
                queue.push_back(nodes.len() - 1);
            }
        }
    }
    true
}

/// Coverability of `target` in a reset net with a finite reachability set.
pub fn reset_coverable(reach: &BTreeSet<Vec<u32>>, target: &[u32]) -> bool {
    reach
        .iter()
        .any(|m| m.iter().zip(target).all(|(have, want)| have >= want))
}

/// Hand-built reset-net corpus: at most four places, mixing terminating
/// with non-terminating and bounded with unbounded behavior.
pub fn reset_corpus() -> Vec<(ResetNet, Vec<u32>)> {
    let mut out = Vec::new();

    // p feeds q, r cleared on the way
    let mut n = ResetNet::new();
    let (p, r, _q) = (n.add_place("p"), n.add_place("r"), n.add_place("q"));
    let t = n.add_transition("t");
    n.add_pre(p, t);
    n.add_post(t, 2).unwrap();
    n.add_reset(r, t).unwrap();
    out.push((n.clone(), vec![2, 2, 0]));
    out.push((n, vec![3, 0, 2]));

    // two-step chain
    let mut n = ResetNet::new();
    let (p, q, r) = (n.add_place("p"), n.add_place("q"), n.add_place("r"));
    let t1 = n.add_transition("t1");
    let t2 = n.add_transition("t2");
    n.add_pre(p, t1);
    n.add_post(t1, q).unwrap();
    n.add_pre(q, t2);
    n.add_post(t2, r).unwrap();
    out.push((n, vec![2, 0, 0]));

    // chain whose second step clears the first place
    let mut n = ResetNet::new();
    let (p, q, r) = (n.add_place("p"), n.add_place("q"), n.add_place("r"));
    let t1 = n.add_transition("t1");
    let t2 = n.add_transition("t2");
    n.add_pre(p, t1);
    n.add_post(t1, q).unwrap();
    n.add_pre(q, t2);
    n.add_post(t2, r).unwrap();
    n.add_reset(p, t2).unwrap();
    out.push((n, vec![2, 1, 0]));

    // two-place cycle: runs forever, stays bounded
    let mut n = ResetNet::new();
    let (p, q) = (n.add_place("p"), n.add_place("q"));
    let t1 = n.add_transition("t1");
    let t2 = n.add_transition("t2");
    n.add_pre(p, t1);
    n.add_post(t1, q).unwrap();
    n.add_pre(q, t2);
    n.add_post(t2, p).unwrap();
    out.push((n, vec![1, 0]));

    // cycle that clears a side place on every round
    let mut n = ResetNet::new();
    let (p, q, r) = (n.add_place("p"), n.add_place("q"), n.add_place("r"));
    let t1 = n.add_transition("t1");
    let t2 = n.add_transition("t2");
    n.add_pre(p, t1);
    n.add_post(t1, q).unwrap();
    n.add_reset(r, t1).unwrap();
    n.add_pre(q, t2);
    n.add_post(t2, p).unwrap();
    out.push((n, vec![1, 0, 3]));

    // pure producer: unbounded
    let mut n = ResetNet::new();
    let p = n.add_place("p");
    let t = n.add_transition("t");
    n.add_post(t, p).unwrap();
    out.push((n, vec![0]));

    // producer plus sink
    let mut n = ResetNet::new();
    let p = n.add_place("p");
    let t1 = n.add_transition("t1");
    let t2 = n.add_transition("t2");
    n.add_post(t1, p).unwrap();
    n.add_pre(p, t2);
    out.push((n, vec![0]));

    // producer with a one-shot clear
    let mut n = ResetNet::new();
    let (p, q) = (n.add_place("p"), n.add_place("q"));
    let t1 = n.add_transition("t1");
    let t2 = n.add_transition("t2");
    n.add_post(t1, p).unwrap();
    n.add_pre(q, t2);
    n.add_reset(p, t2).unwrap();
    out.push((n, vec![0, 1]));

    // self-loop: constant marking, runs forever
    let mut n = ResetNet::new();
    let p = n.add_place("p");
    let t = n.add_transition("t");
    n.add_pre(p, t);
    n.add_post(t, p).unwrap();
    out.push((n, vec![1]));

    // self-loop that also pumps a second place
    let mut n = ResetNet::new();
    let (p, q) = (n.add_place("p"), n.add_place("q"));
    let t = n.add_transition("t");
    n.add_pre(p, t);
    n.add_post(t, p).unwrap();
    n.add_post(t, q).unwrap();
    out.push((n, vec![1, 0]));

    // clearing consumes from the cycle: terminates
    let mut n = ResetNet::new();
    let (p, q, r) = (n.add_place("p"), n.add_place("q"), n.add_place("r"));
    let t1 = n.add_transition("t1");
    let t2 = n.add_transition("t2");
    n.add_pre(p, t1);
    n.add_post(t1, q).unwrap();
    n.add_reset(r, t1).unwrap();
    n.add_pre(q, t2);
    n.add_post(t2, r).unwrap();
    n.add_reset(p, t2).unwrap();
    out.push((n, vec![2, 1, 1]));

    // four places, forked consumption
    let mut n = ResetNet::new();
    let (p, q, r, s) = (
        n.add_place("p"),
        n.add_place("q"),
        n.add_place("r"),
        n.add_place("s"),
    );
    let t1 = n.add_transition("t1");
    let t2 = n.add_transition("t2");
    let t3 = n.add_transition("t3");
    n.add_pre(p, t1);
    n.add_post(t1, q).unwrap();
    n.add_pre(p, t2);
    n.add_post(t2, r).unwrap();
    n.add_pre(q, t3);
    n.add_post(t3, s).unwrap();
    n.add_reset(r, t3).unwrap();
    out.push((n, vec![3, 0, 0, 0]));

    // cycle plus an escape that clears the cycle
    let mut n = ResetNet::new();
    let (p, q, r) = (n.add_place("p"), n.add_place("q"), n.add_place("r"));
    let t1 = n.add_transition("t1");
    let t2 = n.add_transition("t2");
    let t3 = n.add_transition("t3");
    n.add_pre(p, t1);
    n.add_post(t1, q).unwrap();
    n.add_pre(q, t2);
    n.add_post(t2, p).unwrap();
    n.add_pre(p, t3);
    n.add_post(t3, r).unwrap();
    n.add_reset(q, t3).unwrap();
    out.push((n, vec![2, 0, 0]));

    // fuel consumption only
    let mut n = ResetNet::new();
    let (f, p) = (n.add_place("f"), n.add_place("p"));
    let t = n.add_transition("t");
    n.add_pre(f, t);
    n.add_post(t, p).unwrap();
    out.push((n, vec![2, 0]));

    // fuel with double reset
    let mut n = ResetNet::new();
    let (f, p, q) = (n.add_place("f"), n.add_place("p"), n.add_place("q"));
    let t1 = n.add_transition("t1");
    let t2 = n.add_transition("t2");
    n.add_pre(f, t1);
    n.add_post(t1, p).unwrap();
    n.add_pre(f, t2);
    n.add_post(t2, q).unwrap();
    n.add_reset(p, t2).unwrap();
    out.push((n, vec![3, 1, 0]));

    assert!(out.len() >= 15);
    out
}

/// Hand-built inhibitor-net corpus. Every instance is bounded even when the
/// inhibitor arcs are ignored (each transition consumes from a place that
/// is never replenished), so the translations are bounded too.
pub fn inhibitor_corpus() -> Vec<(InhibitorNet, Vec<u32>)> {
    let mut out = Vec::new();

    // p feeds q while r is empty; nothing empties r
    let mut n = InhibitorNet::new();
    let (p, r, q) = (n.add_place("p"), n.add_place("r"), n.add_place("q"));
    let t = n.add_transition("t");
    n.add_pre(p, t);
    n.add_post(t, q);
    n.add_inhibitor(r, t);
    out.push((n.clone(), vec![2, 2, 0]));
    out.push((n, vec![2, 0, 0]));

    // drain the guard first
    let mut n = InhibitorNet::new();
    let (p, r, q) = (n.add_place("p"), n.add_place("r"), n.add_place("q"));
    let t1 = n.add_transition("t1");
    let t2 = n.add_transition("t2");
    n.add_pre(r, t1);
    n.add_pre(p, t2);
    n.add_post(t2, q);
    n.add_inhibitor(r, t2);
    out.push((n, vec![2, 2, 0]));

    // mutually exclusive branches
    let mut n = InhibitorNet::new();
    let (p, q, s) = (n.add_place("p"), n.add_place("q"), n.add_place("s"));
    let t1 = n.add_transition("t1");
    let t2 = n.add_transition("t2");
    n.add_pre(p, t1);
    n.add_post(t1, q);
    n.add_inhibitor(s, t1);
    n.add_pre(p, t2);
    n.add_post(t2, s);
    n.add_inhibitor(q, t2);
    out.push((n, vec![2, 0, 0]));

    // staged chain: the second stage opens once the first place is empty
    let mut n = InhibitorNet::new();
    let (p, q, r) = (n.add_place("p"), n.add_place("q"), n.add_place("r"));
    let t1 = n.add_transition("t1");
    let t2 = n.add_transition("t2");
    n.add_pre(p, t1);
    n.add_post(t1, q);
    n.add_pre(q, t2);
    n.add_post(t2, r);
    n.add_inhibitor(p, t2);
    out.push((n.clone(), vec![2, 0, 0]));
    out.push((n, vec![3, 1, 0]));

    // double guard: blocked for good when s is marked
    let mut n = InhibitorNet::new();
    let (p, r, s, q) = (
        n.add_place("p"),
        n.add_place("r"),
        n.add_place("s"),
        n.add_place("q"),
    );
    let t = n.add_transition("t");
    n.add_pre(p, t);
    n.add_post(t, q);
    n.add_inhibitor(r, t);
    n.add_inhibitor(s, t);
    out.push((n.clone(), vec![1, 0, 1, 0]));
    out.push((n, vec![2, 0, 0, 0]));

    // alternation: t1 refills q only when empty, t2 drains it
    let mut n = InhibitorNet::new();
    let (p, q) = (n.add_place("p"), n.add_place("q"));
    let t1 = n.add_transition("t1");
    let t2 = n.add_transition("t2");
    n.add_pre(p, t1);
    n.add_post(t1, q);
    n.add_inhibitor(q, t1);
    n.add_pre(q, t2);
    out.push((n, vec![3, 0]));

    // guarded lane next to an independent drain
    let mut n = InhibitorNet::new();
    let (a, b, c, d) = (
        n.add_place("a"),
        n.add_place("b"),
        n.add_place("c"),
        n.add_place("d"),
    );
    let t1 = n.add_transition("t1");
    let t2 = n.add_transition("t2");
    n.add_pre(a, t1);
    n.add_post(t1, b);
    n.add_inhibitor(c, t1);
    n.add_pre(c, t2);
    n.add_post(t2, d);
    out.push((n, vec![1, 0, 1, 0]));

    assert!(out.len() >= 10);
    out
}

/// Bounded P/T instances for the backward/forward comparison corpus.
pub fn bounded_pt_corpus() -> Vec<(nupn::PtNet, Vec<u32>)> {
    let mut out = Vec::new();

    // two-place cycle
    let mut n = nupn::PtNet::new();
    let (p, q) = (n.add_place("p"), n.add_place("q"));
    let t1 = n.add_transition("t1");
    let t2 = n.add_transition("t2");
    n.set_pre(p, t1, 1);
    n.set_post(t1, q, 1);
    n.set_pre(q, t2, 1);
    n.set_post(t2, p, 1);
    out.push((n, vec![1, 0]));

    // three-place ring with two tokens
    let mut n = nupn::PtNet::new();
    let (p, q, r) = (n.add_place("p"), n.add_place("q"), n.add_place("r"));
    for (t, (a, b)) in [(p, q), (q, r), (r, p)].into_iter().enumerate() {
        let tr = n.add_transition(format!("t{t}"));
        n.set_pre(a, tr, 1);
        n.set_post(tr, b, 1);
    }
    out.push((n, vec![2, 0, 0]));

    // weighted consumer
    let mut n = nupn::PtNet::new();
    let (p, q) = (n.add_place("p"), n.add_place("q"));
    let t = n.add_transition("t");
    n.set_pre(p, t, 2);
    n.set_post(t, q, 1);
    out.push((n, vec![4, 0]));

    // plain chain
    let mut n = nupn::PtNet::new();
    let (p, q, r) = (n.add_place("p"), n.add_place("q"), n.add_place("r"));
    let t1 = n.add_transition("t1");
    let t2 = n.add_transition("t2");
    n.set_pre(p, t1, 1);
    n.set_post(t1, q, 1);
    n.set_pre(q, t2, 1);
    n.set_post(t2, r, 1);
    out.push((n, vec![2, 0, 0]));

    // fork and join
    let mut n = nupn::PtNet::new();
    let (p, q, r, s) = (
        n.add_place("p"),
        n.add_place("q"),
        n.add_place("r"),
        n.add_place("s"),
    );
    let t1 = n.add_transition("t1");
    let t2 = n.add_transition("t2");
    n.set_pre(p, t1, 1);
    n.set_post(t1, q, 1);
    n.set_post(t1, r, 1);
    n.set_pre(q, t2, 1);
    n.set_pre(r, t2, 1);
    n.set_post(t2, s, 1);
    out.push((n, vec![2, 0, 0, 0]));

    // shrinking ping-pong (weight two on the way back)
    let mut n = nupn::PtNet::new();
    let (p, q) = (n.add_place("p"), n.add_place("q"));
    let t1 = n.add_transition("t1");
    let t2 = n.add_transition("t2");
    n.set_pre(p, t1, 1);
    n.set_post(t1, q, 1);
    n.set_pre(q, t2, 2);
    n.set_post(t2, p, 1);
    out.push((n, vec![2, 0]));

    // self-loop with a drain
    let mut n = nupn::PtNet::new();
    let (p, q) = (n.add_place("p"), n.add_place("q"));
    let t1 = n.add_transition("t1");
    let t2 = n.add_transition("t2");
    n.set_pre(p, t1, 1);
    n.set_post(t1, p, 1);
    n.set_pre(p, t2, 1);
    n.set_post(t2, q, 1);
    out.push((n, vec![2, 0]));

    out
}

/// The two lane nets over four places, as library values.
pub fn lanes_net() -> (NuNet, Marking) {
    let mut net = NuNet::new();
    let p0 = net.add_place("p0");
    let _p1 = net.add_place("p1");
    let p2 = net.add_place("p2");
    let _p3 = net.add_place("p3");
    let t = net.add_transition("t");
    let x = Variable::plain(0);
    let y = Variable::plain(1);
    net.set_pre(p0, t, [x].into_iter().collect());
    net.set_pre(p2, t, [y].into_iter().collect());
    net.set_post(t, Place(1), [x].into_iter().collect());
    net.set_post(t, Place(3), [y].into_iter().collect());
    let mut m0 = Marking::for_net(&net);
    m0.add(p0, NameId(1), 1);
    m0.add(p2, NameId(2), 1);
    (net, m0)
}

pub fn lanes_eq_neq_net() -> (NuNet, Marking) {
    let mut net = NuNet::new();
    let p0 = net.add_place("p0");
    let p1 = net.add_place("p1");
    let p2 = net.add_place("p2");
    let p3 = net.add_place("p3");
    let teq = net.add_transition("teq");
    let tneq = net.add_transition("tneq");
    let x = Variable::plain(0);
    let y = Variable::plain(1);
    net.set_pre(p0, teq, [x].into_iter().collect());
    net.set_pre(p2, teq, [x].into_iter().collect());
    net.set_post(teq, p1, [x].into_iter().collect());
    net.set_post(teq, p3, [x].into_iter().collect());
    net.set_pre(p0, tneq, [x].into_iter().collect());
    net.set_pre(p2, tneq, [y].into_iter().collect());
    net.set_post(tneq, p1, [x].into_iter().collect());
    net.set_post(tneq, p3, [y].into_iter().collect());
    let mut m0 = Marking::for_net(&net);
    m0.add(p0, NameId(1), 1);
    m0.add(p2, NameId(2), 1);
    (net, m0)
}
