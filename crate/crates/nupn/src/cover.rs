//! Backward coverability: effective predecessor bases and saturation.
//!
//! For an upward-closed target, the one-step predecessors under a fixed
//! firing are again upward closed and their least element is computable:
//! join the target with the instantiated output effect, then invert the
//! firing equation. Saturating over a finite mode space per transition and
//! minimizing under the embedding order yields a finite basis whose growth
//! is bounded by the well-quasi-order, so the search reaches a fixpoint.

use crate::net::{Marking, Mode, NameId, NuNet, Transition, Variable};
use crate::order::{canonicalize, leq_alpha, minor_set, multiset_embed, CanonicalMarking};
use crate::Limits;
use std::collections::{BTreeMap, VecDeque};

/// A minimal one-step predecessor of the upward closure of a query marking.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PredBasisEntry {
    /// The predecessor marking.
    pub marking: Marking,
    /// The firing that steps from `marking` into the query's upward closure.
    pub via: (Transition, Mode),
    /// The least marking above the query reached by that firing.
    pub target_min: Marking,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CoverVerdict {
    Coverable,
    NotCoverable,
    ResourceExhausted,
}

/// Outcome of a coverability query.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CoverResult {
    pub verdict: CoverVerdict,
    /// A firing sequence from the initial marking to a covering marking;
    /// present exactly when the verdict is `Coverable`. Always replayed
    /// through the firing semantics before being returned.
    pub witness: Option<Vec<(Transition, Mode)>>,
    pub basis_size: usize,
    pub iterations: usize,
}

/// The instantiated output effect of a firing, as a marking.
fn instantiated_post(net: &NuNet, t: Transition, mode: &Mode) -> Marking {
    let mut m = Marking::new(net.num_places());
    for p in net.places() {
        *m.place_mut(p) = mode.instantiate(net.post_label(t, p));
    }
    m
}

/// The least marking above `m` that has a predecessor under `(t, mode)`:
/// the pointwise join of `m` with the instantiated output effect.
pub fn min_t_sigma(net: &NuNet, m: &Marking, t: Transition, mode: &Mode) -> Marking {
    m.join(&instantiated_post(net, t, mode))
}

/// The unique predecessor of `min_t_sigma(m, t, mode)` under `(t, mode)`,
/// or `None` when the firing cannot actually be enabled there because a
/// fresh-variable image would already occur in the predecessor.
pub fn pred_of_min(net: &NuNet, m: &Marking, t: Transition, mode: &Mode) -> Option<Marking> {
    let min = min_t_sigma(net, m, t, mode);
    let mut pred = Marking::new(net.num_places());
    for p in net.places() {
        let produced = mode.instantiate(net.post_label(t, p));
        let consumed = mode.instantiate(net.pre_label(p, t));
        let left = min
            .place(p)
            .checked_sub(&produced)
            .expect("join guarantees the output effect is included");
        *pred.place_mut(p) = left.sum(&consumed);
    }
    let ids = pred.ids();
    for v in net.vars_of(t) {
        if v.is_fresh() && ids.contains(&mode.get(v).expect("mode covers Var(t)")) {
            return None;
        }
    }
    debug_assert_eq!(net.fire(&pred, t, mode).as_ref(), Ok(&min));
    Some(pred)
}

/// Enumerates injective modes `Var(t) -> Id(m) ∪ O`, where `O` holds as many
/// spare names as `t` has variables, allocated above every id in `m`. Spare
/// names are interchangeable up to renaming, so the enumeration emits one
/// representative per pattern: spares are taken in ascending order of first
/// use.
fn for_each_mode<F: FnMut(&Mode)>(vars: &[Variable], ids: &[NameId], pool: &[NameId], f: &mut F) {
    fn rec<F: FnMut(&Mode)>(
        vars: &[Variable],
        ids: &[NameId],
        pool: &[NameId],
        chosen: &mut Vec<NameId>,
        pool_used: usize,
        f: &mut F,
    ) {
        let k = chosen.len();
        if k == vars.len() {
            let mode = Mode::new(vars.iter().copied().zip(chosen.iter().copied()))
                .expect("distinct names chosen");
            f(&mode);
            return;
        }
        for &name in ids {
            if chosen.contains(&name) {
                continue;
            }
            chosen.push(name);
            rec(vars, ids, pool, chosen, pool_used, f);
            chosen.pop();
        }
        if pool_used < pool.len() {
            chosen.push(pool[pool_used]);
            rec(vars, ids, pool, chosen, pool_used + 1, f);
            chosen.pop();
        }
    }
    let mut chosen = Vec::with_capacity(vars.len());
    rec(vars, ids, pool, &mut chosen, 0, f);
}

/// The minimized basis of one-step predecessors of the upward closure of
/// `m`: the upward closure of the result equals, up to renaming, the set of
/// markings with a one-step successor above `m`.
pub fn pred_basis(net: &NuNet, m: &Marking) -> Vec<PredBasisEntry> {
    let ids: Vec<NameId> = m.ids().into_iter().collect();
    let mut entries: BTreeMap<CanonicalMarking, PredBasisEntry> = BTreeMap::new();
    for t in net.transitions() {
        let vars: Vec<Variable> = net.vars_of(t).iter().copied().collect();
        let base = m.max_id() + 1;
        let pool: Vec<NameId> = (0..vars.len()).map(|k| NameId(base + k as u64)).collect();
        for_each_mode(&vars, &ids, &pool, &mut |mode| {
            if let Some(pred) = pred_of_min(net, m, t, mode) {
                let canon = canonicalize(&pred);
                entries.entry(canon).or_insert_with(|| PredBasisEntry {
                    marking: pred,
                    via: (t, mode.clone()),
                    target_min: min_t_sigma(net, m, t, mode),
                });
            }
        });
    }
    let keep = minor_set(entries.keys().cloned());
    keep.into_iter()
        .map(|c| entries.remove(&c).expect("kept keys come from the map"))
        .collect()
}

struct BasisNode {
    marking: Marking,
    canon: CanonicalMarking,
    via: Option<(Transition, Mode)>,
    parent: Option<usize>,
    active: bool,
}

/// Decides whether some marking dominating `mf` (up to renaming) is
/// reachable from `m0`, by backward saturation from `mf`.
pub fn coverable(net: &NuNet, m0: &Marking, mf: &Marking, limits: &Limits) -> CoverResult {
    let target_canon = canonicalize(m0);
    let mut nodes: Vec<BasisNode> = vec![BasisNode {
        marking: mf.clone(),
        canon: canonicalize(mf),
        via: None,
        parent: None,
        active: true,
    }];
    let mut iterations = 0usize;

    if multiset_embed(nodes[0].canon.profiles(), target_canon.profiles()).is_some() {
        return CoverResult {
            verdict: CoverVerdict::Coverable,
            witness: Some(replay(net, m0, mf, &nodes, 0)),
            basis_size: 1,
            iterations,
        };
    }

    let mut worklist: VecDeque<usize> = VecDeque::new();
    worklist.push_back(0);

    while let Some(i) = worklist.pop_front() {
        if !nodes[i].active {
            continue;
        }
        if iterations >= limits.max_nodes {
            return exhausted(&nodes, iterations);
        }
        iterations += 1;
        let basis = pred_basis(net, &nodes[i].marking);
        for entry in basis {
            let canon = canonicalize(&entry.marking);
            let covered = nodes
                .iter()
                .any(|n| n.active && multiset_embed(n.canon.profiles(), canon.profiles()).is_some());
            if covered {
                continue;
            }
            for n in nodes.iter_mut() {
                if n.active && multiset_embed(canon.profiles(), n.canon.profiles()).is_some() {
                    n.active = false;
                }
            }
            let idx = nodes.len();
            nodes.push(BasisNode {
                marking: entry.marking,
                canon,
                via: Some(entry.via),
                parent: Some(i),
                active: true,
            });
            if multiset_embed(nodes[idx].canon.profiles(), target_canon.profiles()).is_some() {
                let witness = replay(net, m0, mf, &nodes, idx);
                let basis_size = nodes.iter().filter(|n| n.active).count();
                return CoverResult {
                    verdict: CoverVerdict::Coverable,
                    witness: Some(witness),
                    basis_size,
                    iterations,
                };
            }
            worklist.push_back(idx);
        }
        if nodes.iter().filter(|n| n.active).count() > limits.max_basis {
            return exhausted(&nodes, iterations);
        }
    }

    CoverResult {
        verdict: CoverVerdict::NotCoverable,
        witness: None,
        basis_size: nodes.iter().filter(|n| n.active).count(),
        iterations,
    }
}

fn exhausted(nodes: &[BasisNode], iterations: usize) -> CoverResult {
    CoverResult {
        verdict: CoverVerdict::ResourceExhausted,
        witness: None,
        basis_size: nodes.iter().filter(|n| n.active).count(),
        iterations,
    }
}

/// Rebuilds the firing chain from a basis node that embeds into `m0` and
/// replays it forward, re-instantiating each stored mode against the
/// current marking. Failure here is an internal-consistency error.
fn replay(
    net: &NuNet,
    m0: &Marking,
    mf: &Marking,
    nodes: &[BasisNode],
    from: usize,
) -> Vec<(Transition, Mode)> {
    let mut chain = Vec::new();
    let mut cursor = Some(from);
    while let Some(i) = cursor {
        chain.push(i);
        cursor = nodes[i].parent;
    }
    // chain now runs from the embedding node up to the query root
    let mut current = m0.clone();
    let mut witness = Vec::new();
    for &i in &chain {
        let node = &nodes[i];
        let Some((t, ref mode)) = node.via else {
            break; // root carries no firing
        };
        let iota = leq_alpha(&node.marking, &current)
            .expect("internal: basis chain element must embed into the replayed marking");
        let mut fresh_base = current.max_id() + 1;
        let remapped = Mode::new(net.vars_of(t).iter().map(|v| {
            let image = mode.get(v).expect("mode covers Var(t)");
            if v.is_fresh() {
                let name = NameId(fresh_base);
                fresh_base += 1;
                (*v, name)
            } else {
                (*v, *iota.get(&image).expect("plain images occur in the predecessor"))
            }
        }))
        .expect("injective by construction");
        current = net
            .fire(&current, t, &remapped)
            .expect("internal: replayed firing must be enabled");
        witness.push((t, remapped));
    }
    assert!(
        leq_alpha(mf, &current).is_some(),
        "internal: witness replay must reach a covering marking"
    );
    witness
}

/// Adds one isolated, singleton-marked anchor place per name shared between
/// `m0` and `mf`, pinning those names so any embedding of the extended
/// target must fix them.
pub(crate) fn extend_with_anchors(
    net: &NuNet,
    m0: &Marking,
    mf: &Marking,
) -> (NuNet, Marking, Marking) {
    let shared: Vec<NameId> = m0.ids().intersection(&mf.ids()).copied().collect();
    let mut xnet = net.clone();
    let mut xm0 = Marking::new(net.num_places() + shared.len());
    let mut xmf = Marking::new(net.num_places() + shared.len());
    for p in net.places() {
        *xm0.place_mut(p) = m0.place(p).clone();
        *xmf.place_mut(p) = mf.place(p).clone();
    }
    for &name in &shared {
        let p = xnet.add_place(format!("__anchor{}", name.0));
        xm0.add(p, name, 1);
        xmf.add(p, name, 1);
    }
    (xnet, xm0, xmf)
}

/// Coverability without renaming the names shared between the initial and
/// the target marking: is some `M` reachable with `mf` embedded in `M` under
/// a renaming that fixes every shared name?
pub fn restricted_coverable(net: &NuNet, m0: &Marking, mf: &Marking, limits: &Limits) -> CoverResult {
    let (xnet, xm0, xmf) = extend_with_anchors(net, m0, mf);
    // The anchor places are isolated, so witnesses replay unchanged on the
    // original net.
    coverable(&xnet, &xm0, &xmf, limits)
}
