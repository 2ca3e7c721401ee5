//! Forward reachability trees deciding termination and boundedness,
//! exhaustive reachability for bounded nets, and width/depth measurement.
//!
//! Both decisions build a breadth-first tree over canonical markings and
//! compare each node against its ancestors under the embedding order. A
//! branch whose node dominates an ancestor can be pumped: non-strict
//! domination yields an infinite run, strict domination yields infinitely
//! many distinct markings. The well-quasi-order keeps both trees finite.

use crate::net::{Marking, Mode, NuNet, Transition};
use crate::order::{canonicalize, multiset_embed, CanonicalMarking};
use crate::Limits;
use std::collections::{BTreeMap, BTreeSet, VecDeque};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Verdict {
    Terminating,
    NonTerminating,
    Bounded,
    Unbounded,
    Reachable,
    NotReachable,
    NotApplicable,
    ResourceExhausted,
}

/// Exploration statistics: nodes expanded, the largest number of distinct
/// names seen in one marking, and the largest per-place count of one name.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Stats {
    pub nodes: usize,
    pub max_width: usize,
    pub max_depth: u32,
    /// True when the exploration ran to completion rather than hitting a
    /// budget.
    pub exact: bool,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AnalysisResult {
    pub verdict: Verdict,
    /// For negative verdicts with a pumpable branch, the firing sequence
    /// from the initial marking to the flagged node.
    pub witness: Option<Vec<(Transition, Mode)>>,
    /// Index into the witness where the pumped segment starts (the depth of
    /// the dominated ancestor).
    pub pump_start: Option<usize>,
    /// The dominated ancestor and the dominating node, as canonical forms.
    pub pump: Option<(CanonicalMarking, CanonicalMarking)>,
    pub stats: Stats,
}

impl AnalysisResult {
    fn plain(verdict: Verdict, stats: Stats) -> AnalysisResult {
        AnalysisResult {
            verdict,
            witness: None,
            pump_start: None,
            pump: None,
            stats,
        }
    }
}

struct TreeNode {
    marking: Marking,
    canon: CanonicalMarking,
    parent: Option<usize>,
    via: Option<(Transition, Mode)>,
    depth: usize,
}

enum CutRule {
    /// Flag as soon as a node dominates an ancestor (termination check).
    Domination,
    /// Cut silently on equal canonical forms, flag on strict domination
    /// (boundedness check).
    StrictDomination,
}

fn firing_path(nodes: &[TreeNode], mut i: usize) -> Vec<(Transition, Mode)> {
    let mut rev = Vec::new();
    loop {
        let node = &nodes[i];
        match (&node.via, node.parent) {
            (Some(step), Some(p)) => {
                rev.push(step.clone());
                i = p;
            }
            _ => break,
        }
    }
    rev.reverse();
    rev
}

fn tree_search(net: &NuNet, m0: &Marking, limits: &Limits, rule: CutRule) -> AnalysisResult {
    let mut nodes = vec![TreeNode {
        marking: m0.clone(),
        canon: canonicalize(m0),
        parent: None,
        via: None,
        depth: 0,
    }];
    let mut queue: VecDeque<usize> = VecDeque::new();
    queue.push_back(0);
    let mut stats = Stats {
        nodes: 0,
        max_width: nodes[0].canon.width(),
        max_depth: nodes[0].canon.depth(),
        exact: false,
    };

    while let Some(i) = queue.pop_front() {
        if stats.nodes >= limits.max_nodes {
            return AnalysisResult::plain(Verdict::ResourceExhausted, stats);
        }
        stats.nodes += 1;

        // scan ancestors for domination
        let mut cursor = nodes[i].parent;
        let mut cut = false;
        while let Some(j) = cursor {
            let anc = &nodes[j];
            let dominates =
                multiset_embed(anc.canon.profiles(), nodes[i].canon.profiles()).is_some();
            if dominates {
                let equal = anc.canon == nodes[i].canon;
                match rule {
                    CutRule::Domination => {
                        return AnalysisResult {
                            verdict: Verdict::NonTerminating,
                            witness: Some(firing_path(&nodes, i)),
                            pump_start: Some(anc.depth),
                            pump: Some((anc.canon.clone(), nodes[i].canon.clone())),
                            stats,
                        };
                    }
                    CutRule::StrictDomination => {
                        if equal {
                            cut = true;
                            break;
                        }
                        return AnalysisResult {
                            verdict: Verdict::Unbounded,
                            witness: Some(firing_path(&nodes, i)),
                            pump_start: Some(anc.depth),
                            pump: Some((anc.canon.clone(), nodes[i].canon.clone())),
                            stats,
                        };
                    }
                }
            }
            cursor = anc.parent;
        }
        if cut {
            continue;
        }

        // expand, collapsing renaming-equivalent children of this node
        let mut seen_children = BTreeSet::new();
        for (t, mode) in net.enabled_firings(&nodes[i].marking) {
            let child = net
                .fire(&nodes[i].marking, t, &mode)
                .expect("enumerated firing is enabled");
            let canon = canonicalize(&child);
            if !seen_children.insert(canon.clone()) {
                continue;
            }
            stats.max_width = stats.max_width.max(canon.width());
            stats.max_depth = stats.max_depth.max(canon.depth());
            let depth = nodes[i].depth + 1;
            nodes.push(TreeNode {
                marking: child,
                canon,
                parent: Some(i),
                via: Some((t, mode)),
                depth,
            });
            queue.push_back(nodes.len() - 1);
        }
    }

    stats.exact = true;
    let verdict = match rule {
        CutRule::Domination => Verdict::Terminating,
        CutRule::StrictDomination => Verdict::Bounded,
    };
    AnalysisResult::plain(verdict, stats)
}

/// Decides termination: is every firing sequence from `m0` finite?
pub fn terminates(net: &NuNet, m0: &Marking, limits: &Limits) -> AnalysisResult {
    tree_search(net, m0, limits, CutRule::Domination)
}

/// Decides boundedness: is the set of reachable markings finite up to
/// renaming?
pub fn bounded(net: &NuNet, m0: &Marking, limits: &Limits) -> AnalysisResult {
    tree_search(net, m0, limits, CutRule::StrictDomination)
}

struct ReachNode {
    marking: Marking,
    parent: Option<usize>,
    via: Option<(Transition, Mode)>,
}

/// Breadth-first closure of the canonical reachability set, with parent
/// links for witness extraction.
pub struct ReachGraph {
    nodes: Vec<ReachNode>,
    index: BTreeMap<CanonicalMarking, usize>,
    /// True when the closure is complete rather than budget-truncated.
    pub complete: bool,
}

impl ReachGraph {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn contains(&self, c: &CanonicalMarking) -> bool {
        self.index.contains_key(c)
    }

    pub fn canonical_set(&self) -> BTreeSet<CanonicalMarking> {
        self.index.keys().cloned().collect()
    }

    pub fn markings(&self) -> impl Iterator<Item = &Marking> {
        self.nodes.iter().map(|n| &n.marking)
    }

    /// A firing sequence from the root to a representative of `c`.
    pub fn witness_to(&self, c: &CanonicalMarking) -> Option<Vec<(Transition, Mode)>> {
        let mut i = *self.index.get(c)?;
        let mut rev = Vec::new();
        while let (Some(step), Some(p)) = (&self.nodes[i].via, self.nodes[i].parent) {
            rev.push(step.clone());
            i = p;
        }
        rev.reverse();
        Some(rev)
    }
}

/// Explores the reachable canonical markings breadth-first with global
/// deduplication. Completes exactly when the net is bounded and the budget
/// suffices.
pub fn reach_graph(net: &NuNet, m0: &Marking, limits: &Limits) -> ReachGraph {
    let mut graph = ReachGraph {
        nodes: Vec::new(),
        index: BTreeMap::new(),
        complete: false,
    };
    graph.nodes.push(ReachNode {
        marking: m0.clone(),
        parent: None,
        via: None,
    });
    graph.index.insert(canonicalize(m0), 0);
    let mut queue: VecDeque<usize> = VecDeque::new();
    queue.push_back(0);
    while let Some(i) = queue.pop_front() {
        let current = graph.nodes[i].marking.clone();
        for (t, mode) in net.enabled_firings(&current) {
            let child = net.fire(&current, t, &mode).expect("enumerated firing is enabled");
            let canon = canonicalize(&child);
            if graph.index.contains_key(&canon) {
                continue;
            }
            if graph.nodes.len() >= limits.max_nodes {
                return graph;
            }
            let idx = graph.nodes.len();
            graph.nodes.push(ReachNode {
                marking: child,
                parent: Some(i),
                via: Some((t, mode)),
            });
            graph.index.insert(canon, idx);
            queue.push_back(idx);
        }
    }
    graph.complete = true;
    graph
}

/// The full set of reachable canonical markings, paired with a completeness
/// flag. Meaningful as a set only when the flag is true.
pub fn reach_set(net: &NuNet, m0: &Marking, limits: &Limits) -> (BTreeSet<CanonicalMarking>, bool) {
    let g = reach_graph(net, m0, limits);
    (g.canonical_set(), g.complete)
}

/// Reachability up to renaming, restricted to nets provable bounded within
/// the limits; `NotApplicable` otherwise.
pub fn reachable_alpha(net: &NuNet, m0: &Marking, mf: &Marking, limits: &Limits) -> AnalysisResult {
    let b = bounded(net, m0, limits);
    match b.verdict {
        Verdict::Unbounded => AnalysisResult::plain(Verdict::NotApplicable, b.stats),
        Verdict::ResourceExhausted => b,
        Verdict::Bounded => {
            let graph = reach_graph(net, m0, limits);
            let mut stats = b.stats;
            stats.nodes = graph.len();
            if !graph.complete {
                return AnalysisResult::plain(Verdict::ResourceExhausted, stats);
            }
            let target = canonicalize(mf);
            match graph.witness_to(&target) {
                Some(witness) => AnalysisResult {
                    verdict: Verdict::Reachable,
                    witness: Some(witness),
                    pump_start: None,
                    pump: None,
                    stats,
                },
                None => AnalysisResult::plain(Verdict::NotReachable, stats),
            }
        }
        _ => unreachable!("boundedness check returns a boundedness verdict"),
    }
}

/// Widths and depths observed over an explored prefix of the state space.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Measure {
    pub max_width: usize,
    pub max_depth: u32,
    pub nodes: usize,
    /// True when the whole canonical state space was explored.
    pub exact: bool,
}

/// Explores up to `steps` node expansions (with global deduplication) and
/// reports the largest observed width and depth.
pub fn measure(net: &NuNet, m0: &Marking, steps: usize) -> Measure {
    let root = canonicalize(m0);
    let mut out = Measure {
        max_width: root.width(),
        max_depth: root.depth(),
        nodes: 0,
        exact: false,
    };
    let mut seen: BTreeSet<CanonicalMarking> = BTreeSet::new();
    seen.insert(root);
    let mut queue: VecDeque<Marking> = VecDeque::new();
    queue.push_back(m0.clone());
    while let Some(current) = queue.pop_front() {
        if out.nodes >= steps {
            return out;
        }
        out.nodes += 1;
        for (t, mode) in net.enabled_firings(&current) {
            let child = net.fire(&current, t, &mode).expect("enumerated firing is enabled");
            let canon = canonicalize(&child);
            if seen.contains(&canon) {
                continue;
            }
            out.max_width = out.max_width.max(canon.width());
            out.max_depth = out.max_depth.max(canon.depth());
            seen.insert(canon);
            queue.push_back(child);
        }
    }
    out.exact = true;
    out
}
