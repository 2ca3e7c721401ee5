//! Nets whose tokens are pure names: structure, well-formedness and
//! mode-based firing, including fresh-name creation.

use crate::multiset::Multiset;
use crate::order::CanonicalMarking;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use thiserror::Error;

/// A token identity. Names carry no structure beyond equality.
///
/// Id 0 is reserved for the distinguished ordinary ("black") token and the
/// fresh-name allocator never hands it out.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct NameId(pub u64);

impl NameId {
    /// The ordinary token, written `.` in the textual format.
    pub const DOT: NameId = NameId(0);
}

impl fmt::Display for NameId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            write!(f, ".")
        } else {
            write!(f, "n{}", self.0)
        }
    }
}

/// Whether a variable matches existing tokens or instantiates to a fresh name.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum VarKind {
    Plain,
    Fresh,
}

/// An arc variable. Fresh-kind variables may only appear on output arcs.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Variable {
    pub kind: VarKind,
    pub id: u32,
}

impl Variable {
    pub fn plain(id: u32) -> Variable {
        Variable {
            kind: VarKind::Plain,
            id,
        }
    }

    pub fn fresh(id: u32) -> Variable {
        Variable {
            kind: VarKind::Fresh,
            id,
        }
    }

    pub fn is_fresh(&self) -> bool {
        self.kind == VarKind::Fresh
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            VarKind::Plain => write!(f, "x{}", self.id),
            VarKind::Fresh => {
                if self.id == 0 {
                    write!(f, "nu")
                } else {
                    write!(f, "nu{}", self.id)
                }
            }
        }
    }
}

/// Label of an arc: a finite multiset of variables.
pub type ArcLabel = Multiset<Variable>;

/// Place index within a net.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Place(pub usize);

/// Transition index within a net.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Transition(pub usize);

/// A net over name tokens. Arcs carry multisets of variables; firing binds
/// the variables of a transition injectively to names.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NuNet {
    place_names: Vec<String>,
    trans_names: Vec<String>,
    /// Input labels, indexed `[transition][place]`.
    pre: Vec<Vec<ArcLabel>>,
    /// Output labels, indexed `[transition][place]`.
    post: Vec<Vec<ArcLabel>>,
    /// Cached `Var(t)` per transition.
    vars: Vec<BTreeSet<Variable>>,
}

/// A structural well-formedness violation. Violations are data, not failures:
/// `validate` reports all of them.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Violation {
    /// A fresh-kind variable occurs on an input arc of the transition.
    FreshOnInput { transition: String, var: Variable },
    /// A plain variable occurs on an output arc but on no input arc.
    UnboundOutputVar { transition: String, var: Variable },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::FreshOnInput { transition, var } => {
                write!(f, "transition {transition}: fresh variable {var} on an input arc")
            }
            Violation::UnboundOutputVar { transition, var } => write!(
                f,
                "transition {transition}: output variable {var} not bound by any input arc"
            ),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Error)]
pub enum FiringError {
    #[error("mode domain does not match the variables of transition {transition}")]
    DomainMismatch { transition: String },
    #[error("transition {transition} is not enabled under the given mode")]
    Disabled { transition: String },
}

#[derive(Clone, PartialEq, Eq, Debug, Error)]
pub enum ModeError {
    #[error("mode is not injective: two variables map to {name}")]
    NotInjective { name: NameId },
}

/// An injective assignment of a transition's variables to names.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Mode {
    map: BTreeMap<Variable, NameId>,
}

impl Mode {
    /// Builds a mode, rejecting non-injective assignments.
    pub fn new<I: IntoIterator<Item = (Variable, NameId)>>(pairs: I) -> Result<Mode, ModeError> {
        let mut map = BTreeMap::new();
        let mut seen = BTreeSet::new();
        for (v, n) in pairs {
            if let Some(&prev) = map.get(&v) {
                if prev != n {
                    return Err(ModeError::NotInjective { name: n });
                }
                continue;
            }
            if !seen.insert(n) {
                return Err(ModeError::NotInjective { name: n });
            }
            map.insert(v, n);
        }
        Ok(Mode { map })
    }

    pub fn empty() -> Mode {
        Mode {
            map: BTreeMap::new(),
        }
    }

    pub fn get(&self, v: &Variable) -> Option<NameId> {
        self.map.get(v).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Variable, NameId)> {
        self.map.iter().map(|(v, &n)| (v, n))
    }

    pub fn domain(&self) -> impl Iterator<Item = &Variable> {
        self.map.keys()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    fn domain_equals(&self, vars: &BTreeSet<Variable>) -> bool {
        self.map.len() == vars.len() && self.map.keys().all(|v| vars.contains(v))
    }

    /// Instantiates an arc label. All support variables must be in the domain.
    pub fn instantiate(&self, label: &ArcLabel) -> Multiset<NameId> {
        label.map(|v| self.map[v])
    }
}

/// A marking: one finite multiset of names per place.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Marking {
    content: Vec<Multiset<NameId>>,
}

impl Marking {
    pub fn new(places: usize) -> Marking {
        Marking {
            content: vec![Multiset::new(); places],
        }
    }

    pub fn for_net(net: &NuNet) -> Marking {
        Marking::new(net.num_places())
    }

    pub fn num_places(&self) -> usize {
        self.content.len()
    }

    pub fn place(&self, p: Place) -> &Multiset<NameId> {
        &self.content[p.0]
    }

    pub fn place_mut(&mut self, p: Place) -> &mut Multiset<NameId> {
        &mut self.content[p.0]
    }

    pub fn add(&mut self, p: Place, name: NameId, n: u32) {
        self.content[p.0].insert_n(name, n);
    }

    pub fn is_empty(&self) -> bool {
        self.content.iter().all(|c| c.is_empty())
    }

    /// Total token count over all places.
    pub fn total(&self) -> u32 {
        self.content.iter().map(|c| c.len()).sum()
    }

    /// The set of names appearing with positive count somewhere.
    pub fn ids(&self) -> BTreeSet<NameId> {
        let mut out = BTreeSet::new();
        for c in &self.content {
            out.extend(c.support().copied());
        }
        out
    }

    /// Largest name id in the marking, or 0 when empty.
    pub fn max_id(&self) -> u64 {
        self.ids().last().map(|n| n.0).unwrap_or(0)
    }

    /// Pointwise multiset inclusion (the plain order, no renaming).
    pub fn le(&self, other: &Marking) -> bool {
        self.content.len() == other.content.len()
            && self
                .content
                .iter()
                .zip(&other.content)
                .all(|(a, b)| a.subset_of(b))
    }

    /// Pointwise join.
    pub fn join(&self, other: &Marking) -> Marking {
        assert_eq!(self.content.len(), other.content.len());
        Marking {
            content: self
                .content
                .iter()
                .zip(&other.content)
                .map(|(a, b)| a.join(b))
                .collect(),
        }
    }

    /// Applies a renaming to every token. The map must be injective on the
    /// names that occur; unmapped names are kept.
    pub fn rename(&self, map: &BTreeMap<NameId, NameId>) -> Marking {
        Marking {
            content: self
                .content
                .iter()
                .map(|c| c.map(|n| map.get(n).copied().unwrap_or(*n)))
                .collect(),
        }
    }

    pub fn iter_places(&self) -> impl Iterator<Item = (Place, &Multiset<NameId>)> {
        self.content.iter().enumerate().map(|(i, c)| (Place(i), c))
    }
}

impl NuNet {
    pub fn new() -> NuNet {
        NuNet {
            place_names: Vec::new(),
            trans_names: Vec::new(),
            pre: Vec::new(),
            post: Vec::new(),
            vars: Vec::new(),
        }
    }

    pub fn add_place(&mut self, name: impl Into<String>) -> Place {
        self.place_names.push(name.into());
        for t in 0..self.trans_names.len() {
            self.pre[t].push(ArcLabel::new());
            self.post[t].push(ArcLabel::new());
        }
        Place(self.place_names.len() - 1)
    }

    pub fn add_transition(&mut self, name: impl Into<String>) -> Transition {
        self.trans_names.push(name.into());
        self.pre.push(vec![ArcLabel::new(); self.place_names.len()]);
        self.post.push(vec![ArcLabel::new(); self.place_names.len()]);
        self.vars.push(BTreeSet::new());
        Transition(self.trans_names.len() - 1)
    }

    pub fn set_pre(&mut self, p: Place, t: Transition, label: ArcLabel) {
        self.pre[t.0][p.0] = label;
        self.recompute_vars(t);
    }

    pub fn set_post(&mut self, t: Transition, p: Place, label: ArcLabel) {
        self.post[t.0][p.0] = label;
        self.recompute_vars(t);
    }

    fn recompute_vars(&mut self, t: Transition) {
        let mut vars = BTreeSet::new();
        for p in 0..self.place_names.len() {
            vars.extend(self.pre[t.0][p].support().copied());
            vars.extend(self.post[t.0][p].support().copied());
        }
        self.vars[t.0] = vars;
    }

    pub fn num_places(&self) -> usize {
        self.place_names.len()
    }

    pub fn num_transitions(&self) -> usize {
        self.trans_names.len()
    }

    pub fn places(&self) -> impl Iterator<Item = Place> {
        (0..self.place_names.len()).map(Place)
    }

    pub fn transitions(&self) -> impl Iterator<Item = Transition> {
        (0..self.trans_names.len()).map(Transition)
    }

    pub fn place_name(&self, p: Place) -> &str {
        &self.place_names[p.0]
    }

    pub fn place_names(&self) -> &[String] {
        &self.place_names
    }

    pub fn transition_name(&self, t: Transition) -> &str {
        &self.trans_names[t.0]
    }

    pub fn find_place(&self, name: &str) -> Option<Place> {
        self.place_names.iter().position(|n| n == name).map(Place)
    }

    pub fn find_transition(&self, name: &str) -> Option<Transition> {
        self.trans_names.iter().position(|n| n == name).map(Transition)
    }

    pub fn pre_label(&self, p: Place, t: Transition) -> &ArcLabel {
        &self.pre[t.0][p.0]
    }

    pub fn post_label(&self, t: Transition, p: Place) -> &ArcLabel {
        &self.post[t.0][p.0]
    }

    /// The variables of a transition: support of its input and output labels.
    pub fn vars_of(&self, t: Transition) -> &BTreeSet<Variable> {
        &self.vars[t.0]
    }

    /// Checks the two structural invariants for every transition: no fresh
    /// variable on an input arc, and every plain output variable bound by
    /// some input arc.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for t in self.transitions() {
            let mut pre_vars = BTreeSet::new();
            for p in self.places() {
                for v in self.pre[t.0][p.0].support() {
                    pre_vars.insert(*v);
                    if v.is_fresh() {
                        out.push(Violation::FreshOnInput {
                            transition: self.trans_names[t.0].clone(),
                            var: *v,
                        });
                    }
                }
            }
            let mut reported = BTreeSet::new();
            for p in self.places() {
                for v in self.post[t.0][p.0].support() {
                    if !v.is_fresh() && !pre_vars.contains(v) && reported.insert(*v) {
                        out.push(Violation::UnboundOutputVar {
                            transition: self.trans_names[t.0].clone(),
                            var: *v,
                        });
                    }
                }
            }
        }
        out
    }

    /// True iff every arc label has at most one variable and all fresh
    /// labels use one common fresh variable.
    pub fn is_normal(&self) -> bool {
        let mut fresh_used = BTreeSet::new();
        for t in 0..self.trans_names.len() {
            for p in 0..self.place_names.len() {
                for label in [&self.pre[t][p], &self.post[t][p]] {
                    if label.len() > 1 {
                        return false;
                    }
                    fresh_used.extend(label.support().filter(|v| v.is_fresh()).copied());
                }
            }
        }
        fresh_used.len() <= 1
    }

    /// True iff `t` is enabled at `m` under `mode`: every instantiated input
    /// label is included in the place content and every fresh variable maps
    /// to a name absent from the marking.
    pub fn is_enabled(&self, m: &Marking, t: Transition, mode: &Mode) -> Result<bool, FiringError> {
        if !mode.domain_equals(&self.vars[t.0]) {
            return Err(FiringError::DomainMismatch {
                transition: self.trans_names[t.0].clone(),
            });
        }
        for p in self.places() {
            let needed = mode.instantiate(&self.pre[t.0][p.0]);
            if !needed.subset_of(m.place(p)) {
                return Ok(false);
            }
        }
        let ids = m.ids();
        for v in &self.vars[t.0] {
            if v.is_fresh() && ids.contains(&mode.get(v).unwrap()) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Fires `t` under `mode`, rejecting disabled firings.
    pub fn fire(&self, m: &Marking, t: Transition, mode: &Mode) -> Result<Marking, FiringError> {
        if !self.is_enabled(m, t, mode)? {
            return Err(FiringError::Disabled {
                transition: self.trans_names[t.0].clone(),
            });
        }
        let mut out = Marking::new(self.num_places());
        for p in self.places() {
            let consumed = mode.instantiate(&self.pre[t.0][p.0]);
            let produced = mode.instantiate(&self.post[t.0][p.0]);
            let left = m
                .place(p)
                .checked_sub(&consumed)
                .expect("enabledness guarantees inclusion");
            *out.place_mut(p) = left.sum(&produced);
        }
        Ok(out)
    }

    /// All enabled `(transition, mode)` pairs at `m`, with fresh choices
    /// canonicalized: plain variables range injectively over the names of
    /// `m`, and fresh variables take the smallest unused ids above every id
    /// in `m`, in variable order, standing in for all renaming-equivalent
    /// choices.
    pub fn enabled_firings(&self, m: &Marking) -> Vec<(Transition, Mode)> {
        let ids: Vec<NameId> = m.ids().into_iter().collect();
        let mut out = Vec::new();
        for t in self.transitions() {
            let plain: Vec<Variable> = self.vars[t.0].iter().filter(|v| !v.is_fresh()).copied().collect();
            let fresh: Vec<Variable> = self.vars[t.0].iter().filter(|v| v.is_fresh()).copied().collect();
            let base = m.max_id() + 1;
            let fresh_pairs: Vec<(Variable, NameId)> = fresh
                .iter()
                .enumerate()
                .map(|(k, v)| (*v, NameId(base + k as u64)))
                .collect();
            // Per-variable requirement: minimum count the bound name must
            // have in each input place. Cheap pruning for the enumeration.
            let needs: Vec<Vec<(usize, u32)>> = plain
                .iter()
                .map(|v| {
                    (0..self.place_names.len())
                        .filter_map(|p| {
                            let c = self.pre[t.0][p].count(v);
                            (c > 0).then_some((p, c))
                        })
                        .collect()
                })
                .collect();
            let mut chosen: Vec<NameId> = Vec::with_capacity(plain.len());
            self.enum_plain(m, t, &plain, &needs, &ids, &fresh_pairs, &mut chosen, &mut out);
        }
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn enum_plain(
        &self,
        m: &Marking,
        t: Transition,
        plain: &[Variable],
        needs: &[Vec<(usize, u32)>],
        ids: &[NameId],
        fresh_pairs: &[(Variable, NameId)],
        chosen: &mut Vec<NameId>,
        out: &mut Vec<(Transition, Mode)>,
    ) {
        let k = chosen.len();
        if k == plain.len() {
            let pairs = plain
                .iter()
                .copied()
                .zip(chosen.iter().copied())
                .chain(fresh_pairs.iter().copied());
            let mode = Mode::new(pairs).expect("distinct names chosen");
            if self
                .is_enabled(m, t, &mode)
                .expect("domain covers Var(t) by construction")
            {
                out.push((t, mode));
            }
            return;
        }
        for &name in ids {
            if chosen.contains(&name) {
                continue;
            }
            if needs[k].iter().any(|&(p, c)| m.place(Place(p)).count(&name) < c) {
                continue;
            }
            chosen.push(name);
            self.enum_plain(m, t, plain, needs, ids, fresh_pairs, chosen, out);
            chosen.pop();
        }
    }

    /// One-step image of `m` as a set of canonical markings.
    pub fn successors(&self, m: &Marking) -> Vec<CanonicalMarking> {
        let mut set = BTreeSet::new();
        for (t, mode) in self.enabled_firings(m) {
            let next = self.fire(m, t, &mode).expect("enumerated firing is enabled");
            set.insert(crate::order::canonicalize(&next));
        }
        set.into_iter().collect()
    }
}

impl Default for NuNet {
    fn default() -> Self {
        NuNet::new()
    }
}

/// An ordinary place/transition net with weighted arcs and indistinct tokens.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PtNet {
    place_names: Vec<String>,
    trans_names: Vec<String>,
    pre: Vec<Vec<u32>>,
    post: Vec<Vec<u32>>,
}

impl PtNet {
    pub fn new() -> PtNet {
        PtNet {
            place_names: Vec::new(),
            trans_names: Vec::new(),
            pre: Vec::new(),
            post: Vec::new(),
        }
    }

    pub fn add_place(&mut self, name: impl Into<String>) -> usize {
        self.place_names.push(name.into());
        for t in 0..self.trans_names.len() {
            self.pre[t].push(0);
            self.post[t].push(0);
        }
        self.place_names.len() - 1
    }

    pub fn add_transition(&mut self, name: impl Into<String>) -> usize {
        self.trans_names.push(name.into());
        self.pre.push(vec![0; self.place_names.len()]);
        self.post.push(vec![0; self.place_names.len()]);
        self.trans_names.len() - 1
    }

    pub fn set_pre(&mut self, p: usize, t: usize, weight: u32) {
        self.pre[t][p] = weight;
    }

    pub fn set_post(&mut self, t: usize, p: usize, weight: u32) {
        self.post[t][p] = weight;
    }

    pub fn num_places(&self) -> usize {
        self.place_names.len()
    }

    pub fn num_transitions(&self) -> usize {
        self.trans_names.len()
    }

    pub fn place_names(&self) -> &[String] {
        &self.place_names
    }

    pub fn transition_names(&self) -> &[String] {
        &self.trans_names
    }

    pub fn pre_weight(&self, p: usize, t: usize) -> u32 {
        self.pre[t][p]
    }

    pub fn post_weight(&self, t: usize, p: usize) -> u32 {
        self.post[t][p]
    }

    pub fn enabled(&self, m: &[u32], t: usize) -> bool {
        (0..self.place_names.len()).all(|p| m[p] >= self.pre[t][p])
    }

    /// Classical firing; `None` when disabled.
    pub fn fire(&self, m: &[u32], t: usize) -> Option<Vec<u32>> {
        if !self.enabled(m, t) {
            return None;
        }
        Some(
            (0..self.place_names.len())
                .map(|p| m[p] - self.pre[t][p] + self.post[t][p])
                .collect(),
        )
    }
}

impl Default for PtNet {
    fn default() -> Self {
        PtNet::new()
    }
}

/// Embeds a weighted P/T net: each weighted arc becomes a label repeating one
/// shared plain variable and the initial marking uses the ordinary token.
/// One-step behavior of the image bisimulates the source.
///
/// A trailing reservoir place holding a single ordinary token self-loops on
/// every transition; that keeps the shared variable bound even for
/// transitions with no input arcs, so the image is always well-formed.
pub fn embed_pt(pt: &PtNet, m0: &[u32]) -> (NuNet, Marking) {
    assert_eq!(m0.len(), pt.num_places());
    let mut net = NuNet::new();
    let x = Variable::plain(0);
    let places: Vec<Place> = pt
        .place_names()
        .iter()
        .map(|n| net.add_place(n.clone()))
        .collect();
    let reservoir = net.add_place("__dot");
    for (ti, tname) in pt.transition_names().iter().enumerate() {
        let t = net.add_transition(tname.clone());
        for (pi, &p) in places.iter().enumerate() {
            let w = pt.pre_weight(pi, ti);
            if w > 0 {
                let mut label = ArcLabel::new();
                label.insert_n(x, w);
                net.set_pre(p, t, label);
            }
            let w = pt.post_weight(ti, pi);
            if w > 0 {
                let mut label = ArcLabel::new();
                label.insert_n(x, w);
                net.set_post(t, p, label);
            }
        }
        net.set_pre(reservoir, t, [x].into_iter().collect());
        net.set_post(t, reservoir, [x].into_iter().collect());
    }
    let mut m = Marking::for_net(&net);
    for (pi, &count) in m0.iter().enumerate() {
        m.add(places[pi], NameId::DOT, count);
    }
    m.add(reservoir, NameId::DOT, 1);
    (net, m)
}
