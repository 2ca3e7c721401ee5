//! Petri nets whose tokens are pure names, with fresh-name creation.
//!
//! The crate provides:
//!
//! - exact firing semantics for nets with name tokens ([`net`]),
//! - renaming-invariant canonical forms and the embedding well-quasi-order
//!   on markings ([`order`]),
//! - a backward-saturation coverability checker with witness replay
//!   ([`cover`]),
//! - forward tree analyses deciding termination and boundedness, exhaustive
//!   reachability for bounded nets, and width/depth measurements
//!   ([`forward`]),
//! - reset-net and inhibitor-net source models with their translations to
//!   name nets ([`reduce`]),
//! - a line-oriented textual format, deterministic renderers and witness
//!   handling ([`text`]).

pub mod cover;
pub mod forward;
pub mod multiset;
pub mod net;
pub mod order;
pub mod reduce;
pub mod text;

pub use cover::{
    coverable, min_t_sigma, pred_basis, pred_of_min, restricted_coverable, CoverResult,
    CoverVerdict, PredBasisEntry,
};
pub use forward::{bounded, measure, reach_set, reachable_alpha, terminates, AnalysisResult, Verdict};
pub use multiset::Multiset;
pub use net::{
    embed_pt, ArcLabel, FiringError, Marking, Mode, ModeError, NameId, NuNet, Place, PtNet,
    Transition, VarKind, Variable, Violation,
};
pub use order::{alpha_equiv, canonicalize, leq_alpha, minor_set, multiset_embed, CanonicalMarking};

/// Resource budget for the decision procedures. The procedures terminate in
/// theory but are not primitive recursive, so every search is bounded and
/// exhaustion is a distinct outcome, never a negative verdict.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Limits {
    /// Node budget for forward exploration and iteration budget for
    /// backward saturation.
    pub max_nodes: usize,
    /// Maximum size of the backward basis.
    pub max_basis: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_nodes: 1_000_000,
            max_basis: 100_000,
        }
    }
}

impl Limits {
    pub fn with_nodes(mut self, n: usize) -> Self {
        self.max_nodes = n;
        self
    }

    pub fn with_basis(mut self, n: usize) -> Self {
        self.max_basis = n;
        self
    }
}
