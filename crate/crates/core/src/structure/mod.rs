//! Constructive structure around three anticomplete sets.
//!
//! Throughout, "the three sets" are pairwise disjoint vertex sets indexed
//! 0, 1, 2 (written `X`, `Y`, `Z`), and a connected set `A` that sees each of
//! them falls into one of three types:
//! - path centered at `W`: an induced path in `A` whose ends see the other two
//!   sets, each only at its own end, and which sees `W`;
//! - claw: three induced legs from an apex, pairwise anticomplete off the
//!   apex, each set seen only at the far end of its leg;
//! - triangle: three disjoint induced legs whose near ends form a triangle
//!   (the only edges between legs), each set seen only at the far end of its
//!   leg.
//!
//! Lemma checkers take a [`HostMode`]: the guarantees need a host without
//! three-path configurations, and every report says whether that was
//! assumed, verified, refuted or left open.

mod skeleton;
#[cfg(test)]
mod tests;
mod types;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::detectors::{find_3pc, Kind, PrismRule, ThreePcWitness};
use crate::error::{precondition, Result};
use crate::graph::{Graph, VertexSet};
use crate::search::Search;

pub use skeleton::{
    exactly_one_small, extract_k33_skeleton, verify_skeleton, K33Skeleton, SkeletonReport,
};
pub use types::{
    check_all_path_common_center, check_one_path, classify_type, find_path_witness,
    path_type_centers, verify_type, AllPathReport, OnePathReport, PathWitness, TypeWitness,
};

/// How a lemma checker treats the requirement that the host has no 3PC.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HostMode {
    /// Take it as given.
    Assume,
    /// Run the 3PC search with this node budget.
    Verify { budget: u64 },
    /// Do not check; the report carries no guarantee.
    Skip,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "status")]
pub enum HostStatus {
    Assumed,
    ThreePcFree,
    HasThreePc {
        witness: ThreePcWitness,
    },
    /// The search ran out of budget.
    Undetermined,
    Unchecked,
}

impl HostStatus {
    /// Whether the lemma's conclusion is guaranteed for this host.
    pub fn guarantees(&self) -> bool {
        matches!(self, HostStatus::Assumed | HostStatus::ThreePcFree)
    }
}

pub fn host_status(g: &Graph, mode: HostMode) -> HostStatus {
    match mode {
        HostMode::Assume => HostStatus::Assumed,
        HostMode::Skip => HostStatus::Unchecked,
        HostMode::Verify { budget } => {
            match find_3pc(g, &Kind::ALL, PrismRule::AllowZero, budget) {
                Search::Found(witness) => HostStatus::HasThreePc { witness },
                Search::NotFound => HostStatus::ThreePcFree,
                Search::Indeterminate => HostStatus::Undetermined,
            }
        }
    }
}

pub(crate) fn bits(g: &Graph, s: &VertexSet, name: &str) -> Result<FixedBitSet> {
    s.to_bits(g.n())
        .map_err(|_| crate::Error::Precondition(format!("set {name} has a vertex out of range")))
}

/// Vertices of `within` with a neighbor in `target`.
pub(crate) fn seers(g: &Graph, within: &FixedBitSet, target: &FixedBitSet) -> FixedBitSet {
    let mut out = g.neighborhood(target);
    out.intersect_with(within);
    out
}

pub(crate) fn check_disjoint(named: &[(&str, &FixedBitSet)]) -> Result<()> {
    for (i, (a, x)) in named.iter().enumerate() {
        if x.is_clear() {
            return precondition(format!("{a} is empty"));
        }
        for (b, y) in &named[i + 1..] {
            if !x.is_disjoint(y) {
                return precondition(format!("{a} and {b} are not disjoint"));
            }
        }
    }
    Ok(())
}

pub(crate) fn check_connected(g: &Graph, named: &[(&str, &FixedBitSet)]) -> Result<()> {
    for (a, x) in named {
        if !g.is_connected_bits(x) {
            return precondition(format!("{a} is not connected"));
        }
    }
    Ok(())
}

pub(crate) fn check_anticomplete(g: &Graph, named: &[(&str, &FixedBitSet)]) -> Result<()> {
    for (i, (a, x)) in named.iter().enumerate() {
        for (b, y) in &named[i + 1..] {
            if g.sees_bits(x, y) {
                return precondition(format!("{a} and {b} are not anticomplete"));
            }
        }
    }
    Ok(())
}

pub(crate) fn check_sees_all(
    g: &Graph,
    name: &str,
    a: &FixedBitSet,
    sets: &[(&str, &FixedBitSet); 3],
) -> Result<()> {
    for (s, x) in sets {
        if !g.sees_bits(a, x) {
            return precondition(format!("{name} does not see {s}"));
        }
    }
    Ok(())
}

/// Whether no connected proper subset of `a` sees all three sets. Seeing is
/// monotone, so it suffices that for each `v` no component of `a - v` sees
/// all three.
pub fn is_minimal_connector(g: &Graph, a: &FixedBitSet, sets: [&FixedBitSet; 3]) -> bool {
    a.ones().all(|v| {
        let mut rest = a.clone();
        rest.set(v, false);
        g.components_of(&rest)
            .iter()
            .all(|c| !sets.iter().all(|s| g.sees_bits(c, s)))
    })
}
