//! Induced subgraph, induced minor and minor containment with verifiable
//! witnesses, plus model minimization.

mod minimize;
mod minor;
mod subgraph;

pub use minimize::{
    check_girth_tree_property, girth_tree_violations, longest_cycle_in, minimize_model,
    minimize_model_with, private_branch_sets, GirthTreeViolation, MinimizeOptions, Minimized,
    PrivateBranchSets,
};

use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use crate::clock::Stopwatch;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::search::{Budget, Search, Status};

/// Branch sets of `pattern` inside `host`, indexed by pattern vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BranchModel {
    pub pattern: Graph,
    pub host: Graph,
    pub branch_sets: Vec<VertexSet>,
}

/// First violated model condition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "violation", rename_all = "snake_case")]
pub enum ModelViolation {
    /// One branch set per pattern vertex is required.
    WrongCount { expected: usize, got: usize },
    OutOfRange {
        pattern_vertex: usize,
        vertex: Vertex,
    },
    /// Clause 1: branch sets are nonempty and pairwise disjoint.
    Empty { pattern_vertex: usize },
    Overlap {
        first: usize,
        second: usize,
        vertex: Vertex,
    },
    /// Clause 2: each branch set induces a connected subgraph.
    Disconnected { pattern_vertex: usize },
    /// Clause 3: sets of adjacent pattern vertices see each other...
    MissingContact { first: usize, second: usize },
    /// ...and sets of nonadjacent pattern vertices do not.
    ExtraContact { first: usize, second: usize },
}

impl ModelViolation {
    /// Which of the three model clauses failed (0 for malformed input).
    pub fn clause(&self) -> u8 {
        match self {
            ModelViolation::WrongCount { .. } | ModelViolation::OutOfRange { .. } => 0,
            ModelViolation::Empty { .. } | ModelViolation::Overlap { .. } => 1,
            ModelViolation::Disconnected { .. } => 2,
            ModelViolation::MissingContact { .. } | ModelViolation::ExtraContact { .. } => 3,
        }
    }
}

impl fmt::Display for ModelViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelViolation::WrongCount { expected, got } => {
                write!(f, "expected {expected} branch sets, got {got}")
            }
            ModelViolation::OutOfRange {
                pattern_vertex,
                vertex,
            } => {
                write!(
                    f,
                    "branch set {pattern_vertex} names vertex {vertex} outside the host"
                )
            }
            ModelViolation::Empty { pattern_vertex } => {
                write!(f, "branch set {pattern_vertex} is empty")
            }
            ModelViolation::Overlap {
                first,
                second,
                vertex,
            } => {
                write!(f, "branch sets {first} and {second} share vertex {vertex}")
            }
            ModelViolation::Disconnected { pattern_vertex } => {
                write!(f, "branch set {pattern_vertex} is disconnected")
            }
            ModelViolation::MissingContact { first, second } => {
                write!(f, "branch sets {first} and {second} must see each other")
            }
            ModelViolation::ExtraContact { first, second } => {
                write!(f, "branch sets {first} and {second} must be anticomplete")
            }
        }
    }
}

impl BranchModel {
    pub fn new(pattern: Graph, host: Graph, branch_sets: Vec<VertexSet>) -> Self {
        BranchModel {
            pattern,
            host,
            branch_sets,
        }
    }

    /// All vertices used by the model, sorted.
    pub fn union(&self) -> VertexSet {
        self.branch_sets.iter().flat_map(|s| s.iter()).collect()
    }

    pub fn size(&self) -> usize {
        self.branch_sets.iter().map(VertexSet::len).sum()
    }

    /// Induced-minor model check.
    pub fn verify(&self) -> Result<(), ModelViolation> {
        verify_sets(&self.host, &self.pattern, &self.branch_sets, true)
    }

    /// Minor model check: non-edges of the pattern may touch.
    pub fn verify_minor(&self) -> Result<(), ModelViolation> {
        verify_sets(&self.host, &self.pattern, &self.branch_sets, false)
    }
}

/// `true` iff `m` is a valid induced-minor model.
pub fn verify_model(m: &BranchModel) -> bool {
    m.verify().is_ok()
}

fn verify_sets(
    host: &Graph,
    pattern: &Graph,
    sets: &[VertexSet],
    induced: bool,
) -> Result<(), ModelViolation> {
    if sets.len() != pattern.n() {
        return Err(ModelViolation::WrongCount {
            expected: pattern.n(),
            got: sets.len(),
        });
    }
    let mut owner: Vec<Option<usize>> = vec![None; host.n()];
    for (i, s) in sets.iter().enumerate() {
        for v in s.iter() {
            if v >= host.n() {
                return Err(ModelViolation::OutOfRange {
                    pattern_vertex: i,
                    vertex: v,
                });
            }
        }
    }
    for (i, s) in sets.iter().enumerate() {
        if s.is_empty() {
            return Err(ModelViolation::Empty { pattern_vertex: i });
        }
        for v in s.iter() {
            if let Some(j) = owner[v] {
                return Err(ModelViolation::Overlap {
                    first: j,
                    second: i,
                    vertex: v,
                });
            }
            owner[v] = Some(i);
        }
    }
    for (i, s) in sets.iter().enumerate() {
        let bits = s.to_bits(host.n()).expect("ids checked");
        if !host.is_connected_bits(&bits) {
            return Err(ModelViolation::Disconnected { pattern_vertex: i });
        }
    }
    let k = pattern.n();
    let mut touch = vec![vec![false; k]; k];
    for (u, v) in host.edges() {
        if let (Some(i), Some(j)) = (owner[u], owner[v]) {
            if i != j {
                touch[i][j] = true;
                touch[j][i] = true;
            }
        }
    }
    for i in 0..k {
        for j in i + 1..k {
            let edge = pattern.has_edge(i, j);
            if edge && !touch[i][j] {
                return Err(ModelViolation::MissingContact {
                    first: i,
                    second: j,
                });
            }
            if induced && !edge && touch[i][j] {
                return Err(ModelViolation::ExtraContact {
                    first: i,
                    second: j,
                });
            }
        }
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Relation {
    InducedSubgraph,
    InducedMinor,
    Minor,
}

impl Relation {
    pub fn as_str(self) -> &'static str {
        match self {
            Relation::InducedSubgraph => "induced-subgraph",
            Relation::InducedMinor => "induced-minor",
            Relation::Minor => "minor",
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Relation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "induced-subgraph" => Ok(Relation::InducedSubgraph),
            "induced-minor" => Ok(Relation::InducedMinor),
            "minor" => Ok(Relation::Minor),
            other => Err(Error::InvalidInput(format!("unknown relation {other:?}"))),
        }
    }
}

/// Outcome of one containment query. For induced subgraphs the branch sets
/// are singletons (`branch_sets[i] = {image of i}`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContainmentReport {
    pub relation: Relation,
    pub status: Status,
    pub branch_sets: Option<Vec<VertexSet>>,
    pub nodes: u64,
    pub elapsed: Duration,
}

impl ContainmentReport {
    pub fn found(&self) -> bool {
        self.status == Status::Found
    }

    pub fn is_indeterminate(&self) -> bool {
        self.status == Status::Indeterminate
    }

    /// The witness as a model of `pattern` in `host`.
    pub fn model(&self, host: &Graph, pattern: &Graph) -> Option<BranchModel> {
        self.branch_sets
            .as_ref()
            .map(|s| BranchModel::new(pattern.clone(), host.clone(), s.clone()))
    }

    /// Independent re-check of the witness against the relation.
    pub fn verify_witness(&self, host: &Graph, pattern: &Graph) -> bool {
        let Some(sets) = &self.branch_sets else {
            return !self.found();
        };
        match self.relation {
            Relation::InducedMinor => verify_sets(host, pattern, sets, true).is_ok(),
            Relation::Minor => verify_sets(host, pattern, sets, false).is_ok(),
            Relation::InducedSubgraph => {
                sets.iter().all(|s| s.len() == 1) && verify_sets(host, pattern, sets, true).is_ok()
            }
        }
    }

    fn build(
        relation: Relation,
        result: Search<Vec<VertexSet>>,
        budget: &Budget,
        start: Stopwatch,
    ) -> Self {
        let status = result.status();
        ContainmentReport {
            relation,
            status,
            branch_sets: result.into_found(),
            nodes: budget.used(),
            elapsed: start.elapsed(),
        }
    }
}

/// Dispatch on the relation with an explicit node budget.
pub fn contains(
    host: &Graph,
    pattern: &Graph,
    relation: Relation,
    budget: u64,
) -> ContainmentReport {
    let start = Stopwatch::start();
    let mut b = Budget::new(budget);
    let result = match relation {
        Relation::InducedSubgraph => subgraph::search(host, pattern, &mut b)
            .map(|map| map.into_iter().map(|v| VertexSet::new([v])).collect()),
        Relation::InducedMinor => minor::search(host, pattern, true, &mut b),
        Relation::Minor => minor::search(host, pattern, false, &mut b),
    };
    ContainmentReport::build(relation, result, &b, start)
}

/// Injective map preserving edges and non-edges, by backtracking.
pub fn contains_induced_subgraph(host: &Graph, pattern: &Graph) -> ContainmentReport {
    contains(
        host,
        pattern,
        Relation::InducedSubgraph,
        crate::search::DEFAULT_BUDGET,
    )
}

pub fn contains_induced_minor(host: &Graph, pattern: &Graph) -> ContainmentReport {
    contains(
        host,
        pattern,
        Relation::InducedMinor,
        crate::search::DEFAULT_BUDGET,
    )
}

pub fn contains_minor(host: &Graph, pattern: &Graph) -> ContainmentReport {
    contains(
        host,
        pattern,
        Relation::Minor,
        crate::search::DEFAULT_BUDGET,
    )
}
