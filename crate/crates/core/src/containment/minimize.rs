//! Model minimization and the structural checks that minimal models satisfy.

use fixedbitset::FixedBitSet;
use serde::Serialize;

use super::{contains, BranchModel, Relation};
use crate::error::{precondition, Result};
use crate::graph::{induced_subgraph_bits, Graph, Vertex, VertexSet};
use crate::search::DEFAULT_BUDGET;

#[derive(Clone, Debug, PartialEq)]
pub struct MinimizeOptions {
    /// Certify minimality by re-searching the union minus each vertex.
    pub exact: bool,
    /// Skip the exact pass for unions larger than this.
    pub exact_union_cap: usize,
    /// Pattern vertices whose branch sets are left untouched. Any frozen set
    /// disables the exact pass, whose re-search may move every set.
    pub frozen: Vec<usize>,
    /// Node budget per re-search.
    pub budget: u64,
}

impl Default for MinimizeOptions {
    fn default() -> Self {
        MinimizeOptions {
            exact: true,
            exact_union_cap: 40,
            frozen: Vec::new(),
            budget: DEFAULT_BUDGET,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Minimized {
    pub model: BranchModel,
    /// Every single-vertex deletion from the union was re-searched and
    /// admits no model.
    pub certified: bool,
    /// Vertices removed by the local repair rule.
    pub repaired: usize,
    /// Times the exact pass found a model on a smaller union.
    pub researched: usize,
}

/// Minimizes with default options and returns the model.
pub fn minimize_model(m: &BranchModel) -> Result<BranchModel> {
    Ok(minimize_model_with(m, &MinimizeOptions::default())?.model)
}

fn bits(g: &Graph, s: &VertexSet) -> FixedBitSet {
    s.to_bits(g.n()).expect("model sets are in range")
}

/// One application of the repair rule: delete `a` from its set and keep the
/// lowest component of the rest that still sees every required neighbor set.
fn try_remove(m: &BranchModel, sets: &mut [FixedBitSet], owner: usize, a: Vertex) -> bool {
    let g = &m.host;
    let mut rest = sets[owner].clone();
    rest.set(a, false);
    if rest.is_clear() {
        return false;
    }
    for comp in g.components_of(&rest) {
        let ok = m
            .pattern
            .neighbors(owner)
            .iter()
            .all(|&u| g.sees_bits(&comp, &sets[u]));
        if ok {
            sets[owner] = comp;
            return true;
        }
    }
    false
}

fn repair_pass(m: &BranchModel, sets: &mut [FixedBitSet], frozen: &[bool]) -> usize {
    let mut removed = 0;
    'scan: loop {
        let mut union = m.host.no_vertices();
        for s in sets.iter() {
            union.union_with(s);
        }
        for a in union.ones() {
            let owner = sets
                .iter()
                .position(|s| s.contains(a))
                .expect("a is in the union");
            if frozen[owner] {
                continue;
            }
            let before = sets[owner].count_ones(..);
            if try_remove(m, sets, owner, a) {
                removed += before - sets[owner].count_ones(..);
                continue 'scan;
            }
        }
        return removed;
    }
}

pub fn minimize_model_with(m: &BranchModel, opts: &MinimizeOptions) -> Result<Minimized> {
    if let Err(v) = m.verify() {
        return precondition(format!("input is not a valid model: {v}"));
    }
    let k = m.pattern.n();
    let mut frozen = vec![false; k];
    for &f in &opts.frozen {
        if f >= k {
            return precondition(format!("frozen pattern vertex {f} out of range"));
        }
        frozen[f] = true;
    }
    let g = &m.host;
    let mut sets: Vec<FixedBitSet> = m.branch_sets.iter().map(|s| bits(g, s)).collect();
    let mut repaired = repair_pass(m, &mut sets, &frozen);
    let mut researched = 0;
    let mut certified = false;
    if opts.exact && opts.frozen.is_empty() {
        'exact: loop {
            let mut union = g.no_vertices();
            for s in &sets {
                union.union_with(s);
            }
            if union.count_ones(..) > opts.exact_union_cap {
                break;
            }
            let mut all_refuted = true;
            for a in union.ones() {
                let mut within = union.clone();
                within.set(a, false);
                let (sub, relabel) = induced_subgraph_bits(g, &within);
                let report = contains(&sub, &m.pattern, Relation::InducedMinor, opts.budget);
                if let Some(found) = report.branch_sets {
                    sets = found
                        .iter()
                        .map(|s| {
                            let mut b = g.no_vertices();
                            for v in s.iter() {
                                b.insert(relabel.new_to_old[v]);
                            }
                            b
                        })
                        .collect();
                    researched += 1;
                    repaired += repair_pass(m, &mut sets, &frozen);
                    continue 'exact;
                }
                if report.is_indeterminate() {
                    all_refuted = false;
                }
            }
            certified = all_refuted;
            break;
        }
    }
    let model = BranchModel::new(
        m.pattern.clone(),
        m.host.clone(),
        sets.iter().map(VertexSet::from_bits).collect(),
    );
    debug_assert!(model.verify().is_ok());
    Ok(Minimized {
        model,
        certified,
        repaired,
        researched,
    })
}

/// Length of a longest cycle in `G[set]` (0 when acyclic). Exponential in the
/// worst case; meant for branch sets.
pub fn longest_cycle_in(g: &Graph, set: &VertexSet) -> usize {
    let members: Vec<Vertex> = set.iter().collect();
    let inside = bits(g, set);
    let edges: usize = members
        .iter()
        .map(|&v| g.row(v).intersection(&inside).count())
        .sum::<usize>()
        / 2;
    let comps = g.components_of(&inside).len();
    if edges + comps == members.len() {
        return 0;
    }
    let mut best = 0;
    let mut on_path = g.no_vertices();
    fn dfs(
        g: &Graph,
        inside: &FixedBitSet,
        start: Vertex,
        v: Vertex,
        len: usize,
        on: &mut FixedBitSet,
        best: &mut usize,
    ) {
        for &w in g.neighbors(v) {
            if !inside.contains(w) || w < start {
                continue;
            }
            if w == start && len >= 3 {
                *best = (*best).max(len);
            } else if w != start && !on.contains(w) {
                on.insert(w);
                dfs(g, inside, start, w, len + 1, on, best);
                on.set(w, false);
            }
        }
    }
    for &s in &members {
        on_path.insert(s);
        dfs(g, &inside, s, s, 1, &mut on_path, &mut best);
        on_path.set(s, false);
    }
    best
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GirthTreeViolation {
    pub pattern_vertex: usize,
    pub longest_cycle: usize,
    pub degree: usize,
}

/// Branch sets containing a cycle longer than the degree of their pattern
/// vertex.
pub fn girth_tree_violations(m: &BranchModel) -> Vec<GirthTreeViolation> {
    (0..m.pattern.n())
        .filter_map(|v| {
            let longest = longest_cycle_in(&m.host, &m.branch_sets[v]);
            let degree = m.pattern.degree(v);
            (longest > degree).then_some(GirthTreeViolation {
                pattern_vertex: v,
                longest_cycle: longest,
                degree,
            })
        })
        .collect()
}

/// No branch set has a cycle longer than its pattern vertex's degree.
pub fn check_girth_tree_property(m: &BranchModel) -> bool {
    girth_tree_violations(m).is_empty()
}

/// For each leaf `w` of the branch tree of `pattern_vertex`, the first
/// pattern vertex whose branch set meets that tree only at `w`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrivateBranchSets {
    pub pattern_vertex: usize,
    /// Single-vertex trees have no degree-1 vertices and are not checked.
    pub exempt: bool,
    pub leaves: Vec<(Vertex, Option<usize>)>,
}

impl PrivateBranchSets {
    /// Leaves with no private branch set.
    pub fn violations(&self) -> Vec<Vertex> {
        self.leaves
            .iter()
            .filter(|(_, p)| p.is_none())
            .map(|&(w, _)| w)
            .collect()
    }
}

pub fn private_branch_sets(m: &BranchModel, pattern_vertex: usize) -> Result<PrivateBranchSets> {
    let v = pattern_vertex;
    if v >= m.pattern.n() {
        return precondition(format!("pattern vertex {v} out of range"));
    }
    let g = &m.host;
    let tree = bits(g, &m.branch_sets[v]);
    let size = tree.count_ones(..);
    let edges: usize = tree
        .ones()
        .map(|w| g.row(w).intersection(&tree).count())
        .sum::<usize>()
        / 2;
    if !g.is_connected_bits(&tree) || edges + 1 != size {
        return precondition(format!(
            "branch set of pattern vertex {v} does not induce a tree"
        ));
    }
    if size == 1 {
        return Ok(PrivateBranchSets {
            pattern_vertex: v,
            exempt: true,
            leaves: Vec::new(),
        });
    }
    let contacts: Vec<(usize, FixedBitSet)> = m
        .pattern
        .neighbors(v)
        .iter()
        .map(|&u| {
            let mut c = g.neighborhood(&bits(g, &m.branch_sets[u]));
            c.intersect_with(&tree);
            (u, c)
        })
        .collect();
    let leaves = tree
        .ones()
        .filter(|&w| g.row(w).intersection(&tree).count() == 1)
        .map(|w| {
            let private = contacts
                .iter()
                .find(|(_, c)| c.count_ones(..) == 1 && c.contains(w))
                .map(|&(u, _)| u);
            (w, private)
        })
        .collect();
    Ok(PrivateBranchSets {
        pattern_vertex: v,
        exempt: false,
        leaves,
    })
}
