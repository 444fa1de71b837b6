//! Holes, even holes and wheels, for probing rather than proving.
//!
//! Holes are enumerated once each: the cycle starts at its smallest vertex
//! and its second vertex is smaller than its last.

use std::ops::ControlFlow;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::graph::{Graph, Vertex};
use crate::search::{Budget, OutOfBudget, Search, DEFAULT_BUDGET};

/// A chordless cycle on at least 4 vertices, in cyclic order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HoleWitness {
    pub cycle: Vec<Vertex>,
}

impl HoleWitness {
    pub fn len(&self) -> usize {
        self.cycle.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycle.is_empty()
    }
}

/// Whether the sequence is a hole of `g`: distinct vertices, at least 4, and
/// adjacent exactly when cyclically consecutive.
pub fn verify_hole(g: &Graph, cycle: &[Vertex]) -> bool {
    let k = cycle.len();
    if k < 4 || cycle.iter().any(|&v| v >= g.n()) {
        return false;
    }
    let distinct: std::collections::BTreeSet<_> = cycle.iter().collect();
    if distinct.len() != k {
        return false;
    }
    (0..k).all(|i| {
        (i + 1..k).all(|j| {
            let consecutive = j == i + 1 || (i == 0 && j == k - 1);
            g.has_edge(cycle[i], cycle[j]) == consecutive
        })
    })
}

/// Calls `visit` on every hole until it breaks. Errors when the budget runs
/// out first.
fn for_each_hole(
    g: &Graph,
    budget: &mut Budget,
    visit: &mut dyn FnMut(&[Vertex]) -> ControlFlow<()>,
) -> Result<ControlFlow<()>, OutOfBudget> {
    fn extend(
        g: &Graph,
        path: &mut Vec<Vertex>,
        blocked: &FixedBitSet,
        budget: &mut Budget,
        visit: &mut dyn FnMut(&[Vertex]) -> ControlFlow<()>,
    ) -> Result<ControlFlow<()>, OutOfBudget> {
        budget.tick()?;
        let s = path[0];
        let tip = *path.last().unwrap();
        for &w in g.neighbors(tip) {
            if w <= s || blocked.contains(w) || path.contains(&w) {
                continue;
            }
            if g.has_edge(w, s) {
                // closing; a third vertex seeing `s` would be a chord
                if path.len() >= 3 && path[1] < w {
                    path.push(w);
                    let flow = visit(path);
                    path.pop();
                    if flow.is_break() {
                        return Ok(flow);
                    }
                }
                continue;
            }
            let mut next = blocked.clone();
            next.union_with(g.row(tip));
            path.push(w);
            let flow = extend(g, path, &next, budget, visit)?;
            path.pop();
            if flow.is_break() {
                return Ok(flow);
            }
        }
        Ok(ControlFlow::Continue(()))
    }
    for s in 0..g.n() {
        for &v in g.neighbors(s).iter().filter(|&&v| v > s) {
            let mut path = vec![s, v];
            let blocked = g.no_vertices();
            if extend(g, &mut path, &blocked, budget, visit)?.is_break() {
                return Ok(ControlFlow::Break(()));
            }
        }
    }
    Ok(ControlFlow::Continue(()))
}

fn first_hole(g: &Graph, budget: u64, keep: impl Fn(usize) -> bool) -> Search<HoleWitness> {
    let mut found = None;
    let mut visit = |c: &[Vertex]| {
        if keep(c.len()) {
            found = Some(HoleWitness { cycle: c.to_vec() });
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    };
    match for_each_hole(g, &mut Budget::new(budget), &mut visit) {
        Err(OutOfBudget) => Search::Indeterminate,
        Ok(_) => match found {
            Some(h) => {
                debug_assert!(verify_hole(g, &h.cycle));
                Search::Found(h)
            }
            None => Search::NotFound,
        },
    }
}

pub fn contains_hole(g: &Graph) -> Search<HoleWitness> {
    first_hole(g, DEFAULT_BUDGET, |_| true)
}

pub fn contains_even_hole(g: &Graph) -> Search<HoleWitness> {
    first_hole(g, DEFAULT_BUDGET, |k| k % 2 == 0)
}

/// A hole (the rim) with a vertex off it seeing at least 3 rim vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Wheel {
    pub center: Vertex,
    pub rim: Vec<Vertex>,
    pub rim_neighbors: usize,
}

/// Wheels found by [`find_wheels`]; `complete` is false when the budget cut
/// the hole enumeration short.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WheelScan {
    pub wheels: Vec<Wheel>,
    pub complete: bool,
}

pub fn find_wheels(g: &Graph, budget: u64) -> WheelScan {
    let mut wheels = Vec::new();
    let mut visit = |c: &[Vertex]| {
        for center in (0..g.n()).filter(|v| !c.contains(v)) {
            let k = c.iter().filter(|&&x| g.has_edge(center, x)).count();
            if k >= 3 {
                wheels.push(Wheel {
                    center,
                    rim: c.to_vec(),
                    rim_neighbors: k,
                });
            }
        }
        ControlFlow::Continue(())
    };
    let complete = for_each_hole(g, &mut Budget::new(budget), &mut visit).is_ok();
    WheelScan { wheels, complete }
}

/// Whether `rim` is a hole and `center` is off it with an even number, at
/// least 4, of neighbors on it.
pub fn is_even_wheel(g: &Graph, center: Vertex, rim: &[Vertex]) -> bool {
    if center >= g.n() || rim.contains(&center) || !verify_hole(g, rim) {
        return false;
    }
    let k = rim.iter().filter(|&&x| g.has_edge(center, x)).count();
    k >= 3 && k % 2 == 0
}
