//! Induced subgraph isomorphism by backtracking over pattern vertices in a
//! connectivity-first order. Candidates for the next pattern vertex are the
//! unused host vertices adjacent to the images of its placed neighbors and
//! nonadjacent to the images of its placed non-neighbors. Twin pattern
//! vertices receive increasing images.

use fixedbitset::FixedBitSet;

use crate::graph::{Graph, Vertex};
use crate::search::{Budget, OutOfBudget, Search};

struct Matcher<'a> {
    host: &'a Graph,
    pattern: &'a Graph,
    order: Vec<usize>,
    /// Twins of each pattern vertex, excluding itself.
    twins: Vec<Vec<usize>>,
    image: Vec<Option<Vertex>>,
    used: FixedBitSet,
    budget: &'a mut Budget,
}

fn matching_order(pattern: &Graph) -> Vec<usize> {
    let k = pattern.n();
    let mut placed = vec![false; k];
    let mut links = vec![0usize; k];
    let mut order = Vec::with_capacity(k);
    for _ in 0..k {
        let next = (0..k)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| (links[v], pattern.degree(v), std::cmp::Reverse(v)))
            .unwrap();
        placed[next] = true;
        order.push(next);
        for &w in pattern.neighbors(next) {
            links[w] += 1;
        }
    }
    order
}

impl Matcher<'_> {
    fn candidates(&self, v: usize) -> FixedBitSet {
        let mut cand = self.host.all_vertices();
        cand.difference_with(&self.used);
        for u in 0..self.pattern.n() {
            let Some(x) = self.image[u] else { continue };
            if self.pattern.has_edge(u, v) {
                cand.intersect_with(self.host.row(x));
            } else {
                cand.difference_with(self.host.row(x));
            }
        }
        cand
    }

    fn extend(&mut self, depth: usize) -> Result<bool, OutOfBudget> {
        if depth == self.order.len() {
            return Ok(true);
        }
        let v = self.order[depth];
        let need = self.pattern.degree(v);
        let cand = self.candidates(v);
        for x in cand.ones() {
            if self.host.degree(x) < need {
                continue;
            }
            let ordered = self.twins[v].iter().all(|&t| match self.image[t] {
                Some(y) if t < v => y < x,
                Some(y) => x < y,
                None => true,
            });
            if !ordered {
                continue;
            }
            self.budget.tick()?;
            self.image[v] = Some(x);
            self.used.insert(x);
            if self.extend(depth + 1)? {
                return Ok(true);
            }
            self.image[v] = None;
            self.used.set(x, false);
        }
        Ok(false)
    }
}

/// Image of each pattern vertex.
pub(super) fn search(host: &Graph, pattern: &Graph, budget: &mut Budget) -> Search<Vec<Vertex>> {
    let k = pattern.n();
    if k > host.n() || pattern.m() > host.m() {
        return Search::NotFound;
    }
    let twins = (0..k)
        .map(|u| {
            (0..k)
                .filter(|&v| {
                    let mut a = pattern.row(u).clone();
                    let mut b = pattern.row(v).clone();
                    a.set(v, false);
                    b.set(u, false);
                    v != u && a == b
                })
                .collect()
        })
        .collect();
    let mut m = Matcher {
        host,
        pattern,
        order: matching_order(pattern),
        twins,
        image: vec![None; k],
        used: host.no_vertices(),
        budget,
    };
    match m.extend(0) {
        Err(OutOfBudget) => Search::Indeterminate,
        Ok(false) => Search::NotFound,
        Ok(true) => Search::Found(
            m.image
                .into_iter()
                .map(|x| x.expect("all placed"))
                .collect(),
        ),
    }
}
