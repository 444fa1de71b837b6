//! Exact induced-minor and minor search.
//!
//! The search grows branch sets on demand. A state fixes a partial set
//! `X_t` and a domain `D_t` for every pattern vertex and stands for all
//! models with `X_t ⊆ X*_t ⊆ X_t ∪ D_t`. Invariants:
//! - every `X_t` is connected, and the `X_t`, `D_t` avoid used vertices;
//! - in induced mode `D_t` avoids `N(X_s)` for every pattern non-neighbor `s`;
//! - empty pattern vertices in one twin class have equal domains.
//!
//! Each step picks the unsatisfied pattern edge with the fewest moves (a
//! vertex to add to one endpoint's set) and branches binary: take the move,
//! or forbid it. Some model containing the state contains one of the moves,
//! so the branching is complete. Seeds go only to the lowest-index empty
//! twin; any model can be permuted among empty twins to agree.
//!
//! Runs restart with doubling node limits and a fresh seeded tie-break
//! order, which cuts the heavy tail of unlucky early seeds. A run that ends
//! within its limit is a complete answer; the doubling bounds the extra work
//! of a "not found" proof by a factor of about two.

use fixedbitset::FixedBitSet;

use rand::seq::SliceRandom;

use crate::generators::rng_for;
use crate::graph::{Graph, Vertex, VertexSet};
use crate::search::{Budget, OutOfBudget, Search};

#[derive(Clone)]
struct State {
    sets: Vec<FixedBitSet>,
    size: Vec<usize>,
    /// `N(X_t)`, including members of `X_t` adjacent to each other.
    nbhd: Vec<FixedBitSet>,
    dom: Vec<FixedBitSet>,
}

struct Engine<'a> {
    host: &'a Graph,
    induced: bool,
    k: usize,
    padj: Vec<Vec<bool>>,
    edges: Vec<(usize, usize)>,
    /// Members of each vertex's twin class, ascending.
    class: Vec<Vec<usize>>,
    /// Tie-break rank of each host vertex.
    rank: Vec<usize>,
    budget: Budget,
}

const FIRST_RUN_LIMIT: u64 = 2_000;
const RESTART_SEED: u64 = 0x1d_5eed;

enum Outcome {
    Found(Vec<FixedBitSet>),
    Exhausted,
}

#[derive(Clone, Copy)]
enum Move {
    Grow(usize, Vertex),
    Seed(usize, Vertex),
}

fn twin_classes(pattern: &Graph) -> Vec<Vec<usize>> {
    let k = pattern.n();
    let mut class = vec![Vec::new(); k];
    for u in 0..k {
        for v in 0..k {
            let open = {
                let mut a = pattern.row(u).clone();
                let mut b = pattern.row(v).clone();
                a.set(v, false);
                b.set(u, false);
                a == b
            };
            if u == v || open {
                class[u].push(v);
            }
        }
    }
    class
}

/// Order pattern vertices so the search seeds a high-degree vertex first and
/// then stays near already-seeded vertices.
fn pattern_order(pattern: &Graph) -> Vec<usize> {
    let k = pattern.n();
    let mut seen = vec![false; k];
    let mut order = Vec::with_capacity(k);
    while order.len() < k {
        let root = (0..k)
            .filter(|&v| !seen[v])
            .max_by_key(|&v| (pattern.degree(v), std::cmp::Reverse(v)))
            .unwrap();
        seen[root] = true;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            let mut next: Vec<usize> = pattern
                .neighbors(v)
                .iter()
                .copied()
                .filter(|&w| !seen[w])
                .collect();
            next.sort_by_key(|&w| (std::cmp::Reverse(pattern.degree(w)), w));
            for w in next {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    order
}

impl Engine<'_> {
    fn sees(&self, st: &State, u: usize, v: usize) -> bool {
        !st.nbhd[u].is_disjoint(&st.sets[v])
    }

    fn add(&self, st: &mut State, t: usize, w: Vertex) {
        st.sets[t].insert(w);
        st.size[t] += 1;
        st.nbhd[t].union_with(self.host.row(w));
        for d in &mut st.dom {
            d.set(w, false);
        }
        if self.induced {
            for s in 0..self.k {
                if s != t && !self.padj[t][s] {
                    st.dom[s].difference_with(self.host.row(w));
                }
            }
        }
    }

    fn lowest_empty_twin(&self, st: &State, t: usize) -> usize {
        *self.class[t]
            .iter()
            .find(|&&s| st.size[s] == 0)
            .expect("t itself is empty")
    }

    /// Necessary conditions: each empty set has a domain, and the two ends of
    /// every unsatisfied edge can still reach each other.
    fn feasible(&self, st: &State) -> bool {
        let mut reach: Vec<Option<FixedBitSet>> = vec![None; self.k];
        for &(u, v) in &self.edges {
            if self.sees(st, u, v) {
                continue;
            }
            for t in [u, v] {
                if reach[t].is_none() {
                    let r = if st.size[t] == 0 {
                        st.dom[t].clone()
                    } else {
                        let mut within = st.dom[t].clone();
                        within.union_with(&st.sets[t]);
                        self.host.reach(&st.sets[t], &within)
                    };
                    reach[t] = Some(r);
                }
            }
            let (ru, rv) = (reach[u].as_ref().unwrap(), reach[v].as_ref().unwrap());
            if ru.is_disjoint(rv) && !self.host.sees_bits(ru, rv) {
                return false;
            }
        }
        (0..self.k).all(|t| st.size[t] > 0 || !st.dom[t].is_clear())
    }

    /// BFS distance from `X_b` to every vertex, moving only through `region`.
    fn distances(&self, st: &State, b: usize, region: &FixedBitSet) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.host.n()];
        let mut queue = std::collections::VecDeque::new();
        for x in st.sets[b].ones() {
            dist[x] = 0;
            queue.push_back(x);
        }
        while let Some(x) = queue.pop_front() {
            for &y in self.host.neighbors(x) {
                if dist[y] == usize::MAX && region.contains(y) {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    /// Next move: on the unsatisfied edge with the fewest moves, the move
    /// closest to the other endpoint's set; with every edge satisfied, a seed
    /// for the lowest empty pattern vertex, high host degree first.
    fn choose(&self, st: &State) -> Result<Option<Move>, ()> {
        let mut best: Option<(usize, usize, usize)> = None;
        for &(u, v) in &self.edges {
            if st.size[u] == 0 && st.size[v] == 0 || self.sees(st, u, v) {
                continue;
            }
            let mut count = 0;
            for (a, b) in [(u, v), (v, u)] {
                let mut moves = if st.size[a] > 0 {
                    st.nbhd[a].clone()
                } else {
                    st.nbhd[b].clone()
                };
                moves.intersect_with(
                    &st.dom[if st.size[a] > 0 {
                        a
                    } else {
                        self.lowest_empty_twin(st, a)
                    }],
                );
                count += moves.count_ones(..);
            }
            if count == 0 {
                return Err(());
            }
            if best.is_none_or(|(c, _, _)| count < c) {
                best = Some((count, u, v));
            }
        }
        if let Some((_, u, v)) = best {
            let mut pick: Option<((usize, usize), Move)> = None;
            for (a, b) in [(u, v), (v, u)] {
                if st.size[a] == 0 {
                    let t = self.lowest_empty_twin(st, a);
                    let mut seeds = st.nbhd[b].clone();
                    seeds.intersect_with(&st.dom[t]);
                    if let Some(w) = seeds.ones().min_by_key(|&w| self.rank[w]) {
                        let key = (1, self.rank[w]);
                        if pick.as_ref().is_none_or(|(k, _)| key < *k) {
                            pick = Some((key, Move::Seed(t, w)));
                        }
                    }
                    continue;
                }
                let mut grow = st.nbhd[a].clone();
                grow.intersect_with(&st.dom[a]);
                if grow.is_clear() {
                    continue;
                }
                let dist = if st.size[b] > 0 {
                    let mut region = st.dom[a].clone();
                    region.union_with(&st.dom[b]);
                    self.distances(st, b, &region)
                } else {
                    vec![usize::MAX; self.host.n()]
                };
                for w in grow.ones() {
                    let key = (dist[w], self.rank[w]);
                    if pick.as_ref().is_none_or(|(k, _)| key < *k) {
                        pick = Some((key, Move::Grow(a, w)));
                    }
                }
            }
            return Ok(pick.map(|(_, m)| m));
        }
        match (0..self.k).find(|&t| st.size[t] == 0) {
            None => Ok(None),
            Some(t) => {
                let w = st.dom[t]
                    .ones()
                    .max_by_key(|&w| (self.host.degree(w), std::cmp::Reverse(self.rank[w])));
                match w {
                    Some(w) => Ok(Some(Move::Seed(t, w))),
                    None => Err(()),
                }
            }
        }
    }

    fn solve(&mut self, mut st: State) -> Result<Outcome, OutOfBudget> {
        loop {
            self.budget.tick()?;
            if !self.feasible(&st) {
                return Ok(Outcome::Exhausted);
            }
            let mv = match self.choose(&st) {
                Err(()) => return Ok(Outcome::Exhausted),
                Ok(None) => return Ok(Outcome::Found(st.sets)),
                Ok(Some(mv)) => mv,
            };
            let mut child = st.clone();
            match mv {
                Move::Grow(t, w) | Move::Seed(t, w) => self.add(&mut child, t, w),
            }
            if let Outcome::Found(sets) = self.solve(child)? {
                return Ok(Outcome::Found(sets));
            }
            match mv {
                Move::Grow(t, w) => st.dom[t].set(w, false),
                Move::Seed(t, w) => {
                    for &s in &self.class[t] {
                        if st.size[s] == 0 {
                            st.dom[s].set(w, false);
                        }
                    }
                }
            }
        }
    }
}

/// Sound host reductions. With pattern minimum degree at least 2, host
/// vertices of degree at most 1 lie in no minimal model; for plain minors with
/// minimum degree at least 3, a degree-2 vertex can be merged into a neighbor.
/// Returns the reduced host and, per reduced vertex, the host vertices it
/// stands for (each bag is connected and realizes every reduced edge).
fn reduce(host: &Graph, pattern: &Graph, induced: bool) -> (Graph, Vec<Vec<Vertex>>) {
    let min_deg = (0..pattern.n())
        .map(|v| pattern.degree(v))
        .min()
        .unwrap_or(0);
    let n = host.n();
    let mut adj: Vec<std::collections::BTreeSet<Vertex>> = (0..n)
        .map(|v| host.neighbors(v).iter().copied().collect())
        .collect();
    let mut bags: Vec<Vec<Vertex>> = (0..n).map(|v| vec![v]).collect();
    let mut alive = vec![true; n];
    if min_deg >= 2 {
        let mut changed = true;
        while changed {
            changed = false;
            for v in 0..n {
                if !alive[v] {
                    continue;
                }
                let d = adj[v].len();
                if d <= 1 {
                    alive[v] = false;
                    for w in std::mem::take(&mut adj[v]) {
                        adj[w].remove(&v);
                    }
                    changed = true;
                } else if d == 2 && min_deg >= 3 && !induced {
                    let mut it = adj[v].iter().copied();
                    let (x, y) = (it.next().unwrap(), it.next().unwrap());
                    alive[v] = false;
                    adj[v].clear();
                    adj[x].remove(&v);
                    adj[y].remove(&v);
                    adj[x].insert(y);
                    adj[y].insert(x);
                    let moved = std::mem::take(&mut bags[v]);
                    bags[x].extend(moved);
                    changed = true;
                }
            }
        }
    }
    let keep: Vec<Vertex> = (0..n).filter(|&v| alive[v]).collect();
    let mut id = vec![usize::MAX; n];
    for (i, &v) in keep.iter().enumerate() {
        id[v] = i;
    }
    let edges: Vec<(Vertex, Vertex)> = keep
        .iter()
        .flat_map(|&v| adj[v].iter().filter(move |&&w| v < w).map(move |&w| (v, w)))
        .map(|(v, w)| (id[v], id[w]))
        .collect();
    let reduced = Graph::from_edges(keep.len(), &edges).expect("reduction keeps the graph simple");
    let bags = keep.iter().map(|&v| bags[v].clone()).collect();
    (reduced, bags)
}

pub(super) fn search(
    host: &Graph,
    pattern: &Graph,
    induced: bool,
    budget: &mut Budget,
) -> Search<Vec<VertexSet>> {
    let k = pattern.n();
    if k == 0 {
        return Search::Found(Vec::new());
    }
    if k > host.n() {
        return Search::NotFound;
    }
    let (reduced, bags) = reduce(host, pattern, induced);
    if k > reduced.n() {
        return Search::NotFound;
    }
    let order = pattern_order(pattern);
    let mut pos = vec![0; k];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let relabeled: Vec<(usize, usize)> = pattern.edges().map(|(u, v)| (pos[u], pos[v])).collect();
    let inner = Graph::from_edges(k, &relabeled).expect("relabeling keeps edges valid");
    let mut edges: Vec<(usize, usize)> = inner.edges().collect();
    edges.sort_by_key(|&(u, v)| (u.max(v), u.min(v)));
    let padj: Vec<Vec<bool>> = (0..k)
        .map(|u| (0..k).map(|v| inner.has_edge(u, v)).collect())
        .collect();
    let class = twin_classes(&inner);
    let padj: Vec<Vec<bool>> = padj;
    let all = reduced.all_vertices();
    let initial = State {
        sets: vec![reduced.no_vertices(); k],
        size: vec![0; k],
        nbhd: vec![reduced.no_vertices(); k],
        dom: vec![all; k],
    };
    let mut limit = FIRST_RUN_LIMIT;
    for run in 0u64.. {
        let remaining = budget.remaining();
        if remaining == 0 {
            return Search::Indeterminate;
        }
        let mut rank: Vec<usize> = (0..reduced.n()).collect();
        if run > 0 {
            rank.shuffle(&mut rng_for(RESTART_SEED, run));
        }
        let mut engine = Engine {
            host: &reduced,
            induced,
            k,
            padj: padj.clone(),
            edges: edges.clone(),
            class: class.clone(),
            rank,
            budget: Budget::new(limit.min(remaining)),
        };
        let result = engine.solve(initial.clone());
        budget.charge(engine.budget.used().min(limit.min(remaining)));
        match result {
            Err(OutOfBudget) => limit = limit.saturating_mul(2),
            Ok(Outcome::Exhausted) => return Search::NotFound,
            Ok(Outcome::Found(sets)) => {
                return Search::Found(
                    (0..k)
                        .map(|v| {
                            sets[pos[v]]
                                .ones()
                                .flat_map(|r| bags[r].iter().copied())
                                .collect::<VertexSet>()
                        })
                        .collect(),
                )
            }
        }
    }
    unreachable!("the run loop returns once the budget is spent")
}
