//! Random hosts carrying a known induced-minor model of a pattern.

use std::collections::VecDeque;

use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng;

use super::rng_for;
use crate::containment::BranchModel;
use crate::error::{precondition, Result};
use crate::graph::{Graph, Vertex, VertexSet};

/// Shape of a realized model.
#[derive(Clone, Debug, PartialEq)]
pub struct ModelParams {
    /// Each branch set starts as a random tree on `1..=branch_budget` vertices.
    pub branch_budget: usize,
    /// Each pattern edge is realized through `0..=subdivision_budget` fresh
    /// vertices, split between the two endpoint branch sets.
    pub subdivision_budget: usize,
    /// Probability of each optional edge between pattern-adjacent branch sets.
    pub cross_edge_prob: f64,
    /// Probability of each optional edge inside a branch set.
    pub intra_edge_prob: f64,
    /// Every cycle of the host has at least this length.
    pub min_girth: Option<usize>,
    /// Randomly relabel host vertices at the end.
    pub shuffle: bool,
}

impl ModelParams {
    pub fn new(branch_budget: usize, subdivision_budget: usize) -> Self {
        ModelParams {
            branch_budget,
            subdivision_budget,
            cross_edge_prob: 0.2,
            intra_edge_prob: 0.0,
            min_girth: None,
            shuffle: true,
        }
    }
}

/// Host plus a valid induced-minor model of `pattern` in it, seeded.
pub fn realize_model(
    pattern: &Graph,
    branch_budget: usize,
    subdivision_budget: usize,
    seed: u64,
) -> Result<(Graph, BranchModel)> {
    realize_model_with(
        pattern,
        &ModelParams::new(branch_budget, subdivision_budget),
        seed,
    )
}

struct Builder {
    adj: Vec<Vec<Vertex>>,
    min_girth: Option<usize>,
}

impl Builder {
    fn add_vertex(&mut self) -> Vertex {
        self.adj.push(Vec::new());
        self.adj.len() - 1
    }

    fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u].contains(&v)
    }

    fn add_edge(&mut self, u: Vertex, v: Vertex) {
        self.adj[u].push(v);
        self.adj[v].push(u);
    }

    /// Distance from `u` to `v` if it is below `limit`.
    fn distance_below(&self, u: Vertex, v: Vertex, limit: usize) -> Option<usize> {
        let mut dist = vec![usize::MAX; self.adj.len()];
        let mut queue = VecDeque::from([u]);
        dist[u] = 0;
        while let Some(x) = queue.pop_front() {
            if x == v {
                return Some(dist[x]);
            }
            if dist[x] + 1 >= limit {
                continue;
            }
            for &y in &self.adj[x] {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        None
    }

    /// Shortest allowed number of fresh vertices on a new `u`..`v` connection.
    fn min_interior(&self, u: Vertex, v: Vertex) -> usize {
        match self.min_girth {
            None => 0,
            Some(g) => match self.distance_below(u, v, g) {
                // closing cycle has length d + interior + 1
                Some(d) => (g - 1).saturating_sub(d),
                None => 0,
            },
        }
    }
}

pub fn realize_model_with(
    pattern: &Graph,
    params: &ModelParams,
    seed: u64,
) -> Result<(Graph, BranchModel)> {
    if params.branch_budget < 1 {
        return precondition("branch-set budget must be at least 1");
    }
    if !(0.0..=1.0).contains(&params.cross_edge_prob)
        || !(0.0..=1.0).contains(&params.intra_edge_prob)
    {
        return precondition("edge probabilities must lie in [0, 1]");
    }
    let mut rng = rng_for(seed, 0);
    let mut b = Builder {
        adj: Vec::new(),
        min_girth: params.min_girth,
    };
    let mut sets: Vec<Vec<Vertex>> = Vec::with_capacity(pattern.n());

    for _ in 0..pattern.n() {
        let size = rng.random_range(1..=params.branch_budget);
        let mut set = vec![b.add_vertex()];
        for _ in 1..size {
            let parent = *set.choose(&mut rng).expect("nonempty");
            let w = b.add_vertex();
            b.add_edge(parent, w);
            set.push(w);
        }
        sets.push(set);
    }
    if params.intra_edge_prob > 0.0 {
        for set in &sets {
            for (i, &x) in set.iter().enumerate() {
                for &y in &set[i + 1..] {
                    if !b.has_edge(x, y)
                        && rng.random_bool(params.intra_edge_prob)
                        && b.min_interior(x, y) == 0
                    {
                        b.add_edge(x, y);
                    }
                }
            }
        }
    }

    for (u, v) in pattern.edges() {
        let mut choice = None;
        for _ in 0..64 {
            let x = *sets[u].choose(&mut rng).expect("nonempty");
            let y = *sets[v].choose(&mut rng).expect("nonempty");
            let len = rng.random_range(0..=params.subdivision_budget);
            let need = b.min_interior(x, y);
            choice = Some((x, y, len.max(need)));
            if len >= need {
                break;
            }
        }
        let (x, y, len) = choice.expect("at least one attempt");
        let split = rng.random_range(0..=len);
        let mut prev = x;
        for i in 0..len {
            let w = b.add_vertex();
            b.add_edge(prev, w);
            if i < split {
                sets[u].push(w);
            } else {
                sets[v].push(w);
            }
            prev = w;
        }
        if !b.has_edge(prev, y) {
            b.add_edge(prev, y);
        }
    }

    if params.cross_edge_prob > 0.0 {
        for (u, v) in pattern.edges() {
            for i in 0..sets[u].len() {
                for j in 0..sets[v].len() {
                    let (x, y) = (sets[u][i], sets[v][j]);
                    if !b.has_edge(x, y)
                        && rng.random_bool(params.cross_edge_prob)
                        && b.min_interior(x, y) == 0
                    {
                        b.add_edge(x, y);
                    }
                }
            }
        }
    }

    let n = b.adj.len();
    let mut label: Vec<Vertex> = (0..n).collect();
    if params.shuffle {
        label.shuffle(&mut rng);
    }
    let edges: Vec<(Vertex, Vertex)> = b
        .adj
        .iter()
        .enumerate()
        .flat_map(|(x, ns)| ns.iter().filter(move |&&y| x < y).map(move |&y| (x, y)))
        .map(|(x, y)| (label[x], label[y]))
        .collect();
    let host = Graph::from_edges(n, &edges)?;
    let branch_sets = sets
        .iter()
        .map(|s| s.iter().map(|&x| label[x]).collect::<VertexSet>())
        .collect();
    let model = BranchModel::new(pattern.clone(), host.clone(), branch_sets);
    debug_assert!(model.verify().is_ok());
    Ok((host, model))
}
