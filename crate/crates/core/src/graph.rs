//! Simple undirected graphs on dense vertex ids `0..n`, vertex sets, and the
//! basic transformations everything else is built from.
//!
//! A [`Graph`] is immutable once built. It keeps sorted neighbor lists for
//! ordered iteration and one bitset row per vertex for constant-time adjacency
//! and word-parallel set operations in the search code.

use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{precondition, Error, Result};

pub type Vertex = usize;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    rows: Vec<FixedBitSet>,
    m: usize,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            rows: vec![FixedBitSet::with_capacity(n); n],
            m: 0,
        }
    }

    /// Builds a graph from an edge list. Duplicate edges collapse; loops and
    /// out-of-range ids are rejected.
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut rows = vec![FixedBitSet::with_capacity(n); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidInput(format!(
                    "edge {u}-{v} out of range for {n} vertices"
                )));
            }
            if u == v {
                return Err(Error::InvalidInput(format!("loop at vertex {u}")));
            }
            rows[u].insert(v);
            rows[v].insert(u);
        }
        Ok(Self::from_rows(rows))
    }

    /// Builds a graph from symmetric adjacency rows. Callers guarantee symmetry
    /// and an empty diagonal.
    pub(crate) fn from_rows(rows: Vec<FixedBitSet>) -> Self {
        let adj: Vec<Vec<Vertex>> = rows.iter().map(|r| r.ones().collect()).collect();
        let m = adj.iter().map(Vec::len).sum::<usize>() / 2;
        debug_assert!(rows.iter().enumerate().all(|(v, r)| !r.contains(v)));
        Graph { adj, rows, m }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    #[inline]
    pub fn row(&self, v: Vertex) -> &FixedBitSet {
        &self.rows[v]
    }

    #[inline]
    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    #[inline]
    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.rows[u].contains(v)
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Empty bitset sized for this graph.
    pub fn no_vertices(&self) -> FixedBitSet {
        FixedBitSet::with_capacity(self.n())
    }

    pub fn all_vertices(&self) -> FixedBitSet {
        let mut b = self.no_vertices();
        b.insert_range(..);
        b
    }

    /// Union of the open neighborhoods of `set`.
    pub fn neighborhood(&self, set: &FixedBitSet) -> FixedBitSet {
        let mut out = self.no_vertices();
        for v in set.ones() {
            out.union_with(&self.rows[v]);
        }
        out
    }

    /// Open neighborhood of `set`, excluding `set` itself.
    pub fn boundary(&self, set: &FixedBitSet) -> FixedBitSet {
        let mut out = self.neighborhood(set);
        out.difference_with(set);
        out
    }

    /// True iff some vertex of `a` has a neighbor in `b` (bitset form).
    pub fn sees_bits(&self, a: &FixedBitSet, b: &FixedBitSet) -> bool {
        a.ones().any(|v| !self.rows[v].is_disjoint(b))
    }

    /// Vertices of `within` reachable from `from` inside `within`.
    pub fn reach(&self, from: &FixedBitSet, within: &FixedBitSet) -> FixedBitSet {
        let mut seen = from.clone();
        seen.intersect_with(within);
        let mut frontier: Vec<Vertex> = seen.ones().collect();
        while let Some(v) = frontier.pop() {
            for &w in &self.adj[v] {
                if within.contains(w) && !seen.contains(w) {
                    seen.insert(w);
                    frontier.push(w);
                }
            }
        }
        seen
    }

    /// Whether `set` induces a connected subgraph. The empty set counts as
    /// connected.
    pub fn is_connected_bits(&self, set: &FixedBitSet) -> bool {
        match set.minimum() {
            None => true,
            Some(start) => {
                let mut seed = self.no_vertices();
                seed.insert(start);
                self.reach(&seed, set).count_ones(..) == set.count_ones(..)
            }
        }
    }

    pub fn is_connected(&self) -> bool {
        self.is_connected_bits(&self.all_vertices())
    }

    /// Connected components of `G[set]`, ordered by smallest member.
    pub fn components_of(&self, set: &FixedBitSet) -> Vec<FixedBitSet> {
        let mut left = set.clone();
        let mut out = Vec::new();
        while let Some(start) = left.minimum() {
            let mut seed = self.no_vertices();
            seed.insert(start);
            let comp = self.reach(&seed, &left);
            left.difference_with(&comp);
            out.push(comp);
        }
        out
    }

    /// Shortest path inside `within` from any vertex of `from` to any vertex of
    /// `to`, as a vertex sequence. Among shortest paths the lexicographically
    /// smallest sequence is returned.
    pub fn shortest_path(
        &self,
        from: &FixedBitSet,
        to: &FixedBitSet,
        within: &FixedBitSet,
    ) -> Option<Vec<Vertex>> {
        let mut dist = vec![usize::MAX; self.n()];
        let mut queue = std::collections::VecDeque::new();
        for t in to.ones().filter(|&t| within.contains(t)) {
            dist[t] = 0;
            queue.push_back(t);
        }
        while let Some(v) = queue.pop_front() {
            for &w in &self.adj[v] {
                if within.contains(w) && dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        let start = from
            .ones()
            .filter(|&s| within.contains(s) && dist[s] != usize::MAX)
            .min_by_key(|&s| (dist[s], s))?;
        let mut path = vec![start];
        let mut cur = start;
        while dist[cur] > 0 {
            cur = *self.adj[cur]
                .iter()
                .find(|&&w| within.contains(w) && dist[w] == dist[cur] - 1)
                .expect("a predecessor on a shortest path");
            path.push(cur);
        }
        Some(path)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.n())?;
        for (i, (u, v)) in self.edges().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{u}-{v}")?;
        }
        write!(f, "])")
    }
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
}

impl Serialize for Graph {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GraphRepr {
            n: self.n(),
            edges: self.edges().collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = GraphRepr::deserialize(d)?;
        Graph::from_edges(repr.n, &repr.edges).map_err(serde::de::Error::custom)
    }
}

/// A sorted, duplicate-free set of vertex ids.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet(Vec<Vertex>);

impl VertexSet {
    pub fn new(members: impl IntoIterator<Item = Vertex>) -> Self {
        let mut v: Vec<Vertex> = members.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        VertexSet(v)
    }

    pub fn from_bits(bits: &FixedBitSet) -> Self {
        VertexSet(bits.ones().collect())
    }

    pub fn members(&self) -> &[Vertex] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.0.iter().copied()
    }

    /// Bitset over `0..n`; fails if a member is out of range.
    pub fn to_bits(&self, n: usize) -> Result<FixedBitSet> {
        let mut b = FixedBitSet::with_capacity(n);
        for &v in &self.0 {
            if v >= n {
                return Err(Error::InvalidInput(format!(
                    "vertex {v} out of range for {n} vertices"
                )));
            }
            b.insert(v);
        }
        Ok(b)
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return false,
            }
        }
        true
    }
}

impl FromIterator<Vertex> for VertexSet {
    fn from_iter<I: IntoIterator<Item = Vertex>>(iter: I) -> Self {
        VertexSet::new(iter)
    }
}

/// Id bookkeeping for transformations that delete or merge vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relabel {
    pub old_to_new: Vec<Option<Vertex>>,
    pub new_to_old: Vec<Vertex>,
}

/// `G[s]` with vertices renumbered densely in increasing old-id order.
pub fn induced_subgraph(g: &Graph, s: &VertexSet) -> Result<(Graph, Relabel)> {
    let bits = s.to_bits(g.n())?;
    Ok(induced_subgraph_bits(g, &bits))
}

pub(crate) fn induced_subgraph_bits(g: &Graph, s: &FixedBitSet) -> (Graph, Relabel) {
    let new_to_old: Vec<Vertex> = s.ones().collect();
    let mut old_to_new = vec![None; g.n()];
    for (i, &v) in new_to_old.iter().enumerate() {
        old_to_new[v] = Some(i);
    }
    let k = new_to_old.len();
    let mut rows = vec![FixedBitSet::with_capacity(k); k];
    for (i, &v) in new_to_old.iter().enumerate() {
        for &w in g.neighbors(v) {
            if let Some(j) = old_to_new[w] {
                rows[i].insert(j);
            }
        }
    }
    (
        Graph::from_rows(rows),
        Relabel {
            old_to_new,
            new_to_old,
        },
    )
}

/// Contracts the edge `uv`. The merged vertex takes the smaller id; ids above
/// the larger endpoint shift down by one.
pub fn contract_edge(g: &Graph, u: Vertex, v: Vertex) -> Result<(Graph, Relabel)> {
    if u >= g.n() || v >= g.n() {
        return Err(Error::InvalidInput(format!("edge {u}-{v} out of range")));
    }
    if !g.has_edge(u, v) {
        return precondition(format!("{u}-{v} is not an edge"));
    }
    let (keep, gone) = (u.min(v), u.max(v));
    let old_to_new: Vec<Option<Vertex>> = (0..g.n())
        .map(|w| match w.cmp(&gone) {
            std::cmp::Ordering::Less => Some(w),
            std::cmp::Ordering::Equal => Some(keep),
            std::cmp::Ordering::Greater => Some(w - 1),
        })
        .collect();
    let new_to_old: Vec<Vertex> = (0..g.n()).filter(|&w| w != gone).collect();
    let mut edges = Vec::with_capacity(g.m());
    for (a, b) in g.edges() {
        let (x, y) = (old_to_new[a].unwrap(), old_to_new[b].unwrap());
        if x != y {
            edges.push((x, y));
        }
    }
    Ok((
        Graph::from_edges(g.n() - 1, &edges)?,
        Relabel {
            old_to_new,
            new_to_old,
        },
    ))
}

/// Line graph; vertex `i` is the `i`-th edge of `g.edges()`.
pub fn line_graph(g: &Graph) -> Graph {
    let edges: Vec<(Vertex, Vertex)> = g.edges().collect();
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
    for (i, &(a, b)) in edges.iter().enumerate() {
        incident[a].push(i);
        incident[b].push(i);
    }
    let mut rows = vec![FixedBitSet::with_capacity(edges.len()); edges.len()];
    for inc in &incident {
        for (x, &i) in inc.iter().enumerate() {
            for &j in &inc[x + 1..] {
                rows[i].insert(j);
                rows[j].insert(i);
            }
        }
    }
    Graph::from_rows(rows)
}

/// Replaces every edge by a path with `times` internal vertices. Original ids
/// are kept; new vertices follow in edge order.
pub fn subdivide(g: &Graph, times: usize) -> Graph {
    let mut edges = Vec::new();
    let mut next = g.n();
    for (u, v) in g.edges() {
        let mut prev = u;
        for _ in 0..times {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
        edges.push((prev, v));
    }
    Graph::from_edges(next, &edges).expect("subdivision of a simple graph is simple")
}

pub fn connected_components(g: &Graph) -> Vec<VertexSet> {
    g.components_of(&g.all_vertices())
        .iter()
        .map(VertexSet::from_bits)
        .collect()
}

/// Whether `s` induces a connected subgraph (the empty set does).
pub fn is_connected(g: &Graph, s: &VertexSet) -> Result<bool> {
    Ok(g.is_connected_bits(&s.to_bits(g.n())?))
}

fn disjoint_pair(g: &Graph, x: &VertexSet, y: &VertexSet) -> Result<(FixedBitSet, FixedBitSet)> {
    let (bx, by) = (x.to_bits(g.n())?, y.to_bits(g.n())?);
    if !bx.is_disjoint(&by) {
        return precondition("vertex sets overlap");
    }
    Ok((bx, by))
}

/// Some vertex of `x` is adjacent to some vertex of `y`.
pub fn sees(g: &Graph, x: &VertexSet, y: &VertexSet) -> Result<bool> {
    let (bx, by) = disjoint_pair(g, x, y)?;
    Ok(g.sees_bits(&bx, &by))
}

/// No vertex of `x` is adjacent to a vertex of `y`.
pub fn is_anticomplete(g: &Graph, x: &VertexSet, y: &VertexSet) -> Result<bool> {
    sees(g, x, y).map(|s| !s)
}

/// Every vertex of `x` is adjacent to every vertex of `y`.
pub fn is_complete(g: &Graph, x: &VertexSet, y: &VertexSet) -> Result<bool> {
    let (bx, by) = disjoint_pair(g, x, y)?;
    Ok(bx.ones().all(|v| by.is_subset(g.row(v))))
}
