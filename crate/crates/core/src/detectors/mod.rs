//! Detectors for short cycles, holes and three-path configurations.
//!
//! A three-path configuration (3PC) is a theta, a prism or a pyramid; every
//! path in one is chordless. Prisms may have one path of length zero, in which
//! case the other two have length at least 2 and the two triangles share that
//! vertex. [`PrismRule::Standard`] turns this off.
//!
//! Whole-graph recognizers (`is_*`) work on the thread decomposition of the
//! graph; the `contains_*` searches fix the end structure and grow chordless
//! paths. The two share no code beyond [`verify_three_pc`], so they
//! cross-check each other.

mod holes;
mod recognize;
mod search;
#[cfg(test)]
mod tests;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::graph::{Graph, Vertex, VertexSet};

pub use holes::{
    contains_even_hole, contains_hole, find_wheels, is_even_wheel, verify_hole, HoleWitness, Wheel,
    WheelScan,
};
pub use recognize::{is_3pc, is_3pc_with, is_prism, is_prism_with, is_pyramid, is_theta};
pub use search::{
    contains_3pc, contains_prism, contains_pyramid, contains_theta, find_3pc, find_3pc_in,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Theta,
    Prism,
    Pyramid,
}

impl Kind {
    pub const ALL: [Kind; 3] = [Kind::Theta, Kind::Prism, Kind::Pyramid];

    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Theta => "theta",
            Kind::Prism => "prism",
            Kind::Pyramid => "pyramid",
        }
    }
}

impl std::fmt::Display for Kind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Which prisms count.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PrismRule {
    /// One path may have length 0 if the other two have length at least 2.
    #[default]
    AllowZero,
    /// Every path has length at least 1.
    Standard,
}

/// End structure of a 3PC.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Ends {
    Theta {
        a: Vertex,
        b: Vertex,
    },
    /// `a[i]` and `b[i]` are the ends of path `i`; equal for a length-0 path.
    Prism {
        a: [Vertex; 3],
        b: [Vertex; 3],
    },
    Pyramid {
        apex: Vertex,
        triangle: [Vertex; 3],
    },
}

/// A 3PC as three vertex sequences. Theta paths run `a..b`, prism paths
/// `a_i..b_i` (a single vertex for length 0), pyramid paths `apex..b_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ThreePcWitness {
    pub kind: Kind,
    pub paths: [Vec<Vertex>; 3],
    pub ends: Ends,
}

impl ThreePcWitness {
    /// Builds the witness and derives its ends. Paths must be nonempty.
    pub fn new(kind: Kind, paths: [Vec<Vertex>; 3]) -> Self {
        let first = |i: usize| paths[i][0];
        let last = |i: usize| *paths[i].last().expect("nonempty path");
        let ends = match kind {
            Kind::Theta => Ends::Theta {
                a: first(0),
                b: last(0),
            },
            Kind::Prism => Ends::Prism {
                a: [first(0), first(1), first(2)],
                b: [last(0), last(1), last(2)],
            },
            Kind::Pyramid => Ends::Pyramid {
                apex: first(0),
                triangle: [last(0), last(1), last(2)],
            },
        };
        ThreePcWitness { kind, paths, ends }
    }

    /// Path lengths in edges.
    pub fn lengths(&self) -> [usize; 3] {
        [0, 1, 2].map(|i| self.paths[i].len().saturating_sub(1))
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::new(self.paths.iter().flatten().copied())
    }

    /// The witness with vertex ids passed through `map`.
    pub fn relabeled(&self, map: &[Vertex]) -> Self {
        let paths = [0, 1, 2].map(|i| self.paths[i].iter().map(|&v| map[v]).collect());
        ThreePcWitness::new(self.kind, paths)
    }
}

/// Whether `set` induces a hole: a chordless cycle on at least 4 vertices.
pub fn induces_hole(g: &Graph, set: &FixedBitSet) -> bool {
    let k = set.count_ones(..);
    k >= 4
        && set.ones().all(|v| g.row(v).intersection(set).count() == 2)
        && g.is_connected_bits(set)
}

/// Whether each two of the paths together induce a hole. For three pairwise
/// internally disjoint paths covering a graph this is equivalent to being a
/// 3PC.
pub fn pairwise_holes(g: &Graph, paths: &[Vec<Vertex>; 3]) -> bool {
    (0..3).all(|i| {
        (i + 1..3).all(|j| {
            let mut set = g.no_vertices();
            set.extend(paths[i].iter().copied());
            set.extend(paths[j].iter().copied());
            induces_hole(g, &set)
        })
    })
}

fn is_triangle(g: &Graph, t: [Vertex; 3]) -> bool {
    t[0] != t[1]
        && t[1] != t[2]
        && t[0] != t[2]
        && g.has_edge(t[0], t[1])
        && g.has_edge(t[1], t[2])
        && g.has_edge(t[0], t[2])
}

/// Checks a witness against the definition: the paths exist in `g`, have
/// the right shared ends and lengths, and the only edges of `g` among the
/// witness vertices are path edges plus the triangle edges of the kind.
pub fn verify_three_pc(g: &Graph, w: &ThreePcWitness, rule: PrismRule) -> Result<(), String> {
    let n = g.n();
    if w.paths.iter().any(|p| p.is_empty()) {
        return Err("empty path".into());
    }
    if let Some(&v) = w.paths.iter().flatten().find(|&&v| v >= n) {
        return Err(format!("vertex {v} out of range"));
    }
    if *w != ThreePcWitness::new(w.kind, w.paths.clone()) {
        return Err("ends do not match the paths".into());
    }
    for p in &w.paths {
        for pair in p.windows(2) {
            if !g.has_edge(pair[0], pair[1]) {
                return Err(format!("{}-{} is not an edge", pair[0], pair[1]));
            }
        }
    }
    let first = |i: usize| w.paths[i][0];
    let last = |i: usize| *w.paths[i].last().unwrap();
    let len = w.lengths();
    // Vertices each path owns; shared ends are owned by nobody.
    let (owned, triangles): ([&[Vertex]; 3], Vec<[Vertex; 3]>) = match w.kind {
        Kind::Theta => {
            if (0..3).any(|i| first(i) != first(0) || last(i) != last(0)) || first(0) == last(0) {
                return Err("theta paths must share both ends".into());
            }
            if len.iter().any(|&l| l < 2) {
                return Err("theta paths need length at least 2".into());
            }
            (
                [0, 1, 2].map(|i| &w.paths[i][1..w.paths[i].len() - 1]),
                vec![],
            )
        }
        Kind::Prism => {
            let zeros = len.iter().filter(|&&l| l == 0).count();
            let ok = zeros == 0
                || (rule == PrismRule::AllowZero
                    && zeros == 1
                    && len.iter().all(|&l| l == 0 || l >= 2));
            if !ok {
                return Err(format!("prism path lengths {len:?} not allowed"));
            }
            let (a, b) = ([first(0), first(1), first(2)], [last(0), last(1), last(2)]);
            if !is_triangle(g, a) || !is_triangle(g, b) {
                return Err("prism ends must form two triangles".into());
            }
            ([0, 1, 2].map(|i| &w.paths[i][..]), vec![a, b])
        }
        Kind::Pyramid => {
            if (0..3).any(|i| first(i) != first(0)) {
                return Err("pyramid paths must share the apex".into());
            }
            if len.iter().any(|&l| l < 1) || len.iter().filter(|&&l| l >= 2).count() < 2 {
                return Err(format!("pyramid path lengths {len:?} not allowed"));
            }
            let t = [last(0), last(1), last(2)];
            if !is_triangle(g, t) {
                return Err("pyramid ends must form a triangle".into());
            }
            ([0, 1, 2].map(|i| &w.paths[i][1..]), vec![t])
        }
    };
    let mut seen = g.no_vertices();
    for part in owned {
        for &v in part {
            if seen.put(v) {
                return Err(format!("vertex {v} used twice"));
            }
        }
    }
    for v in [first(0), last(0)] {
        if w.kind == Kind::Theta && seen.contains(v) {
            return Err(format!("end {v} repeated inside a path"));
        }
    }
    let mut allowed: std::collections::HashSet<(Vertex, Vertex)> = std::collections::HashSet::new();
    let mut allow = |u: Vertex, v: Vertex| {
        allowed.insert((u.min(v), u.max(v)));
    };
    for p in &w.paths {
        for pair in p.windows(2) {
            allow(pair[0], pair[1]);
        }
    }
    for t in &triangles {
        allow(t[0], t[1]);
        allow(t[1], t[2]);
        allow(t[0], t[2]);
    }
    let all = w.vertices();
    for (i, u) in all.iter().enumerate() {
        for v in all.iter().skip(i + 1) {
            if g.has_edge(u, v) && !allowed.contains(&(u, v)) {
                return Err(format!("stray edge {u}-{v}"));
            }
        }
    }
    Ok(())
}

/// Length of a shortest cycle, or `None` for a forest. One BFS per vertex.
pub fn girth(g: &Graph) -> Option<usize> {
    let n = g.n();
    let mut best: Option<usize> = None;
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    for s in 0..n {
        dist.fill(usize::MAX);
        dist[s] = 0;
        parent[s] = usize::MAX;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            if best.is_some_and(|b| 2 * dist[u] + 1 >= b) {
                break;
            }
            for &w in g.neighbors(u) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else if parent[u] != w {
                    let len = dist[u] + dist[w] + 1;
                    best = Some(best.map_or(len, |b| b.min(len)));
                }
            }
        }
    }
    best
}

/// The lexicographically first triangle, if any.
pub fn contains_triangle(g: &Graph) -> Option<[Vertex; 3]> {
    for u in 0..g.n() {
        for &v in g.neighbors(u).iter().filter(|&&v| v > u) {
            let common = g.row(u).intersection(g.row(v)).find(|&w| w > v);
            if let Some(w) = common {
                return Some([u, v, w]);
            }
        }
    }
    None
}
