//! Induced 3PC search.
//!
//! Every 3PC is 2-connected, so the search runs per block of the host. Within
//! a block it enumerates end structures (vertex pairs, pairs of triangles,
//! apex and triangle), then grows the paths one vertex at a time. A new
//! interior vertex of path `i` may touch only its predecessor among interior
//! vertices, only `s_i` (as first vertex) and `t_i` among end vertices, and it
//! closes the path as soon as it touches `t_i`. The last open path is a
//! shortest path through the vertices that are still clean, which is
//! chordless and exists whenever any valid completion does.
//!
//! Thetas are enumerated with `a < b` and first interior vertices
//! increasing; prism triangle pairs are unordered.

use fixedbitset::FixedBitSet;

use super::{verify_three_pc, Kind, PrismRule, ThreePcWitness};
use crate::graph::{induced_subgraph_bits, Graph, Vertex};
use crate::search::{Budget, OutOfBudget, Search, DEFAULT_BUDGET};

struct Paths<'a> {
    g: &'a Graph,
    kind: Kind,
    s: [Vertex; 3],
    t: [Vertex; 3],
    /// Path `i` is already complete (length 0 or 1).
    fixed: [bool; 3],
    /// Interior vertices of path `i` may not see these end vertices.
    clean: [FixedBitSet; 3],
    /// Paths with increasing first interior vertex (theta symmetry).
    ordered: bool,
    paths: [Vec<Vertex>; 3],
    interior: FixedBitSet,
    /// `N(interior)` per depth.
    touched: Vec<FixedBitSet>,
}

impl<'a> Paths<'a> {
    fn new(g: &'a Graph, kind: Kind, s: [Vertex; 3], t: [Vertex; 3], ordered: bool) -> Self {
        let mut ends = g.no_vertices();
        ends.extend(s);
        ends.extend(t);
        let fixed = [0, 1, 2].map(|i| s[i] == t[i] || g.has_edge(s[i], t[i]));
        let clean = [0, 1, 2].map(|i| {
            let mut ok = g.all_vertices();
            ok.difference_with(&ends);
            for e in ends.ones().filter(|&e| e != s[i] && e != t[i]) {
                ok.difference_with(g.row(e));
            }
            ok
        });
        let paths = [0, 1, 2].map(|i| {
            if s[i] == t[i] {
                vec![s[i]]
            } else if fixed[i] {
                vec![s[i], t[i]]
            } else {
                vec![s[i]]
            }
        });
        Paths {
            g,
            kind,
            s,
            t,
            fixed,
            clean,
            ordered,
            paths,
            interior: g.no_vertices(),
            touched: vec![g.no_vertices()],
        }
    }

    fn region(&self, i: usize) -> FixedBitSet {
        let mut r = self.clean[i].clone();
        r.difference_with(&self.interior);
        r.difference_with(self.touched.last().unwrap());
        r
    }

    /// Where path `i` may continue from an interior tip: clean vertices
    /// seeing no interior vertex except the tip, and not `s_i`.
    fn tip_region(&self, i: usize, tip: Vertex) -> FixedBitSet {
        let mut blocked = self.g.row(self.s[i]).clone();
        for x in self.interior.ones().filter(|&x| x != tip) {
            blocked.union_with(self.g.row(x));
        }
        let mut r = self.clean[i].clone();
        r.difference_with(&self.interior);
        r.difference_with(&blocked);
        r
    }

    /// Vertices allowed as the first interior vertex of path `i`.
    fn first_ok(&self, i: usize, v: Vertex) -> bool {
        !self.ordered || i == 0 || self.paths[i - 1].get(1).is_none_or(|&f| v > f)
    }

    /// Whether open path `j` can still reach its target.
    fn can_finish(&self, j: usize, tip: Vertex, region: &FixedBitSet) -> bool {
        let mut from = self.g.no_vertices();
        if tip == self.s[j] {
            from.extend(
                self.g
                    .row(tip)
                    .ones()
                    .filter(|&v| region.contains(v) && self.first_ok(j, v)),
            );
        } else {
            from.insert(tip);
        }
        let mut within = region.clone();
        within.union_with(&from);
        let reach = self.g.reach(&from, &within);
        !reach.is_disjoint(self.g.row(self.t[j]))
    }

    fn open(&self) -> Vec<usize> {
        (0..3).filter(|&i| !self.fixed[i]).collect()
    }

    fn run(&mut self, budget: &mut Budget) -> Result<Option<ThreePcWitness>, OutOfBudget> {
        let open = self.open();
        if open.is_empty() {
            return Ok(Some(ThreePcWitness::new(self.kind, self.paths.clone())));
        }
        for &j in &open {
            if !self.can_finish(j, self.s[j], &self.region(j)) {
                return Ok(None);
            }
        }
        self.grow(&open, 0, budget)
    }

    fn push(&mut self, i: usize, v: Vertex) {
        self.paths[i].push(v);
        self.interior.insert(v);
        let mut t = self.touched.last().unwrap().clone();
        t.union_with(self.g.row(v));
        self.touched.push(t);
    }

    fn pop(&mut self, i: usize) {
        let v = self.paths[i].pop().unwrap();
        self.interior.set(v, false);
        self.touched.pop();
    }

    /// Extends `open[k]`; the last open path is closed by a shortest path.
    fn grow(
        &mut self,
        open: &[usize],
        k: usize,
        budget: &mut Budget,
    ) -> Result<Option<ThreePcWitness>, OutOfBudget> {
        budget.tick()?;
        let i = open[k];
        if k + 1 == open.len() {
            return Ok(self.close(i));
        }
        let tip = *self.paths[i].last().unwrap();
        let mut cand = if tip == self.s[i] {
            self.region(i)
        } else {
            self.tip_region(i, tip)
        };
        cand.intersect_with(self.g.row(tip));
        let cand: Vec<Vertex> = cand
            .ones()
            .filter(|&v| tip != self.s[i] || self.first_ok(i, v))
            .collect();
        for v in cand {
            self.push(i, v);
            let done = self.g.has_edge(v, self.t[i]);
            let mut ok = true;
            if done {
                self.paths[i].push(self.t[i]);
            } else {
                ok = self.can_finish(i, v, &self.tip_region(i, v));
            }
            if ok {
                for &j in &open[k + 1..] {
                    if !self.can_finish(j, self.s[j], &self.region(j)) {
                        ok = false;
                        break;
                    }
                }
            }
            let found = if !ok {
                None
            } else if done {
                self.grow(open, k + 1, budget)?
            } else {
                self.grow(open, k, budget)?
            };
            if done {
                self.paths[i].pop();
            }
            self.pop(i);
            if found.is_some() {
                return Ok(found);
            }
        }
        Ok(None)
    }

    fn close(&mut self, i: usize) -> Option<ThreePcWitness> {
        let region = self.region(i);
        let mut within = region.clone();
        // first vertices below the ordering bound would be chords if used later
        for v in self.g.row(self.s[i]).ones() {
            if !self.first_ok(i, v) {
                within.set(v, false);
            }
        }
        let mut from = self.g.row(self.s[i]).clone();
        from.intersect_with(&within);
        let mut to = self.g.row(self.t[i]).clone();
        to.intersect_with(&within);
        let middle = self.g.shortest_path(&from, &to, &within)?;
        let mut paths = self.paths.clone();
        paths[i].extend(middle);
        paths[i].push(self.t[i]);
        Some(ThreePcWitness::new(self.kind, paths))
    }
}

/// Triangles `[u, v, w]` with `u < v < w`.
fn triangles(g: &Graph) -> Vec<[Vertex; 3]> {
    let mut out = Vec::new();
    for u in 0..g.n() {
        for &v in g.neighbors(u).iter().filter(|&&v| v > u) {
            for w in g.row(u).intersection(g.row(v)).filter(|&w| w > v) {
                out.push([u, v, w]);
            }
        }
    }
    out
}

fn has_stable_triple(g: &Graph, among: &FixedBitSet) -> bool {
    let vs: Vec<Vertex> = among.ones().collect();
    vs.iter().enumerate().any(|(x, &a)| {
        vs[x + 1..].iter().enumerate().any(|(y, &b)| {
            !g.has_edge(a, b)
                && vs[x + 1 + y + 1..]
                    .iter()
                    .any(|&c| !g.has_edge(a, c) && !g.has_edge(b, c))
        })
    })
}

type Found = Result<Option<ThreePcWitness>, OutOfBudget>;

fn search_theta(g: &Graph, budget: &mut Budget) -> Found {
    let n = g.n();
    let ok: Vec<bool> = (0..n)
        .map(|v| g.degree(v) >= 3 && has_stable_triple(g, g.row(v)))
        .collect();
    for a in (0..n).filter(|&a| ok[a]) {
        for b in (a + 1..n).filter(|&b| ok[b] && !g.has_edge(a, b)) {
            let mut p = Paths::new(g, Kind::Theta, [a; 3], [b; 3], true);
            if let Some(w) = p.run(budget)? {
                return Ok(Some(w));
            }
        }
    }
    Ok(None)
}

fn search_pyramid(g: &Graph, budget: &mut Budget) -> Found {
    let tris = triangles(g);
    for apex in 0..g.n() {
        if g.degree(apex) < 3 {
            continue;
        }
        for &t in &tris {
            if t.contains(&apex) || t.iter().filter(|&&b| g.has_edge(apex, b)).count() > 1 {
                continue;
            }
            let mut p = Paths::new(g, Kind::Pyramid, [apex; 3], t, false);
            if let Some(w) = p.run(budget)? {
                return Ok(Some(w));
            }
        }
    }
    Ok(None)
}

const MATCHINGS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

fn search_prism(g: &Graph, rule: PrismRule, budget: &mut Budget) -> Found {
    let tris = triangles(g);
    for (x, &a) in tris.iter().enumerate() {
        for &b in &tris[x + 1..] {
            let shared: Vec<Vertex> = a.iter().copied().filter(|v| b.contains(v)).collect();
            match shared.len() {
                0 => {
                    for m in MATCHINGS {
                        let t = [b[m[0]], b[m[1]], b[m[2]]];
                        let consistent =
                            (0..3).all(|i| (0..3).all(|j| i == j || !g.has_edge(a[i], t[j])));
                        if !consistent {
                            continue;
                        }
                        let mut p = Paths::new(g, Kind::Prism, a, t, false);
                        if let Some(w) = p.run(budget)? {
                            return Ok(Some(w));
                        }
                    }
                }
                1 if rule == PrismRule::AllowZero => {
                    let z = shared[0];
                    let ra: Vec<Vertex> = a.iter().copied().filter(|&v| v != z).collect();
                    let rb: Vec<Vertex> = b.iter().copied().filter(|&v| v != z).collect();
                    if ra.iter().any(|&u| rb.iter().any(|&v| g.has_edge(u, v))) {
                        continue;
                    }
                    for t in [[rb[0], rb[1]], [rb[1], rb[0]]] {
                        let mut p =
                            Paths::new(g, Kind::Prism, [z, ra[0], ra[1]], [z, t[0], t[1]], false);
                        if let Some(w) = p.run(budget)? {
                            return Ok(Some(w));
                        }
                    }
                }
                _ => {}
            }
        }
    }
    Ok(None)
}

/// Vertex sets of the blocks with at least 5 vertices, by smallest member.
fn blocks(g: &Graph) -> Vec<FixedBitSet> {
    let n = g.n();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut time = 0;
    let mut edge_stack: Vec<(Vertex, Vertex)> = Vec::new();
    let mut out = Vec::new();
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        // frames: (vertex, parent, next neighbor index)
        let mut stack: Vec<(Vertex, Vertex, usize)> = vec![(root, usize::MAX, 0)];
        while let Some(&mut (v, parent, ref mut idx)) = stack.last_mut() {
            if let Some(&w) = g.neighbors(v).get(*idx) {
                *idx += 1;
                if disc[w] == usize::MAX {
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    edge_stack.push((v, w));
                    stack.push((w, v, 0));
                } else if w != parent && disc[w] < disc[v] {
                    low[v] = low[v].min(disc[w]);
                    edge_stack.push((v, w));
                }
                continue;
            }
            stack.pop();
            if let Some(&(u, _, _)) = stack.last() {
                low[u] = low[u].min(low[v]);
                if low[v] >= disc[u] {
                    let mut set = g.no_vertices();
                    while let Some((x, y)) = edge_stack.pop() {
                        set.insert(x);
                        set.insert(y);
                        if (x, y) == (u, v) {
                            break;
                        }
                    }
                    if set.count_ones(..) >= 5 {
                        out.push(set);
                    }
                }
            }
        }
    }
    out.sort_by_key(|s| s.minimum());
    out
}

/// First 3PC among `kinds` (in that order) within `g`. Searches block by
/// block; witnesses are verified before they are returned.
pub fn find_3pc_in(
    g: &Graph,
    kinds: &[Kind],
    rule: PrismRule,
    budget: &mut Budget,
) -> Search<ThreePcWitness> {
    let parts = blocks(g);
    let run = |budget: &mut Budget| -> Found {
        for &kind in kinds {
            for part in &parts {
                let (h, map) = induced_subgraph_bits(g, part);
                let found = match kind {
                    Kind::Theta => search_theta(&h, budget)?,
                    Kind::Prism => search_prism(&h, rule, budget)?,
                    Kind::Pyramid => search_pyramid(&h, budget)?,
                };
                if let Some(w) = found {
                    return Ok(Some(w.relabeled(&map.new_to_old)));
                }
            }
        }
        Ok(None)
    };
    match run(budget) {
        Err(OutOfBudget) => Search::Indeterminate,
        Ok(None) => Search::NotFound,
        Ok(Some(w)) => {
            assert!(
                verify_three_pc(g, &w, rule).is_ok(),
                "3PC search produced an invalid witness: {w:?}"
            );
            Search::Found(w)
        }
    }
}

pub fn find_3pc(g: &Graph, kinds: &[Kind], rule: PrismRule, budget: u64) -> Search<ThreePcWitness> {
    find_3pc_in(g, kinds, rule, &mut Budget::new(budget))
}

pub fn contains_theta(g: &Graph) -> Search<ThreePcWitness> {
    find_3pc(g, &[Kind::Theta], PrismRule::AllowZero, DEFAULT_BUDGET)
}

pub fn contains_prism(g: &Graph) -> Search<ThreePcWitness> {
    find_3pc(g, &[Kind::Prism], PrismRule::AllowZero, DEFAULT_BUDGET)
}

pub fn contains_pyramid(g: &Graph) -> Search<ThreePcWitness> {
    find_3pc(g, &[Kind::Pyramid], PrismRule::AllowZero, DEFAULT_BUDGET)
}

/// Any 3PC; thetas first, then prisms, then pyramids.
pub fn contains_3pc(g: &Graph) -> Search<ThreePcWitness> {
    find_3pc(g, &Kind::ALL, PrismRule::AllowZero, DEFAULT_BUDGET)
}
