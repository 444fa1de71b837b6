//! Whole-graph recognition through the thread decomposition: branch vertices
//! (degree at least 3) joined by threads, maximal paths whose interior
//! vertices have degree 2. A 3PC is determined by its branch vertices and
//! threads, so each kind is a small pattern on that multigraph.

use super::{Kind, PrismRule, ThreePcWitness};
use crate::graph::{Graph, Vertex};

struct Decomposition {
    branch: Vec<Vertex>,
    /// Each thread once, from its smaller reading.
    threads: Vec<Vec<Vertex>>,
}

impl Decomposition {
    fn of(g: &Graph) -> Option<Self> {
        if g.n() == 0 || !g.is_connected() || (0..g.n()).any(|v| g.degree(v) < 2) {
            return None;
        }
        let branch: Vec<Vertex> = (0..g.n()).filter(|&v| g.degree(v) >= 3).collect();
        let mut threads = Vec::new();
        for &u in &branch {
            for &first in g.neighbors(u) {
                let mut path = vec![u, first];
                let (mut prev, mut cur) = (u, first);
                while g.degree(cur) == 2 {
                    let next = g
                        .neighbors(cur)
                        .iter()
                        .copied()
                        .find(|&x| x != prev)
                        .unwrap();
                    path.push(next);
                    (prev, cur) = (cur, next);
                }
                let mut rev = path.clone();
                rev.reverse();
                if path <= rev {
                    threads.push(path);
                }
            }
        }
        Some(Decomposition { branch, threads })
    }

    fn between(&self, u: Vertex, v: Vertex) -> Vec<Vec<Vertex>> {
        self.threads
            .iter()
            .filter_map(|t| {
                let (a, b) = (t[0], *t.last().unwrap());
                if (a, b) == (u, v) {
                    Some(t.clone())
                } else if (a, b) == (v, u) {
                    Some(t.iter().rev().copied().collect())
                } else {
                    None
                }
            })
            .collect()
    }

    fn degree_count(&self, g: &Graph, d: usize) -> usize {
        self.branch.iter().filter(|&&v| g.degree(v) == d).count()
    }

    fn edge(&self, u: Vertex, v: Vertex) -> bool {
        self.between(u, v).iter().any(|t| t.len() == 2)
    }
}

/// Whether the whole graph is a theta.
pub fn is_theta(g: &Graph) -> Option<ThreePcWitness> {
    let d = Decomposition::of(g)?;
    if d.branch.len() != 2 || d.degree_count(g, 3) != 2 || d.threads.len() != 3 {
        return None;
    }
    let paths = d.between(d.branch[0], d.branch[1]);
    if paths.len() != 3 || paths.iter().any(|p| p.len() < 3) {
        return None;
    }
    Some(ThreePcWitness::new(
        Kind::Theta,
        [paths[0].clone(), paths[1].clone(), paths[2].clone()],
    ))
}

/// Whether the whole graph is a pyramid.
pub fn is_pyramid(g: &Graph) -> Option<ThreePcWitness> {
    let d = Decomposition::of(g)?;
    if d.branch.len() != 4 || d.degree_count(g, 3) != 4 || d.threads.len() != 6 {
        return None;
    }
    for &apex in &d.branch {
        let t: Vec<Vertex> = d.branch.iter().copied().filter(|&v| v != apex).collect();
        if !(d.edge(t[0], t[1]) && d.edge(t[1], t[2]) && d.edge(t[0], t[2])) {
            continue;
        }
        let legs: Vec<Vec<Vec<Vertex>>> = t.iter().map(|&b| d.between(apex, b)).collect();
        if legs.iter().any(|l| l.len() != 1) {
            continue;
        }
        let paths = [legs[0][0].clone(), legs[1][0].clone(), legs[2][0].clone()];
        if paths.iter().filter(|p| p.len() >= 3).count() >= 2 {
            return Some(ThreePcWitness::new(Kind::Pyramid, paths));
        }
    }
    None
}

/// Whether the whole graph is a prism, length-0 paths allowed.
pub fn is_prism(g: &Graph) -> Option<ThreePcWitness> {
    is_prism_with(g, PrismRule::AllowZero)
}

pub fn is_prism_with(g: &Graph, rule: PrismRule) -> Option<ThreePcWitness> {
    let d = Decomposition::of(g)?;
    let b = &d.branch;
    if b.len() == 6 && d.degree_count(g, 3) == 6 && d.threads.len() == 9 {
        for i in 0..6 {
            for j in i + 1..6 {
                for k in j + 1..6 {
                    let t1 = [b[i], b[j], b[k]];
                    if t1[0] != b[0]
                        || !(d.edge(t1[0], t1[1]) && d.edge(t1[1], t1[2]) && d.edge(t1[0], t1[2]))
                    {
                        continue;
                    }
                    let t2: Vec<Vertex> = b.iter().copied().filter(|v| !t1.contains(v)).collect();
                    if !(d.edge(t2[0], t2[1]) && d.edge(t2[1], t2[2]) && d.edge(t2[0], t2[2])) {
                        continue;
                    }
                    let mut paths: Vec<Vec<Vertex>> = Vec::new();
                    for &a in &t1 {
                        let out: Vec<Vec<Vertex>> =
                            t2.iter().flat_map(|&c| d.between(a, c)).collect();
                        // the leg is the one thread from `a` that is not a triangle edge
                        if out.len() == 1 {
                            paths.push(out[0].clone());
                        }
                    }
                    let targets: std::collections::BTreeSet<Vertex> =
                        paths.iter().map(|p| *p.last().unwrap()).collect();
                    if paths.len() == 3 && targets.len() == 3 {
                        return Some(ThreePcWitness::new(
                            Kind::Prism,
                            [paths[0].clone(), paths[1].clone(), paths[2].clone()],
                        ));
                    }
                }
            }
        }
        return None;
    }
    if rule == PrismRule::AllowZero
        && b.len() == 5
        && d.degree_count(g, 4) == 1
        && d.degree_count(g, 3) == 4
        && d.threads.len() == 8
    {
        let x = *b.iter().find(|&&v| g.degree(v) == 4).unwrap();
        let rest: Vec<Vertex> = b.iter().copied().filter(|&v| v != x).collect();
        if rest.iter().any(|&v| !d.edge(x, v)) {
            return None;
        }
        for &partner in &rest[1..] {
            if !d.edge(rest[0], partner) {
                continue;
            }
            let a = [rest[0], partner];
            let c: Vec<Vertex> = rest.iter().copied().filter(|v| !a.contains(v)).collect();
            if !d.edge(c[0], c[1]) {
                continue;
            }
            let mut legs = Vec::new();
            for &end in &a {
                let out: Vec<Vec<Vertex>> = c.iter().flat_map(|&t| d.between(end, t)).collect();
                if out.len() == 1 && out[0].len() >= 3 {
                    legs.push(out[0].clone());
                }
            }
            if legs.len() == 2 && legs[0].last() != legs[1].last() {
                return Some(ThreePcWitness::new(
                    Kind::Prism,
                    [vec![x], legs[0].clone(), legs[1].clone()],
                ));
            }
        }
    }
    None
}

/// Whether the whole graph is a 3PC; theta, then prism, then pyramid.
pub fn is_3pc(g: &Graph) -> Option<ThreePcWitness> {
    is_3pc_with(g, PrismRule::AllowZero)
}

pub fn is_3pc_with(g: &Graph, rule: PrismRule) -> Option<ThreePcWitness> {
    let w = is_theta(g)
        .or_else(|| is_prism_with(g, rule))
        .or_else(|| is_pyramid(g))?;
    debug_assert!(super::pairwise_holes(g, &w.paths));
    Some(w)
}
