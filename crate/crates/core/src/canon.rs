//! Canonical labeling for small graphs (n <= 16) by equitable refinement and
//! individualization. Used to deduplicate enumerated graphs and to compare
//! graphs up to isomorphism in tests.
//!
//! The canonical code is the lexicographically largest upper-triangle bit
//! string over all leaves of the search tree. Twin vertices in a target cell
//! are interchangeable (their transposition is an automorphism fixing the
//! current partition), so only one representative per twin class is tried.

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const MAX_CANON_N: usize = 16;

/// Canonical code: vertex count plus the packed upper triangle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonCode {
    pub n: u8,
    pub bits: u128,
}

pub(crate) fn masks(g: &Graph) -> Vec<u32> {
    (0..g.n())
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | 1 << w))
        .collect()
}

fn refine(adj: &[u32], cells: &mut Vec<Vec<u8>>) {
    'restart: loop {
        for s in 0..cells.len() {
            let splitter: u32 = cells[s].iter().fold(0, |m, &v| m | 1 << v);
            let mut out: Vec<Vec<u8>> = Vec::with_capacity(cells.len() + 1);
            let mut changed = false;
            for cell in cells.iter() {
                if cell.len() == 1 {
                    out.push(cell.clone());
                    continue;
                }
                let count = |v: u8| (adj[v as usize] & splitter).count_ones();
                let first = count(cell[0]);
                if cell.iter().all(|&v| count(v) == first) {
                    out.push(cell.clone());
                    continue;
                }
                changed = true;
                let mut keyed: Vec<(u32, u8)> = cell.iter().map(|&v| (count(v), v)).collect();
                keyed.sort_unstable();
                let mut group: Vec<u8> = Vec::new();
                let mut key = keyed[0].0;
                for (k, v) in keyed {
                    if k != key {
                        out.push(std::mem::take(&mut group));
                        key = k;
                    }
                    group.push(v);
                }
                out.push(group);
            }
            if changed {
                *cells = out;
                continue 'restart;
            }
        }
        return;
    }
}

fn leaf_code(adj: &[u32], cells: &[Vec<u8>]) -> u128 {
    let order: Vec<u8> = cells.iter().map(|c| c[0]).collect();
    let mut code = 0u128;
    for j in 1..order.len() {
        for i in 0..j {
            code = (code << 1) | ((adj[order[i] as usize] >> order[j]) & 1) as u128;
        }
    }
    code
}

fn search(adj: &[u32], mut cells: Vec<Vec<u8>>, best: &mut Option<(u128, Vec<u8>)>) {
    refine(adj, &mut cells);
    let Some(target) = cells.iter().position(|c| c.len() > 1) else {
        let code = leaf_code(adj, &cells);
        if best.as_ref().is_none_or(|(b, _)| code > *b) {
            *best = Some((code, cells.iter().map(|c| c[0]).collect()));
        }
        return;
    };
    let cell = cells[target].clone();
    let mut tried: Vec<u8> = Vec::new();
    for &v in &cell {
        let twin_of_tried = tried.iter().any(|&u| {
            let (mu, mv) = (adj[u as usize] & !(1 << v), adj[v as usize] & !(1 << u));
            mu == mv
        });
        if twin_of_tried {
            continue;
        }
        tried.push(v);
        let mut next = Vec::with_capacity(cells.len() + 1);
        next.extend_from_slice(&cells[..target]);
        next.push(vec![v]);
        next.push(cell.iter().copied().filter(|&w| w != v).collect());
        next.extend_from_slice(&cells[target + 1..]);
        search(adj, next, best);
    }
}

/// Canonical vertex order of a graph given as neighbor masks.
pub(crate) fn canonical_order_masks(adj: &[u32]) -> (u128, Vec<u8>) {
    if adj.is_empty() {
        return (0, Vec::new());
    }
    let mut best = None;
    search(adj, vec![(0..adj.len() as u8).collect()], &mut best);
    best.expect("search visits at least one leaf")
}

fn check_size(g: &Graph) -> Result<()> {
    if g.n() > MAX_CANON_N {
        return Err(Error::InvalidInput(format!(
            "canonical labeling supports at most {MAX_CANON_N} vertices, got {}",
            g.n()
        )));
    }
    Ok(())
}

pub fn canonical_code(g: &Graph) -> Result<CanonCode> {
    check_size(g)?;
    let (bits, _) = canonical_order_masks(&masks(g));
    Ok(CanonCode {
        n: g.n() as u8,
        bits,
    })
}

/// The graph relabeled into canonical order, with the order itself
/// (`order[i]` is the original id of canonical vertex `i`).
pub fn canonical_form(g: &Graph) -> Result<(Graph, Vec<usize>)> {
    check_size(g)?;
    let (_, order) = canonical_order_masks(&masks(g));
    let order: Vec<usize> = order.into_iter().map(usize::from).collect();
    let mut pos = vec![0; g.n()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let edges: Vec<(usize, usize)> = g.edges().map(|(u, v)| (pos[u], pos[v])).collect();
    Ok((Graph::from_edges(g.n(), &edges)?, order))
}

pub fn are_isomorphic(g: &Graph, h: &Graph) -> Result<bool> {
    if g.n() != h.n() || g.m() != h.m() {
        return Ok(false);
    }
    Ok(canonical_code(g)? == canonical_code(h)?)
}

impl CanonCode {
    pub fn to_graph(self) -> Graph {
        let n = self.n as usize;
        let total = n * n.saturating_sub(1) / 2;
        let mut edges = Vec::new();
        let mut k = 0;
        for j in 1..n {
            for i in 0..j {
                if (self.bits >> (total - 1 - k)) & 1 == 1 {
                    edges.push((i, j));
                }
                k += 1;
            }
        }
        Graph::from_edges(n, &edges).expect("decoded code is simple")
    }
}
