//! Type classification, exhaustive center sets, and the one-path and
//! common-center lemma checkers.

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use super::{
    bits, check_anticomplete, check_connected, check_disjoint, check_sees_all, host_status, seers,
    HostMode, HostStatus,
};
use crate::error::{precondition, Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::search::{Budget, DEFAULT_BUDGET};

/// An induced path together with every set index it certifies as a center.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathWitness {
    pub path: Vec<Vertex>,
    pub centers: Vec<usize>,
}

/// Legs are indexed by the set their far end sees.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum TypeWitness {
    Path(PathWitness),
    /// Each leg starts at `apex`. When the apex is itself a far end, the set
    /// is also of type path and `overlap` shows it.
    Claw {
        apex: Vertex,
        legs: [Vec<Vertex>; 3],
        overlap: Option<PathWitness>,
    },
    /// Each leg starts at its triangle vertex.
    Triangle {
        legs: [Vec<Vertex>; 3],
    },
}

impl TypeWitness {
    pub fn name(&self) -> &'static str {
        match self {
            TypeWitness::Path(_) => "path",
            TypeWitness::Claw { .. } => "claw",
            TypeWitness::Triangle { .. } => "triangle",
        }
    }
}

fn sees(g: &Graph, v: Vertex, s: &FixedBitSet) -> bool {
    !g.row(v).is_disjoint(s)
}

fn path_sees(g: &Graph, p: &[Vertex], s: &FixedBitSet) -> bool {
    p.iter().any(|&v| sees(g, v, s))
}

fn others(center: usize) -> (usize, usize) {
    match center {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    }
}

fn is_induced_path(g: &Graph, within: &FixedBitSet, p: &[Vertex]) -> bool {
    !p.is_empty()
        && p.iter().all(|&v| v < g.n() && within.contains(v))
        && (0..p.len()).all(|i| {
            (i + 1..p.len()).all(|j| p[i] != p[j] && g.has_edge(p[i], p[j]) == (j == i + 1))
        })
}

/// Whether `p` witnesses type path centered at `sets[center]`, in either
/// direction.
fn path_ok(
    g: &Graph,
    within: &FixedBitSet,
    sets: [&FixedBitSet; 3],
    p: &[Vertex],
    center: usize,
) -> bool {
    if !is_induced_path(g, within, p) || !path_sees(g, p, sets[center]) {
        return false;
    }
    let (u, v) = others(center);
    let mut rev = p.to_vec();
    rev.reverse();
    [p.to_vec(), rev].iter().any(|q| {
        let k = q.len();
        sees(g, q[0], sets[u])
            && sees(g, q[k - 1], sets[v])
            && !path_sees(g, &q[1..], sets[u])
            && !path_sees(g, &q[..k - 1], sets[v])
    })
}

fn centers_of(
    g: &Graph,
    within: &FixedBitSet,
    sets: [&FixedBitSet; 3],
    p: &[Vertex],
) -> Vec<usize> {
    (0..3).filter(|&c| path_ok(g, within, sets, p, c)).collect()
}

/// The shortest (then earliest) subpath of an induced path seeing all three
/// sets. Its first vertex is the only one seeing some set and its last the
/// only one seeing another, so it is a path-type witness.
fn window(g: &Graph, within: &FixedBitSet, sets: [&FixedBitSet; 3], p: &[Vertex]) -> PathWitness {
    let mut best: Option<(usize, usize)> = None;
    for i in 0..p.len() {
        for j in i..p.len() {
            if best.is_some_and(|(a, b)| j - i >= b - a) {
                break;
            }
            if sets.iter().all(|s| path_sees(g, &p[i..=j], s)) {
                best = Some((i, j));
                break;
            }
        }
    }
    let (i, j) = best.expect("the path sees all three sets");
    let path = p[i..=j].to_vec();
    let centers = centers_of(g, within, sets, &path);
    debug_assert!(!centers.is_empty());
    PathWitness { path, centers }
}

/// Checks a type witness against the definitions, from adjacency alone.
pub fn verify_type(
    g: &Graph,
    a: &VertexSet,
    sets: [&VertexSet; 3],
    w: &TypeWitness,
) -> Result<(), String> {
    let within = a.to_bits(g.n()).map_err(|e| e.to_string())?;
    let sb: Vec<FixedBitSet> = sets
        .iter()
        .map(|s| s.to_bits(g.n()))
        .collect::<Result<_>>()
        .map_err(|e| e.to_string())?;
    let sets = [&sb[0], &sb[1], &sb[2]];
    let check_path = |pw: &PathWitness| -> Result<(), String> {
        if pw.centers.is_empty() {
            return Err("path witness with no center".into());
        }
        if pw.centers != centers_of(g, &within, sets, &pw.path) {
            return Err(format!(
                "path {:?} does not certify exactly centers {:?}",
                pw.path, pw.centers
            ));
        }
        Ok(())
    };
    let far_ends_ok = |legs: &[Vec<Vertex>; 3]| -> Result<(), String> {
        for i in 0..3 {
            let far = *legs[i].last().ok_or("empty leg")?;
            if !sees(g, far, sets[i]) {
                return Err(format!("leg {i} does not end at a vertex seeing set {i}"));
            }
            for leg in legs {
                for &v in leg {
                    if v != far && sees(g, v, sets[i]) {
                        return Err(format!(
                            "vertex {v} sees set {i} but is not the far end of leg {i}"
                        ));
                    }
                }
            }
        }
        if legs.iter().any(|l| !is_induced_path(g, &within, l)) {
            return Err("a leg is not an induced path inside the set".into());
        }
        Ok(())
    };
    match w {
        TypeWitness::Path(pw) => check_path(pw),
        TypeWitness::Claw {
            apex,
            legs,
            overlap,
        } => {
            if legs.iter().any(|l| l.first() != Some(apex)) {
                return Err("claw legs must start at the apex".into());
            }
            far_ends_ok(legs)?;
            for i in 0..3 {
                for j in i + 1..3 {
                    for &u in &legs[i][1..] {
                        for &v in &legs[j][1..] {
                            if u == v || g.has_edge(u, v) {
                                return Err(format!(
                                    "legs {i} and {j} meet off the apex at {u}-{v}"
                                ));
                            }
                        }
                    }
                }
            }
            let degenerate = legs.iter().any(|l| l.len() == 1);
            match overlap {
                Some(pw) => check_path(pw),
                None if degenerate => {
                    Err("apex is a far end but no path overlap is reported".into())
                }
                None => Ok(()),
            }
        }
        TypeWitness::Triangle { legs } => {
            far_ends_ok(legs)?;
            let near = [legs[0][0], legs[1][0], legs[2][0]];
            for i in 0..3 {
                for j in i + 1..3 {
                    for &u in &legs[i] {
                        for &v in &legs[j] {
                            let expected = u == near[i] && v == near[j];
                            if u == v || g.has_edge(u, v) != expected {
                                return Err(format!(
                                    "legs {i} and {j}: pair {u}-{v} breaks the triangle rule"
                                ));
                            }
                        }
                    }
                }
            }
            Ok(())
        }
    }
}

fn sets_bits(g: &Graph, sets: [&VertexSet; 3]) -> Result<[FixedBitSet; 3]> {
    Ok([
        bits(g, sets[0], "X")?,
        bits(g, sets[1], "Y")?,
        bits(g, sets[2], "Z")?,
    ])
}

fn type_hypotheses(g: &Graph, a: &FixedBitSet, s: &[FixedBitSet; 3]) -> Result<()> {
    check_disjoint(&[("A", a), ("X", &s[0]), ("Y", &s[1]), ("Z", &s[2])])?;
    check_connected(g, &[("A", a)])?;
    check_sees_all(g, "A", a, &[("X", &s[0]), ("Y", &s[1]), ("Z", &s[2])])
}

/// Type of `a` with respect to the three sets, built as in the type lemma:
/// a shortest path `P` from `X`-seers to `Z`-seers, then a shortest path `Q`
/// from `Y`-seers to the neighbors of `P`, shrinking `P ∪ Q` until the
/// neighbors of `Q`'s end on `P` are one vertex (claw) or an edge (triangle).
pub fn classify_type(g: &Graph, a: &VertexSet, sets: [&VertexSet; 3]) -> Result<TypeWitness> {
    let within = bits(g, a, "A")?;
    let sb = sets_bits(g, sets)?;
    type_hypotheses(g, &within, &sb)?;
    let s = [&sb[0], &sb[1], &sb[2]];
    let w = classify_bits(g, &within, s);
    if let Err(e) = verify_type(g, a, sets, &w) {
        return Err(Error::InvalidInput(format!(
            "internal: type witness failed verification: {e}"
        )));
    }
    Ok(w)
}

fn classify_bits(g: &Graph, within: &FixedBitSet, s: [&FixedBitSet; 3]) -> TypeWitness {
    let mut p = g
        .shortest_path(&seers(g, within, s[0]), &seers(g, within, s[2]), within)
        .expect("A is connected and sees X and Z");
    if path_sees(g, &p, s[1]) {
        return TypeWitness::Path(window(g, within, s, &p));
    }
    let mut q = {
        let mut rest = within.clone();
        for &v in &p {
            rest.set(v, false);
        }
        let mut touch = g.no_vertices();
        for &v in &p {
            touch.union_with(g.row(v));
        }
        touch.intersect_with(&rest);
        g.shortest_path(&seers(g, &rest, s[1]), &touch, &rest)
            .expect("A is connected and sees Y off P")
    };
    loop {
        let (qx, qz) = (path_sees(g, &q, s[0]), path_sees(g, &q, s[2]));
        if qx && qz {
            return TypeWitness::Path(window(g, within, s, &q));
        }
        let end = *q.last().unwrap();
        let touching: Vec<usize> = (0..p.len()).filter(|&i| g.has_edge(end, p[i])).collect();
        let (ia, ib) = (touching[0], *touching.last().unwrap());
        if qx {
            let joined: Vec<Vertex> = q.iter().chain(&p[ib..]).copied().collect();
            return TypeWitness::Path(window(g, within, s, &joined));
        }
        if qz {
            let joined: Vec<Vertex> = q.iter().chain(p[..=ia].iter().rev()).copied().collect();
            return TypeWitness::Path(window(g, within, s, &joined));
        }
        if ia == ib {
            let apex = p[ia];
            let to_x: Vec<Vertex> = p[..=ia].iter().rev().copied().collect();
            let to_y: Vec<Vertex> = std::iter::once(apex)
                .chain(q.iter().rev().copied())
                .collect();
            let to_z: Vec<Vertex> = p[ia..].to_vec();
            let overlap = if ia == 0 {
                Some(window(
                    g,
                    within,
                    s,
                    &q.iter().chain(&p).copied().collect::<Vec<_>>(),
                ))
            } else if ia == p.len() - 1 {
                Some(window(
                    g,
                    within,
                    s,
                    &q.iter().chain(p.iter().rev()).copied().collect::<Vec<_>>(),
                ))
            } else {
                None
            };
            return TypeWitness::Claw {
                apex,
                legs: [to_x, to_y, to_z],
                overlap,
            };
        }
        if ib == ia + 1 {
            let legs = [
                p[..=ia].iter().rev().copied().collect(),
                q.iter().rev().copied().collect(),
                p[ib..].to_vec(),
            ];
            return TypeWitness::Triangle { legs };
        }
        let shortcut: Vec<Vertex> = p[..=ia]
            .iter()
            .chain(std::iter::once(&end))
            .chain(&p[ib..])
            .copied()
            .collect();
        if q.len() == 1 {
            return TypeWitness::Path(window(g, within, s, &shortcut));
        }
        p = shortcut;
        q.pop();
    }
}

/// An induced path in `within` from a vertex seeing `sets[first]` to one
/// seeing `sets[last]`, each set seen only at its end, that sees
/// `sets[center]`. With `shortest`, the shortest such path, ties broken by
/// the smallest vertex sequence; otherwise the first found in that order.
/// `None` when no such path exists; an error when the budget runs out.
pub fn find_path_witness(
    g: &Graph,
    within: &FixedBitSet,
    sets: [&FixedBitSet; 3],
    (first, last, center): (usize, usize, usize),
    shortest: bool,
    budget: &mut Budget,
) -> Result<Option<Vec<Vertex>>> {
    struct Walk<'a> {
        g: &'a Graph,
        within: &'a FixedBitSet,
        first: &'a FixedBitSet,
        last: &'a FixedBitSet,
        center: &'a FixedBitSet,
        shortest: bool,
        best: Option<Vec<Vertex>>,
    }
    impl Walk<'_> {
        fn offer(&mut self, p: &[Vertex]) {
            if path_sees(self.g, p, self.center)
                && self
                    .best
                    .as_ref()
                    .is_none_or(|b| (p.len(), p) < (b.len(), b.as_slice()))
            {
                self.best = Some(p.to_vec());
            }
        }

        fn done(&self) -> bool {
            !self.shortest && self.best.is_some()
        }

        fn extend(
            &mut self,
            p: &mut Vec<Vertex>,
            blocked: &FixedBitSet,
            budget: &mut Budget,
        ) -> Result<()> {
            if budget.tick().is_err() {
                return Err(Error::Refused("path enumeration ran out of budget".into()));
            }
            if self.best.as_ref().is_some_and(|b| p.len() + 1 > b.len()) || self.done() {
                return Ok(());
            }
            let tip = *p.last().unwrap();
            let mut next = blocked.clone();
            next.union_with(self.g.row(tip));
            for &w in self.g.neighbors(tip) {
                if !self.within.contains(w)
                    || blocked.contains(w)
                    || p.contains(&w)
                    || sees(self.g, w, self.first)
                {
                    continue;
                }
                p.push(w);
                if sees(self.g, w, self.last) {
                    self.offer(p);
                } else {
                    self.extend(p, &next, budget)?;
                }
                p.pop();
                if self.done() {
                    break;
                }
            }
            Ok(())
        }
    }
    let mut walk = Walk {
        g,
        within,
        first: sets[first],
        last: sets[last],
        center: sets[center],
        shortest,
        best: None,
    };
    for start in seers(g, within, sets[first]).ones() {
        if walk.done() {
            break;
        }
        let mut p = vec![start];
        if sees(g, start, sets[last]) {
            walk.offer(&p);
            continue;
        }
        walk.extend(&mut p, &g.no_vertices(), budget)?;
    }
    Ok(walk.best)
}

/// Every set index `W` such that `a` is of type path centered at `W`, by
/// exhaustive search over induced paths in `a`.
pub fn path_type_centers(g: &Graph, a: &VertexSet, sets: [&VertexSet; 3]) -> Result<Vec<usize>> {
    let within = bits(g, a, "A")?;
    let sb = sets_bits(g, sets)?;
    type_hypotheses(g, &within, &sb)?;
    centers_bits(
        g,
        &within,
        [&sb[0], &sb[1], &sb[2]],
        &mut Budget::new(DEFAULT_BUDGET),
    )
}

pub(crate) fn centers_bits(
    g: &Graph,
    within: &FixedBitSet,
    s: [&FixedBitSet; 3],
    budget: &mut Budget,
) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for c in 0..3 {
        let (u, v) = others(c);
        if find_path_witness(g, within, s, (u, v, c), false, budget)?.is_some() {
            out.push(c);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OnePathReport {
    pub a: TypeWitness,
    pub b: TypeWitness,
    pub a_centers: Vec<usize>,
    pub b_centers: Vec<usize>,
    /// Both sets are of type path.
    pub holds: bool,
    pub host: HostStatus,
}

impl OnePathReport {
    /// The conclusion fails on a host where it is guaranteed.
    pub fn violation(&self) -> bool {
        !self.holds && self.host.guarantees()
    }
}

/// Checks that two anticomplete connected sets, each seeing all three
/// pairwise anticomplete connected sets, are both of type path.
pub fn check_one_path(
    g: &Graph,
    a: &VertexSet,
    b: &VertexSet,
    sets: [&VertexSet; 3],
    mode: HostMode,
) -> Result<OnePathReport> {
    let (ab, bb) = (bits(g, a, "A")?, bits(g, b, "B")?);
    let sb = sets_bits(g, sets)?;
    let named = [
        ("A", &ab),
        ("B", &bb),
        ("X", &sb[0]),
        ("Y", &sb[1]),
        ("Z", &sb[2]),
    ];
    check_disjoint(&named)?;
    check_connected(g, &named)?;
    check_anticomplete(g, &named[2..])?;
    check_anticomplete(g, &named[..2])?;
    let s3 = [("X", &sb[0]), ("Y", &sb[1]), ("Z", &sb[2])];
    check_sees_all(g, "A", &ab, &s3)?;
    check_sees_all(g, "B", &bb, &s3)?;
    let s = [&sb[0], &sb[1], &sb[2]];
    let mut budget = Budget::new(DEFAULT_BUDGET);
    let a_centers = centers_bits(g, &ab, s, &mut budget)?;
    let b_centers = centers_bits(g, &bb, s, &mut budget)?;
    Ok(OnePathReport {
        a: classify_type(g, a, sets)?,
        b: classify_type(g, b, sets)?,
        holds: !a_centers.is_empty() && !b_centers.is_empty(),
        a_centers,
        b_centers,
        host: host_status(g, mode),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AllPathReport {
    /// Center set of each part.
    pub centers: Vec<Vec<usize>>,
    /// Every part is of type path.
    pub all_path: bool,
    /// The center sets are a chain under inclusion.
    pub linear: bool,
    /// Centers shared by every part.
    pub common: Vec<usize>,
    pub host: HostStatus,
}

impl AllPathReport {
    pub fn holds(&self) -> bool {
        self.all_path && self.linear && !self.common.is_empty()
    }

    pub fn violation(&self) -> bool {
        !self.holds() && self.host.guarantees()
    }
}

/// Checks that pairwise anticomplete connected parts, each seeing all three
/// sets, are all of type path with a common center, and that their center
/// sets are linearly ordered by inclusion.
pub fn check_all_path_common_center(
    g: &Graph,
    parts: &[VertexSet],
    sets: [&VertexSet; 3],
    mode: HostMode,
) -> Result<AllPathReport> {
    if parts.len() < 2 {
        return precondition("need at least two parts");
    }
    let pb: Vec<FixedBitSet> = parts
        .iter()
        .enumerate()
        .map(|(i, p)| bits(g, p, &format!("A{i}")))
        .collect::<Result<_>>()?;
    let sb = sets_bits(g, sets)?;
    let names: Vec<String> = (0..parts.len()).map(|i| format!("A{i}")).collect();
    let mut named: Vec<(&str, &FixedBitSet)> = vec![("X", &sb[0]), ("Y", &sb[1]), ("Z", &sb[2])];
    named.extend(names.iter().map(|s| s.as_str()).zip(pb.iter()));
    check_disjoint(&named)?;
    check_connected(g, &named)?;
    check_anticomplete(g, &named[..3])?;
    check_anticomplete(g, &named[3..])?;
    let s3 = [("X", &sb[0]), ("Y", &sb[1]), ("Z", &sb[2])];
    for (name, p) in &named[3..] {
        check_sees_all(g, name, p, &s3)?;
    }
    let s = [&sb[0], &sb[1], &sb[2]];
    let mut budget = Budget::new(DEFAULT_BUDGET);
    let centers: Vec<Vec<usize>> = pb
        .iter()
        .map(|p| centers_bits(g, p, s, &mut budget))
        .collect::<Result<_>>()?;
    let subset = |x: &Vec<usize>, y: &Vec<usize>| x.iter().all(|c| y.contains(c));
    let linear = centers
        .iter()
        .all(|x| centers.iter().all(|y| subset(x, y) || subset(y, x)));
    let common: Vec<usize> = (0..3)
        .filter(|c| centers.iter().all(|t| t.contains(c)))
        .collect();
    Ok(AllPathReport {
        all_path: centers.iter().all(|t| !t.is_empty()),
        linear,
        common,
        centers,
        host: host_status(g, mode),
    })
}
