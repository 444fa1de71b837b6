//! The six-path skeleton behind a `K_{3,3}` induced minor in a host without
//! three-path configurations.

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use super::types::{centers_bits, find_path_witness};
use super::{
    bits, check_anticomplete, check_connected, check_disjoint, check_sees_all, host_status,
    is_minimal_connector, HostMode, HostStatus,
};
use crate::detectors::verify_hole;
use crate::error::{precondition, Result};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::search::{Budget, DEFAULT_BUDGET};

/// `a_path`, `b_path`, `c_path` equal connectors; `p`, `q`, `r` lie in
/// contacts. Connector paths run from the `X'` side to the `Z'` side; contact
/// paths run from the `A'` side to the `C'` side.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct K33Skeleton {
    pub a_path: Vec<Vertex>,
    pub b_path: Vec<Vertex>,
    pub c_path: Vec<Vertex>,
    pub p: Vec<Vertex>,
    pub q: Vec<Vertex>,
    pub r: Vec<Vertex>,
    /// Input connector index of `A'`, `B'`, `C'`.
    pub connector_roles: [usize; 3],
    /// Input contact index of the sets holding `P`, `Q`, `R`.
    pub contact_roles: [usize; 3],
    /// `A'`, then `R`, then `C'` and `P` backwards.
    pub hole: Vec<Vertex>,
}

impl K33Skeleton {
    fn hole_of(&self) -> Vec<Vertex> {
        let mut h = self.a_path.clone();
        h.extend(&self.r);
        h.extend(self.c_path.iter().rev());
        h.extend(self.p.iter().rev());
        h
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkeletonReport {
    pub skeleton: Option<K33Skeleton>,
    /// Why extraction or verification failed.
    pub failure: Option<String>,
    /// Exactly one connector has at most two vertices.
    pub exactly_one_small: bool,
    pub host: HostStatus,
}

impl SkeletonReport {
    pub fn violation(&self) -> bool {
        (self.failure.is_some() || !self.exactly_one_small) && self.host.guarantees()
    }
}

/// Exactly one of the sets has at most two vertices.
pub fn exactly_one_small(sets: &[VertexSet]) -> bool {
    sets.iter().filter(|s| s.len() <= 2).count() == 1
}

fn is_path(g: &Graph, p: &[Vertex]) -> bool {
    !p.is_empty()
        && p.iter().all(|&v| v < g.n())
        && (0..p.len()).all(|i| (i + 1..p.len()).all(|j| p[i] != p[j]))
        && p.windows(2).all(|w| g.has_edge(w[0], w[1]))
}

fn as_bits(g: &Graph, p: &[Vertex]) -> FixedBitSet {
    let mut b = g.no_vertices();
    b.extend(p.iter().copied());
    b
}

fn count_in(g: &Graph, v: Vertex, p: &[Vertex]) -> usize {
    p.iter().filter(|&&w| g.has_edge(v, w)).count()
}

/// Checks the seven skeleton properties from adjacency alone; the error names
/// the failed property by its position (1 to 7).
pub fn verify_skeleton(
    g: &Graph,
    sk: &K33Skeleton,
    connectors: [&VertexSet; 3],
    contacts: [&VertexSet; 3],
) -> Result<(), String> {
    let six = [&sk.a_path, &sk.b_path, &sk.c_path, &sk.p, &sk.q, &sk.r];
    if six.iter().any(|p| !is_path(g, p)) {
        return Err("a skeleton sequence is not a path".into());
    }
    let mut seen = g.no_vertices();
    for p in six {
        for &v in p.iter() {
            if seen.put(v) {
                return Err("skeleton paths are not vertex-disjoint".into());
            }
        }
    }
    let roles_ok =
        |r: &[usize; 3]| r.iter().all(|&i| i < 3) && r[0] != r[1] && r[1] != r[2] && r[0] != r[2];
    if !roles_ok(&sk.connector_roles) || !roles_ok(&sk.contact_roles) {
        return Err("roles are not a permutation".into());
    }
    for (p, &i) in [&sk.a_path, &sk.b_path, &sk.c_path]
        .iter()
        .zip(&sk.connector_roles)
    {
        if VertexSet::new(p.iter().copied()) != *connectors[i] {
            return Err(format!(
                "property 1: path {p:?} is not equal to connector {i}"
            ));
        }
    }
    for (p, &i) in [&sk.p, &sk.q, &sk.r].iter().zip(&sk.contact_roles) {
        if !p.iter().all(|&v| contacts[i].contains(v)) {
            return Err(format!("property 2: path {p:?} is not inside contact {i}"));
        }
    }
    let hole = sk.hole_of();
    if sk.hole != hole || !verify_hole(g, &hole) {
        return Err("property 3: the four long paths do not form a hole".into());
    }
    let (b, b1) = (sk.b_path[0], *sk.b_path.last().unwrap());
    let (q, q1) = (sk.q[0], *sk.q.last().unwrap());
    let anti = [
        (&sk.b_path, b, &sk.p, "B' - b to P"),
        (&sk.b_path, b1, &sk.r, "B' - b' to R"),
        (&sk.q, q, &sk.a_path, "Q - q to A'"),
        (&sk.q, q1, &sk.c_path, "Q - q' to C'"),
    ];
    for (short, end, long, what) in anti {
        if short.iter().any(|&v| v != end && count_in(g, v, long) > 0) {
            return Err(format!("property 4: {what} is not anticomplete"));
        }
    }
    if sk.b_path.len() > 2 || sk.q.len() > 2 {
        return Err("property 5: B' or Q has more than two vertices".into());
    }
    for (v, long, what) in [
        (b, &sk.p, "b in P"),
        (b1, &sk.r, "b' in R"),
        (q, &sk.a_path, "q in A'"),
        (q1, &sk.c_path, "q' in C'"),
    ] {
        if count_in(g, v, long) < 3 {
            return Err(format!("property 6: fewer than three neighbors of {what}"));
        }
    }
    let cross = sk
        .b_path
        .iter()
        .map(|&v| count_in(g, v, &sk.q))
        .sum::<usize>();
    let complete = cross == sk.b_path.len() * sk.q.len();
    let inner = sk.b_path.len() - 1 + sk.q.len() - 1;
    if !complete && !(sk.b_path.len() + sk.q.len() == 4 && inner + cross == 5) {
        return Err(
            "property 7: B' is not complete to Q and B' + Q is not four vertices with five edges"
                .into(),
        );
    }
    Ok(())
}

fn common(t: &[Vec<usize>]) -> Option<usize> {
    (0..3).find(|c| t.iter().all(|s| s.contains(c)))
}

fn others(mid: usize) -> (usize, usize) {
    match mid {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    }
}

/// Builds the skeleton for three minimal connectors and three contact sets.
/// Hypotheses are errors; a host where the construction breaks down gives a
/// report with `failure` set, which is a counterexample exactly when the
/// host status guarantees the conclusion.
pub fn extract_k33_skeleton(
    g: &Graph,
    connectors: [&VertexSet; 3],
    contacts: [&VertexSet; 3],
    mode: HostMode,
) -> Result<SkeletonReport> {
    let cb = [
        bits(g, connectors[0], "A")?,
        bits(g, connectors[1], "B")?,
        bits(g, connectors[2], "C")?,
    ];
    let sb = [
        bits(g, contacts[0], "X")?,
        bits(g, contacts[1], "Y")?,
        bits(g, contacts[2], "Z")?,
    ];
    let cn = [("A", &cb[0]), ("B", &cb[1]), ("C", &cb[2])];
    let sn = [("X", &sb[0]), ("Y", &sb[1]), ("Z", &sb[2])];
    let all: Vec<_> = cn.iter().chain(&sn).copied().collect();
    check_disjoint(&all)?;
    check_connected(g, &all)?;
    check_anticomplete(g, &sn)?;
    check_anticomplete(g, &cn)?;
    for (name, c) in cn {
        check_sees_all(g, name, c, &sn)?;
        if !is_minimal_connector(g, c, [&sb[0], &sb[1], &sb[2]]) {
            return precondition(format!(
                "a connected proper subset of {name} sees all three contact sets"
            ));
        }
    }
    let host = host_status(g, mode);
    let small = exactly_one_small(&connectors.map(|c| c.clone()));
    let fail = |msg: String| {
        Ok(SkeletonReport {
            skeleton: None,
            failure: Some(msg),
            exactly_one_small: small,
            host: host.clone(),
        })
    };

    let s3 = [&sb[0], &sb[1], &sb[2]];
    let c3 = [&cb[0], &cb[1], &cb[2]];
    let mut budget = Budget::new(DEFAULT_BUDGET);
    let conn_centers: Vec<Vec<usize>> = c3
        .iter()
        .map(|c| centers_bits(g, c, s3, &mut budget))
        .collect::<Result<_>>()?;
    let Some(y_mid) = common(&conn_centers) else {
        return fail(format!(
            "connectors have no common center: {conn_centers:?}"
        ));
    };
    let cont_centers: Vec<Vec<usize>> = s3
        .iter()
        .map(|s| centers_bits(g, s, c3, &mut budget))
        .collect::<Result<_>>()?;
    let Some(b_mid) = common(&cont_centers) else {
        return fail(format!(
            "contact sets have no common center: {cont_centers:?}"
        ));
    };
    let (x_side, z_side) = others(y_mid);
    let (a_side, c_side) = others(b_mid);
    let connector_roles = [a_side, b_mid, c_side];
    let contact_roles = [x_side, y_mid, z_side];

    let witness = |within: &FixedBitSet,
                   sets: [&FixedBitSet; 3],
                   ends: (usize, usize, usize),
                   budget: &mut Budget| {
        find_path_witness(g, within, sets, ends, true, budget).map(|p| p.ok_or(()))
    };
    let mut conn_paths = Vec::new();
    for &i in &connector_roles {
        match witness(c3[i], s3, (x_side, z_side, y_mid), &mut budget)? {
            Ok(p) if as_bits(g, &p) == *c3[i] => conn_paths.push(p),
            Ok(p) => return fail(format!("connector {i} is not equal to its path {p:?}")),
            Err(()) => {
                return fail(format!(
                    "connector {i} has no path centered at contact {y_mid}"
                ))
            }
        }
    }
    let mut cont_paths = Vec::new();
    for &i in &contact_roles {
        match witness(s3[i], c3, (a_side, c_side, b_mid), &mut budget)? {
            Ok(p) => cont_paths.push(p),
            Err(()) => {
                return fail(format!(
                    "contact {i} has no path centered at connector {b_mid}"
                ))
            }
        }
    }
    let mut it = conn_paths.into_iter().chain(cont_paths);
    let mut next = || it.next().expect("six paths");
    let mut sk = K33Skeleton {
        a_path: next(),
        b_path: next(),
        c_path: next(),
        p: next(),
        q: next(),
        r: next(),
        connector_roles,
        contact_roles,
        hole: Vec::new(),
    };
    sk.hole = sk.hole_of();
    match verify_skeleton(g, &sk, connectors, contacts) {
        Ok(()) => Ok(SkeletonReport {
            skeleton: Some(sk),
            failure: None,
            exactly_one_small: small,
            host,
        }),
        Err(e) => fail(e),
    }
}
