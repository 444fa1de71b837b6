//! Brute-force oracles for the acceptance run. Each works on its own bitmask
//! adjacency and shares no search code with the library; only `Graph` is
//! used, to read edges.

#![allow(dead_code)]

use imlab::graph::Graph;

pub type Mask = u128;

/// Adjacency rows as bitmasks; at most 128 vertices.
#[derive(Clone, Debug)]
pub struct Adj {
    pub n: usize,
    pub rows: Vec<Mask>,
}

impl Adj {
    pub fn new(g: &Graph) -> Self {
        assert!(g.n() <= 128, "oracles handle at most 128 vertices");
        let mut rows = vec![0; g.n()];
        for (u, v) in g.edges() {
            rows[u] |= 1 << v;
            rows[v] |= 1 << u;
        }
        Adj { n: g.n(), rows }
    }

    pub fn edge(&self, u: usize, v: usize) -> bool {
        self.rows[u] >> v & 1 == 1
    }

    pub fn all(&self) -> Mask {
        if self.n == 128 {
            !0
        } else {
            (1 << self.n) - 1
        }
    }

    pub fn deg_in(&self, v: usize, set: Mask) -> u32 {
        (self.rows[v] & set).count_ones()
    }

    /// Union of the neighborhoods of `set`.
    pub fn reach(&self, set: Mask) -> Mask {
        ones(set).fold(0, |acc, v| acc | self.rows[v])
    }

    pub fn connected(&self, set: Mask) -> bool {
        if set == 0 {
            return false;
        }
        let mut seen = set & set.wrapping_neg();
        loop {
            let next = (seen | self.reach(seen)) & set;
            if next == seen {
                return seen == set;
            }
            seen = next;
        }
    }

    pub fn components(&self, set: Mask) -> Vec<Mask> {
        let mut left = set;
        let mut out = Vec::new();
        while left != 0 {
            let mut comp = left & left.wrapping_neg();
            loop {
                let next = (comp | self.reach(comp)) & left;
                if next == comp {
                    break;
                }
                comp = next;
            }
            out.push(comp);
            left &= !comp;
        }
        out
    }

    pub fn edges_in(&self, set: Mask) -> u32 {
        ones(set).map(|v| self.deg_in(v, set)).sum::<u32>() / 2
    }
}

pub fn ones(mut m: Mask) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            return None;
        }
        let v = m.trailing_zeros() as usize;
        m &= m - 1;
        Some(v)
    })
}

pub fn mask_of(vs: &[usize]) -> Mask {
    vs.iter().fold(0, |m, &v| m | 1 << v)
}

/// Every assignment of host vertices to pattern vertices or to "deleted";
/// the sets must be nonempty and connected, and two sets touch exactly when
/// the pattern has the edge.
pub fn induced_minor_bruteforce(host: &Graph, pattern: &Graph) -> bool {
    let (h, p) = (Adj::new(host), Adj::new(pattern));
    let (n, k) = (h.n, p.n);
    if k == 0 {
        return true;
    }
    let mut label = vec![0usize; n];
    loop {
        let mut sets = vec![0 as Mask; k];
        for (v, &l) in label.iter().enumerate() {
            if l < k {
                sets[l] |= 1 << v;
            }
        }
        if sets.iter().all(|&s| s != 0) && is_model(&h, &p, &sets) {
            return true;
        }
        // next assignment in base k + 1
        let mut i = 0;
        loop {
            if i == n {
                return false;
            }
            label[i] += 1;
            if label[i] <= k {
                break;
            }
            label[i] = 0;
            i += 1;
        }
    }
}

fn is_model(h: &Adj, p: &Adj, sets: &[Mask]) -> bool {
    if !sets.iter().all(|&s| h.connected(s)) {
        return false;
    }
    for i in 0..sets.len() {
        let near = h.reach(sets[i]);
        for j in i + 1..sets.len() {
            if (near & sets[j] != 0) != p.edge(i, j) {
                return false;
            }
        }
    }
    true
}

/// Checks given branch sets as an induced-minor model.
pub fn verify_induced_model(host: &Graph, pattern: &Graph, sets: &[Vec<usize>]) -> bool {
    let (h, p) = (Adj::new(host), Adj::new(pattern));
    if sets.len() != p.n || sets.iter().flatten().any(|&v| v >= h.n) {
        return false;
    }
    let masks: Vec<Mask> = sets.iter().map(|s| mask_of(s)).collect();
    let total: u32 = masks.iter().map(|m| m.count_ones()).sum();
    let union = masks.iter().fold(0, |a, &m| a | m);
    union.count_ones() == total && masks.iter().all(|&m| m != 0) && is_model(&h, &p, &masks)
}

/// Induced subgraph isomorphism by extending a partial map in BFS order of a
/// connected pattern.
pub fn induced_subgraph_bruteforce(host: &Graph, pattern: &Graph) -> bool {
    let (h, p) = (Adj::new(host), Adj::new(pattern));
    assert!(p.connected(p.all()), "pattern must be connected");
    let mut order = vec![0];
    let mut parent = vec![usize::MAX];
    let mut seen: Mask = 1;
    let mut i = 0;
    while i < order.len() {
        for w in ones(p.rows[order[i]] & !seen) {
            seen |= 1 << w;
            order.push(w);
            parent.push(order[i]);
        }
        i += 1;
    }
    let mut map = vec![usize::MAX; p.n];
    fn extend(
        h: &Adj,
        p: &Adj,
        order: &[usize],
        parent: &[usize],
        map: &mut Vec<usize>,
        used: Mask,
        i: usize,
    ) -> bool {
        if i == order.len() {
            return true;
        }
        let u = order[i];
        let candidates = if i == 0 {
            h.all()
        } else {
            h.rows[map[parent[i]]]
        } & !used;
        for x in ones(candidates) {
            let ok = order[..i]
                .iter()
                .all(|&w| p.edge(u, w) == h.edge(x, map[w]));
            if ok {
                map[u] = x;
                if extend(h, p, order, parent, map, used | 1 << x, i + 1) {
                    return true;
                }
            }
        }
        map[u] = usize::MAX;
        false
    }
    extend(&h, &p, &order, &parent, &mut map, 0, 0)
}

/// `G[set]` is a theta: two nonadjacent degree-3 vertices, the rest of
/// degree 2, and removing the two leaves three pieces each seeing both.
pub fn set_is_theta(g: &Adj, set: Mask) -> bool {
    if set.count_ones() < 5 || !g.connected(set) {
        return false;
    }
    let mut big = Vec::new();
    for v in ones(set) {
        match g.deg_in(v, set) {
            2 => {}
            3 => big.push(v),
            _ => return false,
        }
    }
    if big.len() != 2 || g.edge(big[0], big[1]) {
        return false;
    }
    let comps = g.components(set & !(1 << big[0]) & !(1 << big[1]));
    comps.len() == 3
        && comps
            .iter()
            .all(|&c| g.rows[big[0]] & c != 0 && g.rows[big[1]] & c != 0)
}

/// Some vertex subset induces a theta. Exponential; small graphs only.
pub fn has_theta_by_subsets(g: &Graph) -> bool {
    let a = Adj::new(g);
    assert!(a.n <= 20);
    (0..(1 as Mask) << a.n).any(|s| set_is_theta(&a, s))
}

/// Some three vertices are pairwise adjacent.
pub fn has_triangle(g: &Graph) -> bool {
    let a = Adj::new(g);
    (0..a.n).any(|u| {
        ones(a.rows[u] & (!0 as Mask).checked_shl(u as u32 + 1).unwrap_or(0))
            .any(|v| a.rows[u] & a.rows[v] != 0)
    })
}

/// Theta search that scales to sparse graphs: for every nonadjacent pair,
/// collect the induced paths of length at least two between them and look
/// for three whose interiors are disjoint and pairwise anticomplete.
pub fn has_theta_by_paths(g: &Graph) -> bool {
    let a = Adj::new(g);
    for s in 0..a.n {
        for t in s + 1..a.n {
            if a.edge(s, t) {
                continue;
            }
            let interiors = induced_path_interiors(&a, s, t);
            let compatible = |x: Mask, y: Mask| x & y == 0 && a.reach(x) & y == 0;
            for i in 0..interiors.len() {
                for j in i + 1..interiors.len() {
                    if !compatible(interiors[i], interiors[j]) {
                        continue;
                    }
                    if interiors[j + 1..]
                        .iter()
                        .any(|&z| compatible(interiors[i], z) && compatible(interiors[j], z))
                    {
                        return true;
                    }
                }
            }
        }
    }
    false
}

/// Interiors of the induced `s`-`t` paths with at least one interior vertex.
/// Invariant while walking: no path vertex is adjacent to `t`, so a vertex
/// next to `t` must be the last interior vertex.
fn induced_path_interiors(a: &Adj, s: usize, t: usize) -> Vec<Mask> {
    fn walk(a: &Adj, t: usize, tip: usize, path: Mask, interior: Mask, out: &mut Vec<Mask>) {
        for w in ones(a.rows[tip] & !path) {
            if w == t || a.rows[w] & path != 1 << tip {
                continue;
            }
            if a.edge(w, t) {
                out.push(interior | 1 << w);
            } else {
                walk(a, t, w, path | 1 << w, interior | 1 << w, out);
            }
        }
    }
    let mut out = Vec::new();
    walk(a, t, s, 1 << s, 0, &mut out);
    out.sort();
    out.dedup();
    out
}

/// All simple paths as vertex sequences, each once (first vertex not larger
/// than the last), single vertices included.
pub fn all_paths(a: &Adj) -> Vec<Vec<usize>> {
    fn rec(a: &Adj, p: &mut Vec<usize>, used: Mask, out: &mut Vec<Vec<usize>>) {
        if p[0] <= *p.last().unwrap() {
            out.push(p.clone());
        }
        for w in ones(a.rows[*p.last().unwrap()] & !used) {
            p.push(w);
            rec(a, p, used | 1 << w, out);
            p.pop();
        }
    }
    let mut out = Vec::new();
    for v in 0..a.n {
        rec(a, &mut vec![v], 1 << v, &mut out);
    }
    out
}

/// `G[set]` is a chordless cycle on at least four vertices.
pub fn set_is_hole(a: &Adj, set: Mask) -> bool {
    set.count_ones() >= 4 && ones(set).all(|v| a.deg_in(v, set) == 2) && a.connected(set)
}

/// The literal characterization: three pairwise internally disjoint paths
/// covering the graph, each two inducing a hole. Every vertex then lies on a
/// hole, and each hole adds at most two edges to the path edges, so graphs
/// meeting it are connected with minimum degree 2 and at most `n + 3` edges,
/// which prunes the search.
pub fn pairwise_hole_characterization(g: &Graph) -> bool {
    let a = Adj::new(g);
    let n = a.n;
    let m = a.edges_in(a.all()) as usize;
    if n < 5 || !a.connected(a.all()) || (0..n).any(|v| a.deg_in(v, a.all()) < 2) || m > n + 3 {
        return false;
    }
    let paths = all_paths(&a);
    let info: Vec<(Mask, Mask)> = paths
        .iter()
        .map(|p| (mask_of(p), 1 << p[0] | 1 << p[p.len() - 1]))
        .collect();
    // no vertex of one path is inside the other, except shared ends
    let disjoint = |x: (Mask, Mask), y: (Mask, Mask)| (x.0 & y.0) & !(x.1 & y.1) == 0;
    let fits = |x: (Mask, Mask), y: (Mask, Mask)| disjoint(x, y) && set_is_hole(&a, x.0 | y.0);
    for i in 0..info.len() {
        for j in i + 1..info.len() {
            if !fits(info[i], info[j]) {
                continue;
            }
            for &z in &info[j + 1..] {
                if info[i].0 | info[j].0 | z.0 == a.all() && fits(info[i], z) && fits(info[j], z) {
                    return true;
                }
            }
        }
    }
    false
}

/// `K_{3,3}` with the edges of some matching subdivided: six degree-3
/// vertices, the rest degree 2, whose suppression is `K_{3,3}` with the
/// subdivided edges pairwise disjoint.
pub fn is_subdivided_matching_k33(g: &Graph) -> bool {
    let a = Adj::new(g);
    let all = a.all();
    if !a.connected(all) || (0..a.n).any(|v| !(2..=3).contains(&a.deg_in(v, all))) {
        return false;
    }
    let big: Vec<usize> = (0..a.n).filter(|&v| a.deg_in(v, all) == 3).collect();
    if big.len() != 6 {
        return false;
    }
    let mut skeleton = [0 as Mask; 6];
    let mut long_ends: Mask = 0;
    let mut long_count = 0;
    for (i, &u) in big.iter().enumerate() {
        for x in ones(a.rows[u]) {
            let (mut prev, mut cur, mut steps) = (u, x, 1);
            while a.deg_in(cur, all) == 2 {
                let next = ones(a.rows[cur] & !(1 << prev)).next().unwrap();
                (prev, cur, steps) = (cur, next, steps + 1);
            }
            let j = big.iter().position(|&b| b == cur).unwrap();
            if j == i || skeleton[i] >> j & 1 == 1 {
                return false;
            }
            skeleton[i] |= 1 << j;
            if steps > 1 && i < j {
                long_count += 1;
                long_ends |= 1 << i | 1 << j;
            }
        }
    }
    // simple, 3-regular on six vertices, bipartite 3 + 3
    let side = skeleton[0];
    let other = 0b111111 & !side;
    side.count_ones() == 3
        && ones(side).all(|v| skeleton[v] == other)
        && ones(other).all(|v| skeleton[v] == side)
        && long_ends.count_ones() == 2 * long_count
}

/// Length of a longest cycle in `G[set]`, or 0.
pub fn longest_cycle(a: &Adj, set: Mask) -> usize {
    fn rec(a: &Adj, set: Mask, start: usize, tip: usize, used: Mask, len: usize, best: &mut usize) {
        if len >= 3 && a.edge(tip, start) {
            *best = (*best).max(len);
        }
        // only extend through vertices above the start, so each cycle is
        // rooted at its smallest vertex
        for w in ones(a.rows[tip] & set & !used) {
            if w > start {
                rec(a, set, start, w, used | 1 << w, len + 1, best);
            }
        }
    }
    let mut best = 0;
    for s in ones(set) {
        rec(a, set, s, s, 1 << s, 1, &mut best);
    }
    best
}

/// For a tree branch set `B_i`, every leaf `w` has another branch set that
/// meets the neighborhood of `B_i` only at `w`.
pub fn leaves_have_private_sets(a: &Adj, sets: &[Mask], i: usize) -> bool {
    let b = sets[i];
    if b.count_ones() < 2 {
        return true;
    }
    ones(b).filter(|&w| a.deg_in(w, b) == 1).all(|w| {
        sets.iter().enumerate().any(|(j, &s)| {
            j != i
                && ones(b)
                    .filter(|&v| a.rows[v] & s != 0)
                    .eq(std::iter::once(w))
        })
    })
}

/// Centers of every induced path inside `part`, by subset enumeration: the
/// path runs from a vertex seeing one outer set to a vertex seeing the other,
/// with no other contact to those two sets, and some vertex sees the center.
pub fn path_centers(a: &Adj, part: &[usize], sets: [Mask; 3]) -> Vec<usize> {
    assert!(part.len() <= 20);
    let sees = |v: usize, s: Mask| a.rows[v] & s != 0;
    let mut out = Vec::new();
    for bits in 1u32..1 << part.len() {
        let sub: Mask = (0..part.len())
            .filter(|&i| bits >> i & 1 == 1)
            .fold(0, |m, i| m | 1 << part[i]);
        let k = sub.count_ones() as usize;
        if !a.connected(sub)
            || a.edges_in(sub) as usize != k - 1
            || ones(sub).any(|v| a.deg_in(v, sub) > 2)
        {
            continue;
        }
        let start = ones(sub).find(|&v| a.deg_in(v, sub) <= 1).unwrap();
        let mut order = vec![start];
        while order.len() < k {
            let tip = *order.last().unwrap();
            let prev = if order.len() > 1 {
                1 << order[order.len() - 2]
            } else {
                0
            };
            order.push(ones(a.rows[tip] & sub & !prev).next().unwrap());
        }
        for c in 0..3 {
            let (u, v) = match c {
                0 => (1, 2),
                1 => (0, 2),
                _ => (0, 1),
            };
            let fits = |p: &[usize]| {
                sees(p[0], sets[u])
                    && sees(p[k - 1], sets[v])
                    && p[1..].iter().all(|&x| !sees(x, sets[u]))
                    && p[..k - 1].iter().all(|&x| !sees(x, sets[v]))
                    && p.iter().any(|&x| sees(x, sets[c]))
            };
            let rev: Vec<usize> = order.iter().rev().copied().collect();
            if (fits(&order) || fits(&rev)) && !out.contains(&c) {
                out.push(c);
            }
        }
    }
    out.sort();
    out
}

/// `seq` is an induced path in order.
pub fn is_induced_path(a: &Adj, seq: &[usize]) -> bool {
    let set = mask_of(seq);
    !seq.is_empty()
        && set.count_ones() as usize == seq.len()
        && seq.windows(2).all(|w| a.edge(w[0], w[1]))
        && a.edges_in(set) as usize == seq.len() - 1
}

/// `seq` is a chordless cycle in order.
pub fn is_hole_seq(a: &Adj, seq: &[usize]) -> bool {
    let k = seq.len();
    set_is_hole(a, mask_of(seq))
        && mask_of(seq).count_ones() as usize == k
        && (0..k).all(|i| a.edge(seq[i], seq[(i + 1) % k]))
}

/// The six paths of an extracted skeleton, in the order A', B', C', P, Q, R.
pub struct SkeletonView<'a> {
    pub paths: [&'a [usize]; 6],
    pub connector_roles: [usize; 3],
    pub contact_roles: [usize; 3],
}

/// The seven skeleton properties, checked from scratch.
pub fn skeleton_properties(
    g: &Graph,
    sk: &SkeletonView,
    connectors: &[Vec<usize>; 3],
    contacts: &[Vec<usize>; 3],
) -> Result<(), String> {
    let a = Adj::new(g);
    let [ap, bp, cp, p, q, r] = sk.paths;
    let mut union: Mask = 0;
    for seq in sk.paths {
        if !is_induced_path(&a, seq) {
            return Err(format!("{seq:?} is not an induced path"));
        }
        if union & mask_of(seq) != 0 {
            return Err("paths overlap".into());
        }
        union |= mask_of(seq);
    }
    let perm = |x: [usize; 3]| {
        let mut s = x;
        s.sort();
        s == [0, 1, 2]
    };
    if !perm(sk.connector_roles) || !perm(sk.contact_roles) {
        return Err("roles are not a permutation".into());
    }
    for (seq, &i) in [ap, bp, cp].iter().zip(&sk.connector_roles) {
        if mask_of(seq) != mask_of(&connectors[i]) {
            return Err("1: connector path differs from its set".into());
        }
    }
    for (seq, &i) in [p, q, r].iter().zip(&sk.contact_roles) {
        if mask_of(seq) & !mask_of(&contacts[i]) != 0 {
            return Err("2: contact path leaves its set".into());
        }
    }
    let mut hole: Vec<usize> = ap.to_vec();
    hole.extend(r);
    hole.extend(cp.iter().rev());
    hole.extend(p.iter().rev());
    if !is_hole_seq(&a, &hole) {
        return Err("3: A', R, C', P do not close a hole".into());
    }
    let (b0, b1, q0, q1) = (bp[0], bp[bp.len() - 1], q[0], q[q.len() - 1]);
    let anti = |short: &[usize], end: usize, long: &[usize]| {
        mask_of(short) & !(1 << end) & a.reach(mask_of(long)) == 0
    };
    if !(anti(bp, b0, p) && anti(bp, b1, r) && anti(q, q0, ap) && anti(q, q1, cp)) {
        return Err("4: anticompleteness".into());
    }
    if bp.len() > 2 || q.len() > 2 {
        return Err("5: B' or Q too long".into());
    }
    let nb = |v: usize, long: &[usize]| a.deg_in(v, mask_of(long));
    if nb(b0, p) < 3 || nb(b1, r) < 3 || nb(q0, ap) < 3 || nb(q1, cp) < 3 {
        return Err("6: fewer than three attachments".into());
    }
    let (bm, qm) = (mask_of(bp), mask_of(q));
    let cross: u32 = ones(bm).map(|v| a.deg_in(v, qm)).sum();
    let complete = cross as usize == bp.len() * q.len();
    if !complete && !((bm | qm).count_ones() == 4 && a.edges_in(bm | qm) == 5) {
        return Err("7: B' and Q neither complete nor four vertices with five edges".into());
    }
    Ok(())
}
