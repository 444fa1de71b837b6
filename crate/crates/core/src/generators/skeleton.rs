//! Planted six-path skeletons: a hole through four paths plus two short
//! paths attached across it, forming a `K_{3,3}` induced-minor model.
//!
//! Layout before relabeling: the hole runs `A'` (a..a'), `R` (r..r'),
//! `C'` backwards (c'..c), `P` backwards (p'..p) and closes with `p a`.
//! `B'` (b..b', one or two vertices) has `b` on a run of `P` and `b'` on a run
//! of `R`; `Q` (q..q') has `q` on a run of `A'` and `q'` on a run of `C'`.
//! `B'` and `Q` are joined completely, or by three of the four cross pairs.
//!
//! Scattered attachments use pairwise non-consecutive vertices instead of a
//! run; with single-vertex `B'` and `Q` the host is then triangle-free.
//! Perturbed instances relax the attachment size and cross pattern, so they
//! break the skeleton properties and usually contain a 3PC.

use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng;

use super::rng_for;
use crate::graph::{Graph, Vertex, VertexSet};

#[derive(Clone, Debug, PartialEq)]
pub struct PlantParams {
    /// Each of `A'`, `C'`, `P`, `R` has `min_long..=min_long + long_extra`
    /// vertices; `min_long` is at least 3.
    pub min_long: usize,
    pub long_extra: usize,
    /// Attachment runs have `3..=max_run` consecutive vertices.
    pub max_run: usize,
    /// Up to this many pendant tree vertices are grown on each of the
    /// containing sets `X`, `Y`, `Z`.
    pub set_extra: usize,
    pub shuffle: bool,
    /// Attach to pairwise non-consecutive vertices rather than a run, where
    /// the path is long enough.
    pub scattered: bool,
    /// `B'` and `Q` have `1..=max_middle` vertices (1 or 2).
    pub max_middle: usize,
    /// Attachments have at least this many vertices; below 3 the instance
    /// leaves the skeleton shape.
    pub min_attach: usize,
    /// Join `B'` and `Q` by any nonempty set of cross pairs.
    pub any_cross: bool,
}

impl Default for PlantParams {
    fn default() -> Self {
        PlantParams {
            min_long: 3,
            long_extra: 3,
            max_run: 4,
            set_extra: 2,
            shuffle: true,
            scattered: false,
            max_middle: 2,
            min_attach: 3,
            any_cross: false,
        }
    }
}

/// A planted instance. `abc` are the three equal-to-a-path sets, `xyz` the
/// three containing sets, both in a random role order; `middle_abc` and
/// `middle_xyz` index the sets holding `B'` and `Q`.
#[derive(Clone, Debug)]
pub struct PlantedSkeleton {
    pub host: Graph,
    pub abc: [VertexSet; 3],
    pub xyz: [VertexSet; 3],
    pub middle_abc: usize,
    pub middle_xyz: usize,
    /// `A', B', C', P, Q, R` as vertex sequences.
    pub paths: [Vec<Vertex>; 6],
    pub hole: Vec<Vertex>,
}

struct Build {
    edges: Vec<(Vertex, Vertex)>,
    n: usize,
}

impl Build {
    fn path(&mut self, len: usize) -> Vec<Vertex> {
        let p: Vec<Vertex> = (self.n..self.n + len).collect();
        self.n += len;
        for w in p.windows(2) {
            self.edges.push((w[0], w[1]));
        }
        p
    }

    fn attach(&mut self, rng: &mut impl Rng, v: Vertex, on: &[Vertex], params: &PlantParams) {
        let low = params.min_attach.clamp(1, 3).min(on.len());
        let high = params.max_run.max(low).min(on.len());
        let k = rng.random_range(low..=high);
        // k pairwise non-consecutive positions need 2k - 1 slots
        if params.scattered && k >= 2 && 2 * k - 1 <= on.len() {
            let mut picks = rand::seq::index::sample(rng, on.len() - (k - 1), k).into_vec();
            picks.sort_unstable();
            for (j, i) in picks.into_iter().enumerate() {
                self.edges.push((v, on[i + j]));
            }
        } else {
            let start = rng.random_range(0..=on.len() - k);
            for &w in &on[start..start + k] {
                self.edges.push((v, w));
            }
        }
    }
}

pub fn plant_skeleton(params: &PlantParams, seed: u64) -> PlantedSkeleton {
    let mut rng = rng_for(seed, 0);
    let mut bd = Build {
        edges: Vec::new(),
        n: 0,
    };
    let long = |bd: &mut Build, rng: &mut rand_chacha::ChaCha8Rng| {
        let len = params.min_long.max(3) + rng.random_range(0..=params.long_extra);
        bd.path(len)
    };
    let a = long(&mut bd, &mut rng);
    let c = long(&mut bd, &mut rng);
    let p = long(&mut bd, &mut rng);
    let r = long(&mut bd, &mut rng);
    let (a0, a1) = (a[0], *a.last().unwrap());
    let (c0, c1) = (c[0], *c.last().unwrap());
    let (p0, p1) = (p[0], *p.last().unwrap());
    let (r0, r1) = (r[0], *r.last().unwrap());
    bd.edges.extend([(a1, r0), (r1, c1), (c0, p1), (p0, a0)]);

    let b_len = rng.random_range(1..=params.max_middle.clamp(1, 2));
    let q_len = rng.random_range(1..=params.max_middle.clamp(1, 2));
    let b = bd.path(b_len);
    let q = bd.path(q_len);
    bd.attach(&mut rng, b[0], &p, params);
    bd.attach(&mut rng, *b.last().unwrap(), &r, params);
    bd.attach(&mut rng, q[0], &a, params);
    bd.attach(&mut rng, *q.last().unwrap(), &c, params);
    let mut cross: Vec<(Vertex, Vertex)> = b
        .iter()
        .flat_map(|&x| q.iter().map(move |&y| (x, y)))
        .collect();
    if params.any_cross {
        let all = cross.clone();
        cross.retain(|_| rng.random_bool(0.5));
        if cross.is_empty() {
            cross.push(*all.choose(&mut rng).expect("nonempty"));
        }
    } else if cross.len() == 4 && rng.random_bool(0.5) {
        let drop = rng.random_range(0..4);
        cross.remove(drop);
    }
    bd.edges.extend(cross);

    // pendant trees keep the containing sets connected and add no cycles
    let grow = |bd: &mut Build, rng: &mut rand_chacha::ChaCha8Rng, base: &[Vertex]| {
        let mut set = base.to_vec();
        for _ in 0..rng.random_range(0..=params.set_extra) {
            let parent = *set.choose(rng).expect("nonempty");
            let w = bd.n;
            bd.n += 1;
            bd.edges.push((parent, w));
            set.push(w);
        }
        set
    };
    let x_set = grow(&mut bd, &mut rng, &p);
    let y_set = grow(&mut bd, &mut rng, &q);
    let z_set = grow(&mut bd, &mut rng, &r);

    let mut hole = a.clone();
    hole.extend(&r);
    hole.extend(c.iter().rev());
    hole.extend(p.iter().rev());

    let n = bd.n;
    let mut label: Vec<Vertex> = (0..n).collect();
    if params.shuffle {
        label.shuffle(&mut rng);
    }
    let map = |s: &[Vertex]| s.iter().map(|&v| label[v]).collect::<Vec<_>>();
    let set = |s: &[Vertex]| s.iter().map(|&v| label[v]).collect::<VertexSet>();
    let edges: Vec<_> = bd
        .edges
        .iter()
        .map(|&(u, v)| (label[u], label[v]))
        .collect();
    let host = Graph::from_edges(n, &edges).expect("planted edges are simple");

    let mut abc_order = [0usize, 1, 2];
    let mut xyz_order = [0usize, 1, 2];
    abc_order.shuffle(&mut rng);
    xyz_order.shuffle(&mut rng);
    let abc_sets = [set(&a), set(&b), set(&c)];
    let xyz_sets = [set(&x_set), set(&y_set), set(&z_set)];
    PlantedSkeleton {
        host,
        abc: abc_order.map(|i| abc_sets[i].clone()),
        xyz: xyz_order.map(|i| xyz_sets[i].clone()),
        middle_abc: abc_order.iter().position(|&i| i == 1).unwrap(),
        middle_xyz: xyz_order.iter().position(|&i| i == 1).unwrap(),
        paths: [map(&a), map(&b), map(&c), map(&p), map(&q), map(&r)],
        hole: map(&hole),
    }
}
