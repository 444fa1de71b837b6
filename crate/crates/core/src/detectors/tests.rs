use super::*;
use crate::generators::{
    complete, complete_bipartite, cycle, enumerate_connected, enumerate_graphs, grid, k23star,
    path, prism, pyramid, random_gnp, theta,
};
use crate::graph::{induced_subgraph_bits, line_graph, subdivide};
use crate::Search;

/// All chordless-or-not simple paths of `g` as vertex sequences, each once
/// (first vertex not larger than last), single vertices included.
fn all_paths(g: &Graph) -> Vec<Vec<Vertex>> {
    fn rec(g: &Graph, p: &mut Vec<Vertex>, out: &mut Vec<Vec<Vertex>>) {
        if p[0] <= *p.last().unwrap() {
            out.push(p.clone());
        }
        let tip = *p.last().unwrap();
        for &w in g.neighbors(tip) {
            if !p.contains(&w) {
                p.push(w);
                rec(g, p, out);
                p.pop();
            }
        }
    }
    let mut out = Vec::new();
    for v in 0..g.n() {
        rec(g, &mut vec![v], &mut out);
    }
    out
}

fn internally_disjoint(p: &[Vertex], q: &[Vertex]) -> bool {
    let ends = |x: &[Vertex]| [x[0], *x.last().unwrap()];
    p.iter()
        .all(|v| !q.contains(v) || (ends(p).contains(v) && ends(q).contains(v)))
}

/// The characterization: three pairwise internally disjoint paths covering
/// the graph, each two inducing a hole.
fn characterization_oracle(g: &Graph) -> bool {
    let n = g.n();
    if n < 5
        || !g.is_connected()
        || (0..n).any(|v| g.degree(v) < 2)
        || !(n + 1..=n + 3).contains(&g.m())
    {
        return false;
    }
    let paths = all_paths(g);
    let bits = |p: &[Vertex]| p.iter().fold(0u64, |m, &v| m | 1 << v);
    let hole = |a: &[Vertex], b: &[Vertex]| {
        let mut s = g.no_vertices();
        s.extend(a.iter().copied().chain(b.iter().copied()));
        induces_hole(g, &s)
    };
    let full = (1u64 << n) - 1;
    for (i, p) in paths.iter().enumerate() {
        for (j, q) in paths.iter().enumerate().skip(i + 1) {
            if !internally_disjoint(p, q) || !hole(p, q) {
                continue;
            }
            for r in &paths[j + 1..] {
                if bits(p) | bits(q) | bits(r) == full
                    && internally_disjoint(p, r)
                    && internally_disjoint(q, r)
                    && hole(p, r)
                    && hole(q, r)
                {
                    return true;
                }
            }
        }
    }
    false
}

/// Theta by degrees and components: two nonadjacent degree-3 vertices, the
/// rest degree 2, and removing the two leaves three pieces each seeing both.
fn theta_oracle(g: &Graph) -> bool {
    let n = g.n();
    if !g.is_connected() || n < 5 {
        return false;
    }
    let big: Vec<Vertex> = (0..n).filter(|&v| g.degree(v) == 3).collect();
    if big.len() != 2
        || (0..n).any(|v| g.degree(v) != 2 && g.degree(v) != 3)
        || g.has_edge(big[0], big[1])
    {
        return false;
    }
    let mut rest = g.all_vertices();
    rest.set(big[0], false);
    rest.set(big[1], false);
    let comps = g.components_of(&rest);
    comps.len() == 3
        && comps.iter().all(|c| {
            c.ones().any(|v| g.has_edge(v, big[0])) && c.ones().any(|v| g.has_edge(v, big[1]))
        })
}

/// K_{3,3} with some edges of one perfect matching subdivided. Such a graph
/// meets the pairwise-hole condition (three disjoint paths whose ends induce
/// a 6-cycle in the unsubdivided picture) without being a theta, prism or
/// pyramid.
fn is_twisted(g: &Graph) -> bool {
    let n = g.n();
    let big: Vec<Vertex> = (0..n).filter(|&v| g.degree(v) == 3).collect();
    if big.len() != 6 || (0..n).any(|v| g.degree(v) != 2 && g.degree(v) != 3) || !g.is_connected() {
        return false;
    }
    // suppress degree-2 vertices, remembering which edges were subdivided
    let mut edges = Vec::new();
    let mut long = Vec::new();
    for &u in &big {
        for &x in g.neighbors(u) {
            let (mut prev, mut cur, mut steps) = (u, x, 1);
            while g.degree(cur) == 2 {
                let next = g
                    .neighbors(cur)
                    .iter()
                    .copied()
                    .find(|&y| y != prev)
                    .unwrap();
                (prev, cur, steps) = (cur, next, steps + 1);
            }
            if u < cur {
                edges.push((u, cur));
                if steps > 1 {
                    long.push((u, cur));
                }
            }
        }
    }
    let pos = |v: Vertex| big.iter().position(|&b| b == v).unwrap();
    let skeleton = match Graph::from_edges(
        6,
        &edges
            .iter()
            .map(|&(u, v)| (pos(u), pos(v)))
            .collect::<Vec<_>>(),
    ) {
        Ok(h) if h.m() == edges.len() => h,
        _ => return false,
    };
    let mut touched: Vec<Vertex> = long.iter().flat_map(|&(u, v)| [u, v]).collect();
    touched.sort();
    touched.dedup();
    crate::canon::are_isomorphic(&skeleton, &complete_bipartite(3, 3)).unwrap()
        && touched.len() == 2 * long.len()
}

#[test]
fn twisted_configurations_meet_the_pairwise_condition() {
    let k33 = complete_bipartite(3, 3);
    assert!(is_twisted(&k33) && characterization_oracle(&k33));
    assert!(is_3pc(&k33).is_none());
    // an induced K_{2,3} is still there
    assert_eq!(contains_3pc(&k33).into_found().unwrap().kind, Kind::Theta);
}

fn subsets_oracle(g: &Graph, test: impl Fn(&Graph) -> bool) -> bool {
    let n = g.n();
    (0u32..1 << n).filter(|s| s.count_ones() >= 5).any(|s| {
        let mut bits = g.no_vertices();
        bits.extend((0..n).filter(|&v| s >> v & 1 == 1));
        test(&induced_subgraph_bits(g, &bits).0)
    })
}

/// Shortest cycle through an edge is the edge plus a shortest detour.
fn girth_oracle(g: &Graph) -> Option<usize> {
    g.edges()
        .filter_map(|(u, v)| {
            let edges: Vec<_> = g.edges().filter(|&e| e != (u, v)).collect();
            let h = Graph::from_edges(g.n(), &edges).unwrap();
            let mut from = h.no_vertices();
            from.insert(u);
            let mut to = h.no_vertices();
            to.insert(v);
            h.shortest_path(&from, &to, &h.all_vertices())
                .map(|p| p.len())
        })
        .min()
}

#[test]
fn examples() {
    assert_eq!(girth(&grid(5, 5)), Some(4));
    assert_eq!(girth(&path(6)), None);
    assert_eq!(girth(&k23star()), Some(8));
    assert!(contains_triangle(&complete(3)).is_some());
    assert!(contains_triangle(&complete_bipartite(3, 3)).is_none());
    assert!(contains_triangle(&line_graph(&k23star())).is_some());

    let w = is_theta(&k23star()).unwrap();
    assert_eq!(w.lengths(), [4, 4, 4]);
    assert!(is_theta(&complete_bipartite(2, 3)).is_some());
    let tri_prism = prism([1, 1, 1]).unwrap();
    assert!(is_prism(&tri_prism).is_some());
    assert!(is_pyramid(&complete(4)).is_none());
    assert!(is_prism(&line_graph(&theta([2, 2, 2]).unwrap())).is_some());

    assert!(contains_theta(&grid(5, 5)).is_found());
    for n in 3..12 {
        assert_eq!(contains_3pc(&cycle(n)), Search::NotFound);
    }
    let sub = subdivide(&complete_bipartite(3, 4), 1);
    let w = contains_prism(&line_graph(&sub)).into_found().unwrap();
    assert_eq!(w.kind, Kind::Prism);

    assert!(contains_even_hole(&cycle(6)).is_found());
    assert_eq!(contains_even_hole(&cycle(5)), Search::NotFound);
    assert_eq!(
        contains_even_hole(&k23star()).into_found().unwrap().len(),
        8
    );
}

#[test]
fn zero_length_prism_rule() {
    let g = prism([0, 2, 2]).unwrap();
    let w = is_prism(&g).unwrap();
    assert_eq!(w.lengths().iter().filter(|&&l| l == 0).count(), 1);
    assert!(is_prism_with(&g, PrismRule::Standard).is_none());
    assert!(verify_three_pc(&g, &w, PrismRule::Standard).is_err());
    assert!(find_3pc(&g, &[Kind::Prism], PrismRule::Standard, 100_000)
        .found()
        .is_none());
    assert!(find_3pc(&g, &[Kind::Prism], PrismRule::AllowZero, 100_000).is_found());
    assert!(prism([0, 1, 2]).is_err());
}

#[test]
fn families_are_recognized() {
    for a in 1..5 {
        for b in 1..5 {
            for c in 1..5 {
                let l = [a, b, c];
                if l.iter().all(|&x| x >= 2) {
                    let w = is_theta(&theta(l).unwrap()).unwrap();
                    assert_eq!(w.kind, Kind::Theta);
                }
                let p = prism(l).unwrap();
                assert!(is_prism(&p).is_some() && is_3pc(&p).unwrap().kind == Kind::Prism);
                if l.iter().filter(|&&x| x >= 2).count() >= 2 {
                    assert!(is_pyramid(&pyramid(l).unwrap()).is_some());
                }
            }
        }
    }
}

#[test]
fn recognizer_matches_characterization() {
    for n in 1..=7 {
        for g in enumerate_graphs(n).unwrap() {
            let w = is_3pc(&g);
            assert_eq!(
                w.is_some(),
                characterization_oracle(&g) && !is_twisted(&g),
                "{g:?}"
            );
            if let Some(w) = w {
                assert_eq!(verify_three_pc(&g, &w, PrismRule::AllowZero), Ok(()));
                assert_eq!(w.vertices().len(), n);
                assert!(pairwise_holes(&g, &w.paths));
            }
            assert_eq!(is_theta(&g).is_some(), theta_oracle(&g));
        }
    }
}

#[test]
fn searches_match_subset_oracles() {
    for n in 1..=7 {
        for g in enumerate_graphs(n).unwrap() {
            let t = contains_theta(&g);
            assert_eq!(t.is_found(), subsets_oracle(&g, theta_oracle), "{g:?}");
            let any = contains_3pc(&g);
            assert_eq!(
                any.is_found(),
                subsets_oracle(&g, characterization_oracle),
                "{g:?}"
            );
            for kind in [Kind::Prism, Kind::Pyramid] {
                let r = find_3pc(&g, &[kind], PrismRule::AllowZero, crate::DEFAULT_BUDGET);
                let oracle = subsets_oracle(&g, |h| is_3pc(h).is_some_and(|w| w.kind == kind));
                assert_eq!(r.is_found(), oracle, "{kind} {g:?}");
            }
            if let Some(w) = any.found() {
                if contains_triangle(&g).is_none() {
                    assert_eq!(w.kind, Kind::Theta);
                }
            }
        }
    }
}

#[test]
fn sampled_searches_match_oracles() {
    for seed in 0..150 {
        let n = 8 + (seed % 3) as usize;
        let p = [0.2, 0.3, 0.45][(seed / 3 % 3) as usize];
        let g = random_gnp(n, p, seed).unwrap();
        assert_eq!(
            contains_theta(&g).is_found(),
            subsets_oracle(&g, theta_oracle),
            "seed {seed}"
        );
    }
}

#[test]
fn girth_matches_oracle() {
    for g in enumerate_graphs(6).unwrap() {
        assert_eq!(girth(&g), girth_oracle(&g));
    }
    for seed in 0..40 {
        let g = random_gnp(14, 0.15, seed).unwrap();
        assert_eq!(girth(&g), girth_oracle(&g));
    }
}

#[test]
fn holes_match_subsets() {
    for g in enumerate_connected(7).unwrap() {
        let hole = |even: bool| {
            (0u32..1 << g.n()).any(|s| {
                let mut bits = g.no_vertices();
                bits.extend((0..g.n()).filter(|&v| s >> v & 1 == 1));
                induces_hole(&g, &bits) && (!even || s.count_ones() % 2 == 0)
            })
        };
        let h = contains_hole(&g);
        assert_eq!(h.is_found(), hole(false));
        assert!(h.found().is_none_or(|w| verify_hole(&g, &w.cycle)));
        assert_eq!(contains_even_hole(&g).is_found(), hole(true));
    }
}

#[test]
fn wheels() {
    // C6 plus a center seeing four rim vertices
    let mut edges: Vec<(usize, usize)> = (0..6).map(|i| (i, (i + 1) % 6)).collect();
    edges.extend([(6, 0), (6, 1), (6, 3), (6, 4)]);
    let g = Graph::from_edges(7, &edges).unwrap();
    let scan = find_wheels(&g, 1_000_000);
    assert!(scan.complete);
    let rim: Vec<usize> = (0..6).collect();
    assert!(scan
        .wheels
        .iter()
        .any(|w| w.center == 6 && w.rim_neighbors == 4));
    assert!(is_even_wheel(&g, 6, &rim));
    assert!(!is_even_wheel(&g, 0, &rim));
}

#[test]
fn witnesses_reject_tampering() {
    let g = k23star();
    let mut w = is_theta(&g).unwrap();
    assert_eq!(verify_three_pc(&g, &w, PrismRule::AllowZero), Ok(()));
    w.paths[0].pop();
    assert!(verify_three_pc(&g, &w, PrismRule::AllowZero).is_err());
    // a chord between two theta paths
    let mut h_edges: Vec<_> = g.edges().collect();
    let w = is_theta(&g).unwrap();
    h_edges.push((w.paths[0][2], w.paths[1][2]));
    let h = Graph::from_edges(g.n(), &h_edges).unwrap();
    assert!(verify_three_pc(&h, &w, PrismRule::AllowZero).is_err());
}

#[test]
fn planted_skeleton_pieces_match_subset_oracle() {
    use crate::generators::{plant_skeleton, PlantParams};
    for seed in 0..12 {
        let sk = plant_skeleton(&PlantParams::default(), seed);
        let g = &sk.host;
        // a connected 13-vertex ball around a seeded start
        let start = seed as usize % g.n();
        let mut order = vec![start];
        let mut i = 0;
        while i < order.len() && order.len() < 13 {
            for &w in g.neighbors(order[i]) {
                if !order.contains(&w) && order.len() < 13 {
                    order.push(w);
                }
            }
            i += 1;
        }
        let mut bits = g.no_vertices();
        bits.extend(order.iter().copied());
        let (h, _) = induced_subgraph_bits(g, &bits);
        let oracle = subsets_oracle(&h, |x| is_3pc(x).is_some());
        assert_eq!(contains_3pc(&h).is_found(), oracle, "seed {seed}");
    }
}
