//! Per-item evaluation for every suite.

use rand::Rng;

use super::{
    Certificate, Eval, HarnessReport, Item, SuiteId, SuiteSpec, Verdict, BIG_THEOREM_P,
    BIG_THEOREM_T,
};
use crate::containment::{
    contains, contains_induced_subgraph, girth_tree_violations, minimize_model_with,
    private_branch_sets, BranchModel, MinimizeOptions, Relation,
};
use crate::detectors::{contains_even_hole, contains_triangle, find_3pc, Kind, PrismRule};
use crate::error::{Error, Result};
use crate::generators::{
    complete, complete_bipartite, grid, k23star, plant_skeleton, realize_model, rng_for,
    PlantParams, PlantedSkeleton,
};
use crate::graph::{Graph, VertexSet};
use crate::io::emit_graph6;
use crate::search::{Search, Status};
use crate::structure::{
    check_all_path_common_center, check_one_path, extract_k33_skeleton, HostMode, HostStatus,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Target {
    K33TriangleThetaFree,
    PrismZeroNecessity,
    PyramidNecessity,
}

impl Target {
    const ALL: [Target; 3] = [
        Target::K33TriangleThetaFree,
        Target::PrismZeroNecessity,
        Target::PyramidNecessity,
    ];

    fn as_str(self) -> &'static str {
        match self {
            Target::K33TriangleThetaFree => "k33-triangle-theta-free",
            Target::PrismZeroNecessity => "prism-zero-necessity",
            Target::PyramidNecessity => "pyramid-necessity",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Conjecture {
    EvenHoleFree,
    K6Minor,
}

impl Conjecture {
    fn as_str(self) -> &'static str {
        match self {
            Conjecture::EvenHoleFree => "es",
            Conjecture::K6Minor => "k6",
        }
    }
}

/// Named pattern with its graph6 encoding cached for certificates.
struct Pattern {
    name: &'static str,
    graph: Graph,
    graph6: String,
}

impl Pattern {
    fn new(name: &'static str, graph: Graph) -> Self {
        let graph6 = emit_graph6(&graph);
        Pattern {
            name,
            graph,
            graph6,
        }
    }

    fn certificate(&self, relation: Relation, branch_sets: Vec<VertexSet>) -> Certificate {
        Certificate::Model {
            pattern: self.name.into(),
            pattern_graph6: self.graph6.clone(),
            relation,
            branch_sets,
        }
    }
}

pub(crate) struct Context {
    suite: SuiteId,
    seed: u64,
    budget: u64,
    targets: Vec<Target>,
    conjectures: Vec<Conjecture>,
    k33: Pattern,
    k34: Pattern,
    k23star: Pattern,
    k6: Pattern,
    grid: Pattern,
}

fn item(
    index: usize,
    source: &str,
    g: &Graph,
    reason: impl Into<String>,
    certificates: Vec<Certificate>,
) -> Item {
    Item {
        index,
        source: source.to_string(),
        graph6: emit_graph6(g),
        reason: reason.into(),
        certificates,
    }
}

fn absent(what: &str, status: Status) -> Certificate {
    Certificate::Absent {
        what: what.into(),
        status,
    }
}

fn report_cert<T: serde::Serialize>(name: &str, value: &T) -> Certificate {
    Certificate::Report {
        name: name.into(),
        value: serde_json::to_value(value).expect("reports serialize"),
    }
}

/// Random shape parameters for planted skeletons.
fn plant_params(rng: &mut impl Rng) -> PlantParams {
    PlantParams {
        long_extra: rng.random_range(0..=3),
        max_run: rng.random_range(3..=5),
        set_extra: rng.random_range(0..=3),
        shuffle: true,
        scattered: rng.random_bool(0.5),
        ..PlantParams::default()
    }
}

/// Adds pendant vertices, which lie on no 3PC.
fn add_pendants(g: &Graph, count: usize, rng: &mut impl Rng) -> Graph {
    let mut edges: Vec<_> = g.edges().collect();
    let mut n = g.n();
    for _ in 0..count {
        edges.push((rng.random_range(0..n), n));
        n += 1;
    }
    Graph::from_edges(n, &edges).expect("pendant edges are simple")
}

/// `grid(5,5)` with each edge subdivided 0 to 2 times, and the grid model
/// where each subdivision vertex joins the nearer end.
fn subdivided_grid(rng: &mut impl Rng) -> (Graph, Vec<VertexSet>) {
    let base = grid(5, 5);
    let mut n = base.n();
    let mut sets: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
    let mut edges = Vec::new();
    for (u, v) in base.edges() {
        let k = rng.random_range(0..=2);
        let mut prev = u;
        for j in 0..k {
            let w = n;
            n += 1;
            edges.push((prev, w));
            sets[if j == 0 { u } else { v }].push(w);
            prev = w;
        }
        edges.push((prev, v));
    }
    (
        Graph::from_edges(n, &edges).expect("subdivision is simple"),
        sets.into_iter().map(VertexSet::new).collect(),
    )
}

impl Context {
    pub(crate) fn new(spec: &SuiteSpec) -> Result<Self> {
        let (mut targets, mut conjectures) = (
            Target::ALL.to_vec(),
            vec![Conjecture::EvenHoleFree, Conjecture::K6Minor],
        );
        if let Some(v) = &spec.variant {
            match spec.suite {
                SuiteId::TightnessK33 => {
                    let t = Target::ALL.into_iter().find(|t| t.as_str() == v);
                    targets = vec![t.ok_or_else(|| {
                        Error::InvalidInput(format!("unknown tightness target {v:?}"))
                    })?];
                }
                SuiteId::ConjectureProbe => {
                    let c = [Conjecture::EvenHoleFree, Conjecture::K6Minor]
                        .into_iter()
                        .find(|c| c.as_str() == v);
                    conjectures =
                        vec![c.ok_or_else(|| {
                            Error::InvalidInput(format!("unknown conjecture {v:?}"))
                        })?];
                }
                _ => {
                    return Err(Error::InvalidInput(format!(
                        "suite {} takes no variant",
                        spec.suite
                    )))
                }
            }
        }
        Ok(Context {
            suite: spec.suite,
            seed: spec.seed,
            budget: spec.budget,
            targets,
            conjectures,
            k33: Pattern::new("K3,3", complete_bipartite(3, 3)),
            k34: Pattern::new("K3,4", complete_bipartite(3, 4)),
            k23star: Pattern::new("K*2,3", k23star()),
            k6: Pattern::new("K6", complete(6)),
            grid: Pattern::new("grid(5,5)", grid(5, 5)),
        })
    }

    pub(crate) fn notes(&self) -> Vec<String> {
        match self.suite {
            SuiteId::Thm134Lemmas => vec![format!(
                "full-scale constants p = {BIG_THEOREM_P}, t = {BIG_THEOREM_T} are not run; items alternate between \
                 minimized K3,3/K3,4 models (cycle bound, private branch sets, non-adjacent leaves) and K*2,3 hosts"
            )],
            SuiteId::ConjectureProbe => vec!["a violation here is a counterexample to an open conjecture".into()],
            _ => Vec::new(),
        }
    }

    pub(crate) fn accepts_graphs(&self) -> bool {
        matches!(
            self.suite,
            SuiteId::ThmK34ThetaTriangle
                | SuiteId::ThmK34ThreePc
                | SuiteId::TightnessK33
                | SuiteId::ConjectureProbe
                | SuiteId::LemSubK23
                | SuiteId::Lem55
        )
    }

    pub(crate) fn accepts_generated(&self) -> bool {
        !matches!(
            self.suite,
            SuiteId::ThmK34ThetaTriangle | SuiteId::ThmK34ThreePc | SuiteId::ConjectureProbe
        )
    }

    /// Pattern grown by the mixed sampler's pattern-seeded kind.
    pub(crate) fn seed_pattern(&self) -> Graph {
        match self.suite {
            SuiteId::TightnessK33 if self.targets != [Target::PrismZeroNecessity] => {
                self.k33.graph.clone()
            }
            SuiteId::ConjectureProbe => self.k33.graph.clone(),
            _ => self.k34.graph.clone(),
        }
    }

    fn item_rng(&self, corpus: usize, i: usize) -> rand_chacha::ChaCha8Rng {
        rng_for(self.seed, ((corpus as u64) << 32) | i as u64)
    }

    fn containment(&self, g: &Graph, p: &Pattern, relation: Relation) -> Search<Certificate> {
        let r = contains(g, &p.graph, relation, self.budget);
        match r.status {
            Status::Found => {
                Search::Found(p.certificate(relation, r.branch_sets.expect("found carries sets")))
            }
            Status::NotFound => Search::NotFound,
            Status::Indeterminate => Search::Indeterminate,
        }
    }

    fn any_3pc(&self, g: &Graph, kinds: &[Kind], rule: PrismRule) -> Search<Certificate> {
        find_3pc(g, kinds, rule, self.budget).map(|witness| Certificate::ThreePc { rule, witness })
    }

    /// Hypothesis "contains `p` as an induced minor" against a conclusion
    /// that is tried first.
    fn implication(
        &self,
        index: usize,
        source: &str,
        g: &Graph,
        p: &Pattern,
        concl: Search<Certificate>,
        what: &str,
    ) -> Eval {
        let mut e = Eval::default();
        if concl.is_found() {
            e.counts.push("conclusion_holds");
            return e;
        }
        let concl_status = concl.status();
        match self.containment(g, p, Relation::InducedMinor) {
            Search::NotFound => e.counts.push("hypothesis_refuted"),
            Search::Found(model) => {
                e.counts.push("hypothesis_holds");
                let certs = vec![model, absent(what, concl_status)];
                e.verdicts.push(if concl_status == Status::NotFound {
                    Verdict::Violation(item(
                        index,
                        source,
                        g,
                        format!("{} induced minor without {what}", p.name),
                        certs,
                    ))
                } else {
                    Verdict::Indeterminate(item(
                        index,
                        source,
                        g,
                        format!("{what} search ran out of budget"),
                        certs,
                    ))
                });
            }
            Search::Indeterminate => {
                e.verdicts.push(Verdict::Indeterminate(item(
                    index,
                    source,
                    g,
                    format!("{} induced-minor search ran out of budget", p.name),
                    vec![absent(what, concl_status)],
                )));
            }
        }
        e
    }

    fn triangle_or_theta(&self, g: &Graph) -> Search<Certificate> {
        match contains_triangle(g) {
            Some(vertices) => Search::Found(Certificate::Triangle { vertices }),
            None => self.any_3pc(g, &[Kind::Theta], PrismRule::AllowZero),
        }
    }

    pub(crate) fn graph(&self, index: usize, source: &str, g: &Graph) -> Eval {
        match self.suite {
            SuiteId::ThmK34ThetaTriangle => self.implication(
                index,
                source,
                g,
                &self.k34,
                self.triangle_or_theta(g),
                "triangle or theta",
            ),
            SuiteId::ThmK34ThreePc => self.implication(
                index,
                source,
                g,
                &self.k34,
                self.any_3pc(g, &Kind::ALL, PrismRule::AllowZero),
                "3PC",
            ),
            SuiteId::LemSubK23 => self.implication(
                index,
                source,
                g,
                &self.k23star,
                self.any_3pc(g, &Kind::ALL, PrismRule::AllowZero),
                "3PC",
            ),
            SuiteId::Lem55 => self.implication(
                index,
                source,
                g,
                &self.grid,
                self.any_3pc(g, &Kind::ALL, PrismRule::AllowZero),
                "3PC",
            ),
            SuiteId::TightnessK33 => self.tightness(index, source, g),
            SuiteId::ConjectureProbe => self.conjectures(index, source, g),
            _ => unreachable!("generated suites reject graph corpora"),
        }
    }

    pub(crate) fn generated(&self, index: usize, corpus: usize, i: usize) -> Eval {
        let mut rng = self.item_rng(corpus, i);
        match self.suite {
            SuiteId::LemSubK23 => self.k23_host(index, rng.random()),
            SuiteId::Lem55 => {
                let (g, sets) = if i == 0 {
                    (grid(5, 5), (0..25).map(|v| VertexSet::new([v])).collect())
                } else {
                    subdivided_grid(&mut rng)
                };
                let source = if i == 0 {
                    "grid(5,5)".to_string()
                } else {
                    format!("subdivided grid #{i}")
                };
                self.model_host(
                    index,
                    &source,
                    &BranchModel::new(self.grid.graph.clone(), g, sets),
                    &self.grid,
                )
            }
            SuiteId::LemGirthTree => self.girth_tree(index, i, rng.random()),
            SuiteId::Thm134Lemmas if i.is_multiple_of(2) => {
                self.girth_tree(index, i / 2, rng.random())
            }
            SuiteId::Thm134Lemmas => self.k23_host(index, rng.random()),
            SuiteId::LemOnePath | SuiteId::LemAllPath => self.path_lemmas(index, i, &mut rng),
            SuiteId::LemExact1 => self.exact(index, i, &mut rng),
            SuiteId::TightnessK33 => {
                // even items: triangle-free skeletons; odd items: perturbed ones
                let params = if i.is_multiple_of(2) {
                    PlantParams {
                        min_long: 5,
                        max_run: 4,
                        scattered: true,
                        max_middle: 1,
                        ..plant_params(&mut rng)
                    }
                } else {
                    PlantParams {
                        min_attach: 1,
                        any_cross: true,
                        ..plant_params(&mut rng)
                    }
                };
                let pl = plant_skeleton(&params, rng.random());
                let kind = if i.is_multiple_of(2) {
                    "scattered"
                } else {
                    "perturbed"
                };
                self.tightness(index, &format!("{kind} skeleton #{i}"), &pl.host)
            }
            _ => unreachable!("graph suites reject generated corpora"),
        }
    }

    fn k23_host(&self, index: usize, seed: u64) -> Eval {
        match realize_model(&self.k23star.graph, 3, 2, seed) {
            Ok((_, model)) => self.model_host(
                index,
                &format!("realized K*2,3 model seed {seed}"),
                &model,
                &self.k23star,
            ),
            Err(err) => {
                let mut e = Eval::default();
                e.counts.push("generator_error");
                let g = Graph::empty(0);
                e.verdicts.push(Verdict::Violation(item(
                    index,
                    "realize_model",
                    &g,
                    err.to_string(),
                    Vec::new(),
                )));
                e
            }
        }
    }

    /// A host with a known model of `p`: the conclusion must be a 3PC.
    fn model_host(&self, index: usize, source: &str, model: &BranchModel, p: &Pattern) -> Eval {
        let mut e = Eval::default();
        let g = &model.host;
        if model.verify().is_err() {
            e.counts.push("invalid_model");
            e.verdicts.push(Verdict::Violation(item(
                index,
                source,
                g,
                "generated model does not verify",
                Vec::new(),
            )));
            return e;
        }
        let cert = p.certificate(Relation::InducedMinor, model.branch_sets.clone());
        match find_3pc(g, &Kind::ALL, PrismRule::AllowZero, self.budget) {
            Search::Found(w) => {
                e.counts.push("three_pc_found");
                e.counts.push(match w.kind {
                    Kind::Theta => "theta",
                    Kind::Prism => "prism",
                    Kind::Pyramid => "pyramid",
                });
            }
            Search::NotFound => e.verdicts.push(Verdict::Violation(item(
                index,
                source,
                g,
                format!("{} induced minor without a 3PC", p.name),
                vec![cert, absent("3PC", Status::NotFound)],
            ))),
            Search::Indeterminate => e.verdicts.push(Verdict::Indeterminate(item(
                index,
                source,
                g,
                "3PC search ran out of budget",
                vec![cert, absent("3PC", Status::Indeterminate)],
            ))),
        }
        e
    }

    /// A minimized model of `K3,3` (even items) or `K3,4` (odd items).
    fn girth_tree(&self, index: usize, i: usize, seed: u64) -> Eval {
        let mut e = Eval::default();
        let (p, branch, sub) = if i.is_multiple_of(2) {
            (&self.k33, 3, 1)
        } else {
            (&self.k34, 2, 1)
        };
        let source = format!("minimized {} model seed {seed}", p.name);
        let (_, model) = match realize_model(&p.graph, branch, sub, seed) {
            Ok(x) => x,
            Err(err) => {
                e.counts.push("generator_error");
                e.verdicts.push(Verdict::Violation(item(
                    index,
                    &source,
                    &Graph::empty(0),
                    err.to_string(),
                    Vec::new(),
                )));
                return e;
            }
        };
        let opts = MinimizeOptions {
            budget: self.budget,
            ..MinimizeOptions::default()
        };
        let min = match minimize_model_with(&model, &opts) {
            Ok(m) => m,
            Err(err) => {
                e.verdicts.push(Verdict::Violation(item(
                    index,
                    &source,
                    &model.host,
                    err.to_string(),
                    Vec::new(),
                )));
                return e;
            }
        };
        let m = &min.model;
        let g = &m.host;
        let cert = p.certificate(Relation::InducedMinor, m.branch_sets.clone());
        if m.verify().is_err() {
            e.verdicts.push(Verdict::Violation(item(
                index,
                &source,
                g,
                "minimized model does not verify",
                Vec::new(),
            )));
            return e;
        }
        if !min.certified {
            e.verdicts.push(Verdict::Indeterminate(item(
                index,
                &source,
                g,
                "minimality not certified",
                vec![cert],
            )));
            return e;
        }
        e.counts.push("certified_minimal");
        let cycles = girth_tree_violations(m);
        if !cycles.is_empty() {
            e.verdicts.push(Verdict::Violation(item(
                index,
                &source,
                g,
                "a branch set has a cycle longer than its pattern degree",
                vec![cert.clone(), report_cert("cycle_bound", &cycles)],
            )));
        }
        for v in 0..m.pattern.n() {
            let Ok(private) = private_branch_sets(m, v) else {
                e.counts.push("non_tree_branch_set");
                continue;
            };
            if private.exempt {
                e.counts.push("single_vertex_branch_set");
                continue;
            }
            e.counts.push("tree_branch_set");
            if !private.violations().is_empty() {
                e.verdicts.push(Verdict::Violation(item(
                    index,
                    &source,
                    g,
                    format!("leaf without a private branch set in branch set {v}"),
                    vec![cert.clone(), report_cert("private_branch_sets", &private)],
                )));
            }
            // two leaves of a tree on at least three vertices are never adjacent
            let leaves: Vec<usize> = private.leaves.iter().map(|&(w, _)| w).collect();
            if m.branch_sets[v].len() >= 3 {
                e.counts.push("leaf_pair_checked");
                let pair = leaves
                    .iter()
                    .any(|&a| leaves.iter().any(|&b| a != b && !g.has_edge(a, b)));
                if !pair {
                    e.verdicts.push(Verdict::Violation(item(
                        index,
                        &source,
                        g,
                        format!("branch tree {v} has no two non-adjacent leaves"),
                        vec![cert.clone()],
                    )));
                }
            }
        }
        e
    }

    fn planted(&self, rng: &mut impl Rng) -> (PlantedSkeleton, Graph) {
        let pl = plant_skeleton(&plant_params(rng), rng.random());
        let pendants = rng.random_range(0..=3);
        let host = add_pendants(&pl.host, pendants, rng);
        (pl, host)
    }

    fn path_lemmas(&self, index: usize, i: usize, rng: &mut impl Rng) -> Eval {
        let mut e = Eval::default();
        let (pl, g) = self.planted(rng);
        // the roles of the two triples are symmetric
        let (parts, sets) = if rng.random_bool(0.5) {
            (&pl.abc, &pl.xyz)
        } else {
            (&pl.xyz, &pl.abc)
        };
        let sets = [&sets[0], &sets[1], &sets[2]];
        let mode = HostMode::Verify {
            budget: self.budget,
        };
        let source = format!("planted skeleton instance #{i}");
        let (value, holds, host, violation, linear) = if self.suite == SuiteId::LemOnePath {
            let skip = rng.random_range(0..3);
            let pair: Vec<usize> = (0..3).filter(|&j| j != skip).collect();
            match check_one_path(&g, &parts[pair[0]], &parts[pair[1]], sets, mode) {
                Ok(r) => (
                    serde_json::to_value(&r),
                    r.holds,
                    r.host.clone(),
                    r.violation(),
                    true,
                ),
                Err(err) => return self.hypothesis_error(index, &source, &g, err),
            }
        } else {
            match check_all_path_common_center(&g, parts, sets, mode) {
                Ok(r) => (
                    serde_json::to_value(&r),
                    r.holds(),
                    r.host.clone(),
                    r.violation(),
                    r.linear,
                ),
                Err(err) => return self.hypothesis_error(index, &source, &g, err),
            }
        };
        let cert = Certificate::Report {
            name: "lemma".into(),
            value: value.expect("reports serialize"),
        };
        match &host {
            HostStatus::ThreePcFree => e.counts.push("host_3pc_free"),
            HostStatus::HasThreePc { .. } => e.counts.push("host_has_3pc"),
            _ => {}
        }
        if holds {
            e.counts.push("holds");
        }
        if linear {
            e.counts.push("linear_order");
        }
        if violation {
            e.verdicts.push(Verdict::Violation(item(
                index,
                &source,
                &g,
                "lemma conclusion fails on a 3PC-free host",
                vec![cert],
            )));
        } else if host == HostStatus::Undetermined {
            e.verdicts.push(Verdict::Indeterminate(item(
                index,
                &source,
                &g,
                "host 3PC search ran out of budget",
                vec![cert],
            )));
        }
        e
    }

    fn hypothesis_error(&self, index: usize, source: &str, g: &Graph, err: Error) -> Eval {
        let mut e = Eval::default();
        e.counts.push("hypothesis_error");
        e.verdicts.push(Verdict::Violation(item(
            index,
            source,
            g,
            format!("generated instance rejected: {err}"),
            Vec::new(),
        )));
        e
    }

    fn exact(&self, index: usize, i: usize, rng: &mut impl Rng) -> Eval {
        let mut e = Eval::default();
        let (pl, g) = self.planted(rng);
        let source = format!("planted skeleton #{i}");
        let conns = [&pl.abc[0], &pl.abc[1], &pl.abc[2]];
        let sets = [&pl.xyz[0], &pl.xyz[1], &pl.xyz[2]];
        let r = match extract_k33_skeleton(
            &g,
            conns,
            sets,
            HostMode::Verify {
                budget: self.budget,
            },
        ) {
            Ok(r) => r,
            Err(err) => return self.hypothesis_error(index, &source, &g, err),
        };
        if r.skeleton.is_some() {
            e.counts.push("extracted");
        }
        if r.exactly_one_small {
            e.counts.push("exactly_one_small");
        }
        let cert = report_cert("skeleton", &r);
        match &r.host {
            HostStatus::HasThreePc { witness } => {
                let w = Certificate::ThreePc {
                    rule: PrismRule::AllowZero,
                    witness: witness.clone(),
                };
                e.verdicts.push(Verdict::Violation(item(
                    index,
                    &source,
                    &g,
                    "planted skeleton host contains a 3PC",
                    vec![w],
                )));
            }
            HostStatus::Undetermined => {
                e.verdicts.push(Verdict::Indeterminate(item(
                    index,
                    &source,
                    &g,
                    "host 3PC search ran out of budget",
                    vec![cert],
                )));
            }
            _ if r.violation() => {
                let why = r
                    .failure
                    .clone()
                    .unwrap_or_else(|| "not exactly one connector has at most two vertices".into());
                e.verdicts.push(Verdict::Violation(item(
                    index,
                    &source,
                    &g,
                    why,
                    vec![cert],
                )));
            }
            _ => {}
        }
        e
    }

    fn tightness(&self, index: usize, source: &str, g: &Graph) -> Eval {
        let mut e = Eval::default();
        let mut undecided = Vec::new();
        for &t in &self.targets {
            // (searches that must fail, searches that must succeed)
            let (none, some): (Vec<(&str, Search<Certificate>)>, Vec<Search<Certificate>>);
            match t {
                Target::K33TriangleThetaFree => {
                    if contains_triangle(g).is_some() {
                        continue;
                    }
                    none = vec![(
                        "theta",
                        self.any_3pc(g, &[Kind::Theta], PrismRule::AllowZero),
                    )];
                    if none[0].1.is_found() {
                        continue;
                    }
                    some = vec![self.containment(g, &self.k33, Relation::InducedMinor)];
                }
                Target::PrismZeroNecessity => {
                    let zero = self.any_3pc(g, &[Kind::Prism], PrismRule::AllowZero);
                    if !zero.is_found() {
                        continue;
                    }
                    none = vec![
                        (
                            "theta",
                            self.any_3pc(g, &[Kind::Theta], PrismRule::AllowZero),
                        ),
                        (
                            "pyramid",
                            self.any_3pc(g, &[Kind::Pyramid], PrismRule::AllowZero),
                        ),
                        (
                            "prism with three nonzero paths",
                            self.any_3pc(g, &[Kind::Prism], PrismRule::Standard),
                        ),
                    ];
                    if none.iter().any(|(_, s)| s.is_found()) {
                        continue;
                    }
                    some = vec![zero, self.containment(g, &self.k34, Relation::InducedMinor)];
                }
                Target::PyramidNecessity => {
                    let pyramid = self.any_3pc(g, &[Kind::Pyramid], PrismRule::AllowZero);
                    if !pyramid.is_found() {
                        continue;
                    }
                    none = vec![
                        (
                            "theta",
                            self.any_3pc(g, &[Kind::Theta], PrismRule::AllowZero),
                        ),
                        (
                            "prism",
                            self.any_3pc(g, &[Kind::Prism], PrismRule::AllowZero),
                        ),
                    ];
                    if none.iter().any(|(_, s)| s.is_found()) {
                        continue;
                    }
                    some = vec![
                        pyramid,
                        self.containment(g, &self.k33, Relation::InducedMinor),
                    ];
                }
            }
            if some.iter().any(|s| matches!(s, Search::NotFound)) {
                continue;
            }
            if none.iter().any(|(_, s)| s.is_indeterminate())
                || some.iter().any(|s| s.is_indeterminate())
            {
                undecided.push(t.as_str());
                continue;
            }
            e.counts.push(t.as_str());
            let mut certs: Vec<Certificate> =
                some.into_iter().filter_map(Search::into_found).collect();
            if t == Target::K33TriangleThetaFree {
                certs.push(absent("triangle", Status::NotFound));
            }
            certs.extend(none.into_iter().map(|(what, s)| absent(what, s.status())));
            e.verdicts
                .push(Verdict::Find(item(index, source, g, t.as_str(), certs)));
        }
        if !undecided.is_empty() {
            e.verdicts.push(Verdict::Indeterminate(item(
                index,
                source,
                g,
                format!("searches ran out of budget for {}", undecided.join(", ")),
                Vec::new(),
            )));
        }
        e
    }

    fn conjectures(&self, index: usize, source: &str, g: &Graph) -> Eval {
        let mut e = Eval::default();
        for &c in &self.conjectures {
            let hypothesis = match c {
                Conjecture::EvenHoleFree => match contains_even_hole(g) {
                    Search::Found(_) => {
                        e.counts.push("es_has_even_hole");
                        continue;
                    }
                    Search::NotFound => {
                        e.counts.push("es_even_hole_free");
                        Some(absent("even hole", Status::NotFound))
                    }
                    Search::Indeterminate => None,
                },
                Conjecture::K6Minor => {
                    if contains_triangle(g).is_some() {
                        e.counts.push("k6_triangle_skipped");
                        continue;
                    }
                    match self.containment(g, &self.k6, Relation::Minor) {
                        Search::NotFound => {
                            e.counts.push("k6_no_minor");
                            continue;
                        }
                        Search::Found(cert) => {
                            e.counts.push("k6_minor_triangle_free");
                            Some(cert)
                        }
                        Search::Indeterminate => None,
                    }
                }
            };
            let Some(hyp) = hypothesis else {
                e.verdicts.push(Verdict::Indeterminate(item(
                    index,
                    source,
                    g,
                    format!("{} hypothesis search ran out of budget", c.as_str()),
                    Vec::new(),
                )));
                continue;
            };
            let k33 = self.containment(g, &self.k33, Relation::InducedMinor);
            match (c, k33) {
                (Conjecture::EvenHoleFree, Search::Found(model)) => {
                    e.verdicts.push(Verdict::Violation(item(
                        index,
                        source,
                        g,
                        "even-hole-free graph with a K3,3 induced minor",
                        vec![hyp, model],
                    )));
                }
                (Conjecture::K6Minor, Search::NotFound) => {
                    e.verdicts.push(Verdict::Violation(item(
                        index,
                        source,
                        g,
                        "triangle-free graph with a K6 minor and no K3,3 induced minor",
                        vec![hyp, absent("K3,3 induced minor", Status::NotFound)],
                    )));
                }
                (_, Search::Indeterminate) => e.verdicts.push(Verdict::Indeterminate(item(
                    index,
                    source,
                    g,
                    "K3,3 induced-minor search ran out of budget",
                    vec![hyp],
                ))),
                _ => {}
            }
        }
        e
    }

    pub(crate) fn finish(&self, report: &mut HarnessReport) {
        match self.suite {
            SuiteId::TightnessK33 => {
                for t in &self.targets {
                    if report.count(t.as_str()) == 0 {
                        report
                            .notes
                            .push(format!("{}: not found at this scale", t.as_str()));
                    }
                }
            }
            SuiteId::Lem55 => {
                let r = contains_induced_subgraph(&self.grid.graph, &self.k23star.graph);
                let key = match r.status {
                    Status::Found => "grid_induced_k23star_found",
                    Status::NotFound => "grid_induced_k23star_not_found",
                    Status::Indeterminate => "grid_induced_k23star_undecided",
                };
                report.counts.insert(key.into(), 1);
            }
            _ => {}
        }
    }
}
