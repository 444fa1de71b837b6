//! Corpus construction: exhaustive censuses, the mixed random sampler and
//! graph6 files, streamed in fixed-size chunks.

use rand::seq::SliceRandom;
use rand::Rng;

use super::CorpusSpec;
use crate::error::{Error, Result};
use crate::generators::{enumerate_connected, random_gnp, rng_for, ENUMERATION_CAP};
use crate::graph::{Graph, Vertex};
use crate::io::parse_graph6_lines;

/// Which generator produced a sampled graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SampleKind {
    Gnp,
    TriangleFree,
    PatternSeeded,
    Sparse,
}

impl SampleKind {
    pub const ALL: [SampleKind; 4] = [
        SampleKind::Gnp,
        SampleKind::TriangleFree,
        SampleKind::PatternSeeded,
        SampleKind::Sparse,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SampleKind::Gnp => "gnp",
            SampleKind::TriangleFree => "triangle-free",
            SampleKind::PatternSeeded => "pattern-seeded",
            SampleKind::Sparse => "sparse",
        }
    }
}

struct Adj {
    rows: Vec<Vec<bool>>,
}

impl Adj {
    fn new(n: usize) -> Self {
        Adj {
            rows: vec![vec![false; n]; n],
        }
    }

    fn n(&self) -> usize {
        self.rows.len()
    }

    fn set(&mut self, u: Vertex, v: Vertex, on: bool) {
        self.rows[u][v] = on;
        self.rows[v][u] = on;
    }

    fn add_vertex(&mut self) -> Vertex {
        for r in &mut self.rows {
            r.push(false);
        }
        self.rows.push(vec![false; self.rows.len() + 1]);
        self.rows.len() - 1
    }

    fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let n = self.n();
        (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|&(u, v)| self.rows[u][v])
            .collect()
    }

    fn into_graph(self, rng: &mut impl Rng) -> Graph {
        let mut label: Vec<Vertex> = (0..self.n()).collect();
        label.shuffle(rng);
        let edges: Vec<_> = self
            .edges()
            .into_iter()
            .map(|(u, v)| (label[u], label[v]))
            .collect();
        Graph::from_edges(self.n(), &edges).expect("sampler edges are simple")
    }
}

/// One graph on `n` vertices from the mixed sampler. The kind cycles with
/// `stream` so every kind is equally represented: `G(n, p)` with random
/// density, random triangle-free graphs, `seed_pattern` grown by random
/// subdivisions and vertex additions (which keep it as an induced minor),
/// and sparse graphs made of a random tree plus a few chords.
pub fn mixed_sample(n: usize, seed: u64, stream: u64, seed_pattern: &Graph) -> (Graph, SampleKind) {
    let mut rng = rng_for(seed, stream);
    let mut kind = SampleKind::ALL[(stream % 4) as usize];
    if kind == SampleKind::PatternSeeded && seed_pattern.n() > n {
        kind = SampleKind::Sparse;
    }
    let g = match kind {
        SampleKind::Gnp => {
            let p = rng.random_range(0.1..0.5);
            random_gnp(n, p, rng.random()).expect("density in range")
        }
        SampleKind::TriangleFree => {
            let mut a = Adj::new(n);
            let mut pairs: Vec<(Vertex, Vertex)> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .collect();
            pairs.shuffle(&mut rng);
            let target = rng.random_range(n.saturating_sub(1)..=(n * n / 4).max(n));
            let mut m = 0;
            for (u, v) in pairs {
                if m == target {
                    break;
                }
                if !(0..n).any(|w| a.rows[u][w] && a.rows[v][w]) {
                    a.set(u, v, true);
                    m += 1;
                }
            }
            a.into_graph(&mut rng)
        }
        SampleKind::PatternSeeded => {
            let mut a = Adj::new(seed_pattern.n());
            for (u, v) in seed_pattern.edges() {
                a.set(u, v, true);
            }
            while a.n() < n {
                let edges = a.edges();
                if !edges.is_empty() && rng.random_bool(0.5) {
                    let (u, v) = edges[rng.random_range(0..edges.len())];
                    let w = a.add_vertex();
                    a.set(u, v, false);
                    a.set(u, w, true);
                    a.set(w, v, true);
                } else {
                    let old = a.n();
                    let w = a.add_vertex();
                    let anchor = rng.random_range(0..old);
                    a.set(w, anchor, true);
                    for u in 0..old {
                        if rng.random_bool(0.25) {
                            a.set(w, u, true);
                        }
                    }
                }
            }
            a.into_graph(&mut rng)
        }
        SampleKind::Sparse => {
            let mut a = Adj::new(n);
            for v in 1..n {
                let u = rng.random_range(0..v);
                a.set(u, v, true);
            }
            if n >= 2 {
                for _ in 0..rng.random_range(1..=n / 2 + 1) {
                    let u = rng.random_range(0..n);
                    let v = rng.random_range(0..n);
                    if u != v {
                        a.set(u, v, true);
                    }
                }
            }
            a.into_graph(&mut rng)
        }
    };
    (g, kind)
}

/// A corpus graph with a description of where it came from.
pub(crate) struct Sourced {
    pub source: String,
    pub graph: Graph,
}

pub(crate) fn validate(spec: &CorpusSpec) -> Result<()> {
    match spec {
        CorpusSpec::Exhaustive { min_n, max_n } | CorpusSpec::Sampled { min_n, max_n, .. } if min_n > max_n => {
            Err(Error::InvalidInput(format!("empty order range {min_n}..={max_n}")))
        }
        CorpusSpec::Exhaustive { max_n, .. } if *max_n > ENUMERATION_CAP => Err(Error::InvalidInput(format!(
            "exhaustive enumeration is capped at n = {ENUMERATION_CAP}; supply a graph6 census file for larger orders"
        ))),
        _ => Ok(()),
    }
}

/// Streams the graphs of a graph corpus in chunks. `index` numbers the
/// corpus within its suite, so sampled streams of different corpora never
/// collide.
pub(crate) fn for_each_chunk(
    spec: &CorpusSpec,
    index: usize,
    seed: u64,
    seed_pattern: &Graph,
    chunk: usize,
    mut f: impl FnMut(Vec<Sourced>) -> Result<()>,
) -> Result<()> {
    validate(spec)?;
    match spec {
        CorpusSpec::Exhaustive { min_n, max_n } => {
            for n in *min_n..=*max_n {
                let mut buf = Vec::with_capacity(chunk);
                for (i, graph) in enumerate_connected(n)?.enumerate() {
                    buf.push(Sourced {
                        source: format!("connected n={n} #{i}"),
                        graph,
                    });
                    if buf.len() == chunk {
                        f(std::mem::take(&mut buf))?;
                    }
                }
                if !buf.is_empty() {
                    f(buf)?;
                }
            }
            Ok(())
        }
        CorpusSpec::Sampled {
            min_n,
            max_n,
            count,
        } => {
            let base = (index as u64) << 32;
            let items: Vec<usize> = (0..*count).collect();
            for part in items.chunks(chunk.max(1)) {
                let buf = part
                    .iter()
                    .map(|&i| {
                        let stream = base | i as u64;
                        let n = min_n + (i % (max_n - min_n + 1));
                        let (graph, kind) = mixed_sample(n, seed, stream, seed_pattern);
                        Sourced {
                            source: format!("sample #{i} {} n={n}", kind.as_str()),
                            graph,
                        }
                    })
                    .collect();
                f(buf)?;
            }
            Ok(())
        }
        CorpusSpec::File { path } => {
            let text = std::fs::read_to_string(path)?;
            let graphs = parse_graph6_lines(&text)?;
            let mut buf = Vec::new();
            for (i, graph) in graphs.into_iter().enumerate() {
                buf.push(Sourced {
                    source: format!("{path} line {}", i + 1),
                    graph,
                });
                if buf.len() == chunk {
                    f(std::mem::take(&mut buf))?;
                }
            }
            if !buf.is_empty() {
                f(buf)?;
            }
            Ok(())
        }
        CorpusSpec::Generated { .. } => Err(Error::InvalidInput(
            "generated corpora are built by their suite".into(),
        )),
    }
}
