//! Deterministic constructions of the named families and seeded random
//! instances.
//!
//! Vertex orders are fixed and documented per family so that emitted graph6
//! strings are stable.

mod enumerate;
mod model;
mod skeleton;

pub use enumerate::{count_connected, enumerate_connected, enumerate_graphs, ENUMERATION_CAP};
pub use model::{realize_model, realize_model_with, ModelParams};
pub use skeleton::{plant_skeleton, PlantParams, PlantedSkeleton};

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{subdivide, Graph, Vertex};

/// Counter-based generator for item `stream` of the run keyed by `seed`.
/// Streams are independent, so items can be produced in any order or in
/// parallel with identical results.
pub fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Graph {
    Graph::from_edges(n, edges).expect("family construction emits valid edges")
}

/// `K_n`.
pub fn complete(n: usize) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    from_edges(n, &edges)
}

/// `K_{a,b}`: side one is `0..a`, side two is `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let mut edges = Vec::new();
    for u in 0..a {
        for v in a..a + b {
            edges.push((u, v));
        }
    }
    from_edges(a + b, &edges)
}

/// `rows x cols` grid; cell `(i, j)` is vertex `i * cols + j`.
pub fn grid(rows: usize, cols: usize) -> Graph {
    let mut edges = Vec::new();
    for i in 0..rows {
        for j in 0..cols {
            let v = i * cols + j;
            if j + 1 < cols {
                edges.push((v, v + 1));
            }
            if i + 1 < rows {
                edges.push((v, v + cols));
            }
        }
    }
    from_edges(rows * cols, &edges)
}

/// Cycle `0 - 1 - ... - (n-1) - 0`; `n < 3` gives the path.
pub fn cycle(n: usize) -> Graph {
    let mut edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
    if n >= 3 {
        edges.push((0, n - 1));
    }
    from_edges(n, &edges)
}

/// Path `0 - 1 - ... - (n-1)` on `n` vertices.
pub fn path(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
    from_edges(n, &edges)
}

fn spec_err<T>(family: &'static str, rule: &str) -> Result<T> {
    Err(Error::Spec {
        family,
        rule: rule.to_string(),
    })
}

/// Appends a path of `len >= 1` edges from `from` to `to` through fresh
/// vertices numbered from `*n`.
fn join(n: &mut usize, edges: &mut Vec<(Vertex, Vertex)>, from: Vertex, to: Vertex, len: usize) {
    let mut prev = from;
    for _ in 1..len {
        edges.push((prev, *n));
        prev = *n;
        *n += 1;
    }
    edges.push((prev, to));
}

/// Theta with path lengths `l1, l2, l3`. Vertex 0 and 1 are the ends, then
/// each path's interior in order from 0.
pub fn theta(lengths: [usize; 3]) -> Result<Graph> {
    if lengths.iter().any(|&l| l < 2) {
        return spec_err(
            "theta",
            "each of the three paths must have length at least 2",
        );
    }
    let mut n = 2;
    let mut edges = Vec::new();
    for &l in &lengths {
        join(&mut n, &mut edges, 0, 1, l);
    }
    Ok(from_edges(n, &edges))
}

/// Prism with path lengths `l1, l2, l3`. Vertices 0, 1, 2 are the first
/// triangle; each path then contributes its interior and far corner. A path
/// of length 0 shares its corner with both triangles.
pub fn prism(lengths: [usize; 3]) -> Result<Graph> {
    let zeros = lengths.iter().filter(|&&l| l == 0).count();
    let ok = zeros == 0 || (zeros == 1 && lengths.iter().all(|&l| l == 0 || l >= 2));
    if !ok {
        return spec_err(
            "prism",
            "all three paths must have length at least 1, or exactly one has length 0 and the other two at least 2",
        );
    }
    let mut n = 3;
    let mut edges = vec![(0, 1), (1, 2), (0, 2)];
    let mut far = [0; 3];
    for (i, &l) in lengths.iter().enumerate() {
        if l == 0 {
            far[i] = i;
            continue;
        }
        far[i] = n;
        n += 1;
        join(&mut n, &mut edges, i, far[i], l);
    }
    edges.extend([(far[0], far[1]), (far[1], far[2]), (far[0], far[2])]);
    Ok(from_edges(n, &edges))
}

/// Pyramid with path lengths `l1, l2, l3`. Vertex 0 is the apex; each path
/// then contributes its triangle corner and its interior.
pub fn pyramid(lengths: [usize; 3]) -> Result<Graph> {
    if lengths.iter().any(|&l| l < 1) || lengths.iter().filter(|&&l| l >= 2).count() < 2 {
        return spec_err(
            "pyramid",
            "all three paths must have length at least 1 and at least two of them length at least 2",
        );
    }
    let mut n = 1;
    let mut edges = Vec::new();
    let mut corner = [0; 3];
    for (i, &l) in lengths.iter().enumerate() {
        corner[i] = n;
        n += 1;
        join(&mut n, &mut edges, 0, corner[i], l);
    }
    edges.extend([
        (corner[0], corner[1]),
        (corner[1], corner[2]),
        (corner[0], corner[2]),
    ]);
    Ok(from_edges(n, &edges))
}

/// `K_{2,3}` with every edge subdivided once: two degree-3 vertices (0 and 1)
/// joined by three paths of length 4.
pub fn k23star() -> Graph {
    subdivide(&complete_bipartite(2, 3), 1)
}

/// Erdős–Rényi `G(n, p)`; pairs are visited in lexicographic order.
pub fn random_gnp(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return spec_err("random_gnp", "edge probability must lie in [0, 1]");
    }
    let mut rng = rng_for(seed, 0);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Ok(from_edges(n, &edges))
}

/// A named family with its parameters.
#[derive(Clone, Debug, PartialEq)]
pub enum GenSpec {
    Complete(usize),
    CompleteBipartite(usize, usize),
    Grid(usize, usize),
    Cycle(usize),
    Path(usize),
    Theta([usize; 3]),
    Prism([usize; 3]),
    Pyramid([usize; 3]),
    K23Star,
    RandomGnp {
        n: usize,
        p: f64,
        seed: u64,
    },
    ModelRealization {
        pattern: Box<GenSpec>,
        branch_budget: usize,
        subdivision_budget: usize,
        seed: u64,
    },
}

pub fn gen(spec: &GenSpec) -> Result<Graph> {
    match spec {
        GenSpec::Complete(n) => Ok(complete(*n)),
        GenSpec::CompleteBipartite(a, b) => Ok(complete_bipartite(*a, *b)),
        GenSpec::Grid(r, c) => Ok(grid(*r, *c)),
        GenSpec::Cycle(n) if *n < 3 => spec_err("cycle", "a cycle needs at least 3 vertices"),
        GenSpec::Cycle(n) => Ok(cycle(*n)),
        GenSpec::Path(n) => Ok(path(*n)),
        GenSpec::Theta(l) => theta(*l),
        GenSpec::Prism(l) => prism(*l),
        GenSpec::Pyramid(l) => pyramid(*l),
        GenSpec::K23Star => Ok(k23star()),
        GenSpec::RandomGnp { n, p, seed } => random_gnp(*n, *p, *seed),
        GenSpec::ModelRealization {
            pattern,
            branch_budget,
            subdivision_budget,
            seed,
        } => {
            let pattern = gen(pattern)?;
            let (host, _) = realize_model(&pattern, *branch_budget, *subdivision_budget, *seed)?;
            Ok(host)
        }
    }
}

impl fmt::Display for GenSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenSpec::Complete(n) => write!(f, "complete({n})"),
            GenSpec::CompleteBipartite(a, b) => write!(f, "complete_bipartite({a},{b})"),
            GenSpec::Grid(r, c) => write!(f, "grid({r},{c})"),
            GenSpec::Cycle(n) => write!(f, "cycle({n})"),
            GenSpec::Path(n) => write!(f, "path({n})"),
            GenSpec::Theta([a, b, c]) => write!(f, "theta({a},{b},{c})"),
            GenSpec::Prism([a, b, c]) => write!(f, "prism({a},{b},{c})"),
            GenSpec::Pyramid([a, b, c]) => write!(f, "pyramid({a},{b},{c})"),
            GenSpec::K23Star => write!(f, "k23star"),
            GenSpec::RandomGnp { n, p, seed } => write!(f, "random_gnp({n},{p},{seed})"),
            GenSpec::ModelRealization {
                pattern,
                branch_budget,
                subdivision_budget,
                seed,
            } => {
                write!(
                    f,
                    "model_realization({pattern};{branch_budget};{subdivision_budget};{seed})"
                )
            }
        }
    }
}

fn parse_usize(s: &str) -> Result<usize> {
    s.trim()
        .parse()
        .map_err(|_| Error::InvalidInput(format!("expected a nonnegative integer, got {s:?}")))
}

fn parse_args<const N: usize>(family: &str, args: &[&str]) -> Result<[usize; N]> {
    if args.len() != N {
        return Err(Error::InvalidInput(format!(
            "{family} takes {N} parameter(s), got {}",
            args.len()
        )));
    }
    let mut out = [0; N];
    for (slot, a) in out.iter_mut().zip(args) {
        *slot = parse_usize(a)?;
    }
    Ok(out)
}

/// Splits `name(args)` into the name and its top-level arguments. Arguments
/// are separated by `;` when the text contains one (so nested specs may use
/// commas), otherwise by `,`.
fn split_call(s: &str) -> Result<(&str, Vec<&str>)> {
    let Some(open) = s.find('(') else {
        return Ok((s, Vec::new()));
    };
    let Some(inner) = s[open + 1..].strip_suffix(')') else {
        return Err(Error::InvalidInput(format!(
            "unbalanced parentheses in {s:?}"
        )));
    };
    let sep = if inner.contains(';') { ';' } else { ',' };
    let args = if inner.trim().is_empty() {
        Vec::new()
    } else {
        inner.split(sep).map(str::trim).collect()
    };
    Ok((s[..open].trim(), args))
}

impl FromStr for GenSpec {
    type Err = Error;

    /// Accepts `family(args)` forms (`theta(2,2,2)`, `grid(5,5)`,
    /// `random_gnp(10,0.3,7)`, `model_realization(K3,4;2;1;7)`) and the
    /// shorthands `K5`, `K3,4`, `C6`, `P4`, `k23star`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let lower = s.to_ascii_lowercase();
        if lower == "k23star" || lower == "k*2,3" || lower == "k*23" {
            return Ok(GenSpec::K23Star);
        }
        if !s.contains('(') {
            let (head, rest) = s.split_at(1.min(s.len()));
            let rest_ok = !rest.is_empty() && rest.chars().all(|c| c.is_ascii_digit() || c == ',');
            if rest_ok {
                match head {
                    "K" | "k" => {
                        return match rest.split_once(',') {
                            Some((a, b)) => {
                                Ok(GenSpec::CompleteBipartite(parse_usize(a)?, parse_usize(b)?))
                            }
                            None => Ok(GenSpec::Complete(parse_usize(rest)?)),
                        };
                    }
                    "C" | "c" => return Ok(GenSpec::Cycle(parse_usize(rest)?)),
                    "P" | "p" => return Ok(GenSpec::Path(parse_usize(rest)?)),
                    _ => {}
                }
            }
        }
        let (name, args) = split_call(s)?;
        let spec = match name.to_ascii_lowercase().as_str() {
            "complete" => GenSpec::Complete(parse_args::<1>(name, &args)?[0]),
            "complete_bipartite" => {
                let [a, b] = parse_args(name, &args)?;
                GenSpec::CompleteBipartite(a, b)
            }
            "grid" => {
                let [r, c] = parse_args(name, &args)?;
                GenSpec::Grid(r, c)
            }
            "cycle" => GenSpec::Cycle(parse_args::<1>(name, &args)?[0]),
            "path" => GenSpec::Path(parse_args::<1>(name, &args)?[0]),
            "theta" => GenSpec::Theta(parse_args(name, &args)?),
            "prism" => GenSpec::Prism(parse_args(name, &args)?),
            "pyramid" => GenSpec::Pyramid(parse_args(name, &args)?),
            "random_gnp" | "gnp" => {
                if args.len() != 3 {
                    return Err(Error::InvalidInput("random_gnp takes (n, p, seed)".into()));
                }
                let p: f64 = args[1]
                    .parse()
                    .map_err(|_| Error::InvalidInput(format!("bad probability {:?}", args[1])))?;
                let seed = args[2]
                    .parse()
                    .map_err(|_| Error::InvalidInput(format!("bad seed {:?}", args[2])))?;
                GenSpec::RandomGnp {
                    n: parse_usize(args[0])?,
                    p,
                    seed,
                }
            }
            "model_realization" | "model" => {
                if args.len() != 4 {
                    return Err(Error::InvalidInput(
                        "model_realization takes (pattern; branch budget; subdivision budget; seed)".into(),
                    ));
                }
                GenSpec::ModelRealization {
                    pattern: Box::new(args[0].parse()?),
                    branch_budget: parse_usize(args[1])?,
                    subdivision_budget: parse_usize(args[2])?,
                    seed: args[3]
                        .parse()
                        .map_err(|_| Error::InvalidInput(format!("bad seed {:?}", args[3])))?,
                }
            }
            other => return Err(Error::InvalidInput(format!("unknown family {other:?}"))),
        };
        Ok(spec)
    }
}
