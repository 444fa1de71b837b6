//! graph6 and plain edge-list text formats.
//!
//! graph6 follows the published encoding: a size header, then the upper
//! triangle of the adjacency matrix in column order (`x(0,1) x(0,2) x(1,2)
//! x(0,3) ...`), packed big-endian into 6-bit groups, each group offset by 63.

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

const HEADER: &str = ">>graph6<<";

fn parse_err<T>(offset: usize, message: impl Into<String>) -> Result<T> {
    Err(Error::Parse {
        offset,
        message: message.into(),
    })
}

fn size_header(n: usize) -> Vec<u8> {
    if n <= 62 {
        vec![n as u8 + 63]
    } else if n <= 258_047 {
        vec![
            126,
            ((n >> 12) & 63) as u8 + 63,
            ((n >> 6) & 63) as u8 + 63,
            (n & 63) as u8 + 63,
        ]
    } else {
        let mut out = vec![126, 126];
        for shift in (0..6).rev() {
            out.push(((n >> (6 * shift)) & 63) as u8 + 63);
        }
        out
    }
}

pub fn emit_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = size_header(n);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

/// Parses one graph6 line. A leading `>>graph6<<` header and surrounding
/// whitespace are accepted; byte offsets in errors refer to the trimmed input.
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let text = text.trim();
    let text = text.strip_prefix(HEADER).unwrap_or(text);
    let bytes = text.as_bytes();
    if bytes.is_empty() {
        return parse_err(0, "empty input");
    }
    let digit = |at: usize| -> Result<usize> {
        match bytes.get(at) {
            Some(&b @ 63..=126) => Ok((b - 63) as usize),
            Some(&b) => parse_err(at, format!("byte {b:#04x} outside the graph6 range")),
            None => parse_err(at, "truncated size header"),
        }
    };
    let (n, mut pos) = if bytes[0] != 126 {
        (digit(0)?, 1)
    } else if bytes.get(1) == Some(&126) {
        let mut n = 0;
        for at in 2..8 {
            n = (n << 6) | digit(at)?;
        }
        (n, 8)
    } else {
        let mut n = 0;
        for at in 1..4 {
            n = (n << 6) | digit(at)?;
        }
        (n, 4)
    };
    let bits = n * n.saturating_sub(1) / 2;
    let need = bits.div_ceil(6);
    if bytes.len() < pos + need {
        return parse_err(
            bytes.len(),
            format!("truncated bitmap: need {need} bytes after header"),
        );
    }
    if bytes.len() > pos + need {
        return parse_err(pos + need, "trailing bytes after bitmap");
    }
    let mut edges = Vec::new();
    let mut k = 0;
    'outer: for j in 1..n {
        for i in 0..j {
            let byte = digit(pos + k / 6)?;
            if byte >> (5 - k % 6) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
            if k == bits {
                break 'outer;
            }
        }
    }
    pos += need;
    debug_assert_eq!(pos, bytes.len());
    Graph::from_edges(n, &edges)
}

/// Parses a file with one graph6 string per non-empty line.
pub fn parse_graph6_lines(text: &str) -> Result<Vec<Graph>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(parse_graph6)
        .collect()
}

/// `n <count>` followed by one `u v` line per edge, edges in lexicographic
/// order with `u < v`.
pub fn emit_edge_list(g: &Graph) -> String {
    let mut out = format!("n {}\n", g.n());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// Inverse of [`emit_edge_list`]. Blank lines and `#` comments are skipped,
/// duplicate edges collapse, loops are errors.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut n: Option<usize> = None;
    let mut edges: Vec<(Vertex, Vertex)> = Vec::new();
    let mut offset = 0;
    for line in text.split_inclusive('\n') {
        let start = offset;
        offset += line.len();
        let body = line.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let fields: Vec<&str> = body.split_whitespace().collect();
        match (n, fields.as_slice()) {
            (None, ["n", count]) => match count.parse() {
                Ok(c) => n = Some(c),
                Err(_) => return parse_err(start, format!("bad vertex count {count:?}")),
            },
            (None, _) => return parse_err(start, "first line must be `n <count>`"),
            (Some(count), [a, b]) => {
                let (u, v) = match (a.parse::<usize>(), b.parse::<usize>()) {
                    (Ok(u), Ok(v)) => (u, v),
                    _ => return parse_err(start, format!("bad edge line {body:?}")),
                };
                if u == v {
                    return parse_err(start, format!("loop at vertex {u}"));
                }
                if u >= count || v >= count {
                    return parse_err(start, format!("edge {u}-{v} out of range"));
                }
                edges.push((u, v));
            }
            (Some(_), _) => return parse_err(start, format!("bad edge line {body:?}")),
        }
    }
    match n {
        Some(n) => Graph::from_edges(n, &edges),
        None => parse_err(0, "missing `n <count>` line"),
    }
}

/// A single graph in either format: edge lists are recognized by their
/// leading `n <count>` line, anything else must be one graph6 string.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let first = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty());
    if first.is_some_and(|l| l.starts_with("n ")) {
        return parse_edge_list(text);
    }
    let mut graphs = parse_graph6_lines(text)?;
    match graphs.len() {
        1 => Ok(graphs.remove(0)),
        k => Err(Error::InvalidInput(format!(
            "expected one graph, found {k}"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, cycle, enumerate_graphs};
    use proptest::prelude::*;

    /// Straight transcription of the encoding rules, used to cross-check the
    /// packed writer.
    fn graph6_oracle(g: &Graph) -> String {
        let n = g.n();
        let mut bits = Vec::new();
        for j in 1..n {
            for i in 0..j {
                bits.push(g.has_edge(i, j));
            }
        }
        while bits.len() % 6 != 0 {
            bits.push(false);
        }
        let mut s = String::new();
        assert!(n <= 62);
        s.push((n as u8 + 63) as char);
        for chunk in bits.chunks(6) {
            let v = chunk.iter().fold(0u8, |acc, &b| acc * 2 + b as u8);
            s.push((v + 63) as char);
        }
        s
    }

    #[test]
    fn graph6_known_strings() {
        assert_eq!(emit_graph6(&Graph::empty(1)), "@");
        assert_eq!(emit_graph6(&Graph::empty(0)), "?");
        // Values from the published format description.
        assert_eq!(emit_graph6(&complete(2)), "A_");
        assert_eq!(emit_graph6(&cycle(5)), graph6_oracle(&cycle(5)));
        let big = Graph::empty(63);
        assert!(emit_graph6(&big).starts_with("~??~"));
        assert_eq!(parse_graph6(&emit_graph6(&big)).unwrap(), big);
    }

    #[test]
    fn graph6_errors_carry_offsets() {
        assert!(matches!(
            parse_graph6(""),
            Err(Error::Parse { offset: 0, .. })
        ));
        // five vertices need two bitmap bytes
        assert!(matches!(
            parse_graph6("D?"),
            Err(Error::Parse { offset: 2, .. })
        ));
        assert!(matches!(
            parse_graph6("D???"),
            Err(Error::Parse { offset: 3, .. })
        ));
        assert!(matches!(parse_graph6("~?"), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_graph6("D\u{1}?"),
            Err(Error::Parse { offset: 1, .. })
        ));
        assert_eq!(parse_graph6(">>graph6<<A_\n").unwrap(), complete(2));
    }

    #[test]
    fn round_trips_exhaustive_to_seven() {
        for n in 0..=7 {
            for g in enumerate_graphs(n).unwrap() {
                let s = emit_graph6(&g);
                assert_eq!(s, graph6_oracle(&g));
                assert_eq!(parse_graph6(&s).unwrap(), g);
                assert_eq!(parse_edge_list(&emit_edge_list(&g)).unwrap(), g);
            }
        }
    }

    #[test]
    fn edge_list_examples() {
        let g = parse_edge_list("n 2\n0 1").unwrap();
        assert_eq!(g, complete(2));
        assert_eq!(parse_edge_list("n 3").unwrap(), Graph::empty(3));
        assert!(matches!(
            parse_edge_list("n 2\n0 0"),
            Err(Error::Parse { offset: 4, .. })
        ));
        assert_eq!(parse_edge_list("n 2\n0 1\n1 0\n").unwrap().m(), 1);
        assert!(parse_edge_list("0 1").is_err());
        assert!(parse_edge_list("n 2\n0 5").is_err());
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (0usize..80).prop_flat_map(|n| {
            let pairs = n * n.saturating_sub(1) / 2;
            proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
                let mut edges = Vec::new();
                let mut k = 0;
                for j in 1..n {
                    for i in 0..j {
                        if bits[k] {
                            edges.push((i, j));
                        }
                        k += 1;
                    }
                }
                Graph::from_edges(n, &edges).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn parse_inverts_emit(g in arb_graph()) {
            prop_assert_eq!(parse_graph6(&emit_graph6(&g)).unwrap(), g.clone());
            prop_assert_eq!(parse_edge_list(&emit_edge_list(&g)).unwrap(), g);
        }
    }

    #[test]
    fn parse_graph_detects_format() {
        let c = cycle(5);
        assert_eq!(parse_graph(&emit_graph6(&c)).unwrap(), c);
        assert_eq!(
            parse_graph(&format!("# a comment\n{}", emit_edge_list(&c))).unwrap(),
            c
        );
        assert!(parse_graph("").is_err());
        assert!(parse_graph("Dhc\nDhc\n").is_err());
    }
}
