//! Exhaustive enumeration of graphs up to isomorphism by vertex augmentation
//! and canonical-code deduplication.
//!
//! Level `k` holds one canonical code per isomorphism class on `k` vertices.
//! Every graph on `k + 1` vertices arises from some graph on `k` vertices by
//! adding a vertex with some neighbor set (delete any vertex to see this), and
//! every connected graph arises from a connected one (delete a non-cut
//! vertex). Codes are kept sorted so the output order is deterministic.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;

use crate::canon::{canonical_order_masks, CanonCode};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest order accepted by the internal enumerators.
pub const ENUMERATION_CAP: usize = 10;

type Level = Arc<Vec<u128>>;

fn cache() -> &'static Mutex<HashMap<(usize, bool), Level>> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, bool), Level>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn decode(n: usize, bits: u128) -> Vec<u32> {
    let total = n * n.saturating_sub(1) / 2;
    let mut adj = vec![0u32; n];
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if (bits >> (total - 1 - k)) & 1 == 1 {
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
            }
            k += 1;
        }
    }
    adj
}

fn children(n: usize, bits: u128, connected: bool) -> Vec<u128> {
    let base = decode(n, bits);
    let first = if connected && n > 0 { 1 } else { 0 };
    let mut out = Vec::with_capacity(1 << n);
    let mut adj = base.clone();
    adj.push(0);
    for subset in first..(1u32 << n) {
        for v in 0..n {
            adj[v] = base[v] | (((subset >> v) & 1) << n);
        }
        adj[n] = subset;
        out.push(canonical_order_masks(&adj).0);
    }
    out.sort_unstable();
    out.dedup();
    out
}

fn level(n: usize, connected: bool) -> Level {
    if let Some(l) = cache().lock().expect("cache lock").get(&(n, connected)) {
        return l.clone();
    }
    let computed: Vec<u128> = if n == 0 {
        if connected {
            Vec::new()
        } else {
            vec![0]
        }
    } else if n == 1 {
        vec![0]
    } else {
        let prev = level(n - 1, connected);
        let mut all: Vec<u128> = prev
            .par_iter()
            .flat_map_iter(|&bits| children(n - 1, bits, connected))
            .collect();
        all.par_sort_unstable();
        all.dedup();
        all
    };
    let computed = Arc::new(computed);
    cache()
        .lock()
        .expect("cache lock")
        .insert((n, connected), computed.clone());
    computed
}

fn check_cap(n: usize) -> Result<()> {
    if n > ENUMERATION_CAP {
        return Err(Error::Refused(format!(
            "internal enumeration is capped at n = {ENUMERATION_CAP}; ingest an external graph6 census instead (for example with `--corpus file.g6`)"
        )));
    }
    Ok(())
}

fn stream(n: usize, codes: Level) -> impl Iterator<Item = Graph> {
    (0..codes.len()).map(move |i| {
        CanonCode {
            n: n as u8,
            bits: codes[i],
        }
        .to_graph()
    })
}

/// Every connected graph on `n` vertices, once per isomorphism class, in
/// ascending canonical-code order. The empty graph on 0 vertices is not
/// counted as connected.
pub fn enumerate_connected(n: usize) -> Result<impl Iterator<Item = Graph>> {
    check_cap(n)?;
    Ok(stream(n, level(n, true)))
}

/// Every graph on `n` vertices, once per isomorphism class.
pub fn enumerate_graphs(n: usize) -> Result<impl Iterator<Item = Graph>> {
    check_cap(n)?;
    Ok(stream(n, level(n, false)))
}

pub fn count_connected(n: usize) -> Result<usize> {
    check_cap(n)?;
    Ok(level(n, true).len())
}
