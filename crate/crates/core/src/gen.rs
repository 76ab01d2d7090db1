//! Seeded graph generators. Every generator labels its nodes `0..n`.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::rng::SeedStream;

const REGULAR_ATTEMPTS: usize = 1000;

fn build(n: u64, edges: Vec<(u64, u64)>) -> Graph {
    Graph::from_edges((0..n).map(NodeId), edges.into_iter().map(|(a, b)| (NodeId(a), NodeId(b))))
        .expect("generator produced a malformed edge")
}

/// Erdős–Rényi G(n, p).
pub fn gnp(n: u64, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::domain(format!("gnp: p = {p} is not in [0, 1]")));
    }
    let mut rng = SeedStream::new(seed).rng(&format!("gen/gnp/{n}/{p}"));
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.random::<f64>() < p {
                edges.push((a, b));
            }
        }
    }
    Ok(build(n, edges))
}

pub fn path(n: u64) -> Graph {
    build(n, (1..n).map(|i| (i - 1, i)).collect())
}

pub fn cycle(n: u64) -> Result<Graph> {
    if n < 3 {
        return Err(Error::domain("cycle: n must be at least 3"));
    }
    let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    edges.push((n - 1, 0));
    Ok(build(n, edges))
}

/// `rows x cols` grid; node `r * cols + c`.
pub fn grid(rows: u64, cols: u64) -> Graph {
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            let v = r * cols + c;
            if c + 1 < cols {
                edges.push((v, v + 1));
            }
            if r + 1 < rows {
                edges.push((v, v + cols));
            }
        }
    }
    build(rows * cols, edges)
}

pub fn complete(n: u64) -> Graph {
    build(n, (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect())
}

/// Star with centre 0 and `leaves` leaves.
pub fn star(leaves: u64) -> Graph {
    build(leaves + 1, (1..=leaves).map(|i| (0, i)).collect())
}

/// `k` disjoint edges `{2i, 2i+1}`.
pub fn disjoint_edges(k: u64) -> Graph {
    build(2 * k, (0..k).map(|i| (2 * i, 2 * i + 1)).collect())
}

pub fn edgeless(n: u64) -> Graph {
    build(n, Vec::new())
}

/// Uniform random recursive tree: node `i` attaches to a uniform earlier node.
pub fn tree(n: u64, seed: u64) -> Graph {
    let mut rng = SeedStream::new(seed).rng(&format!("gen/tree/{n}"));
    build(n, (1..n).map(|i| (rng.random_range(0..i), i)).collect())
}

/// Random simple `d`-regular graph by the pairing model with rejection.
pub fn regular(n: u64, d: u64, seed: u64) -> Result<Graph> {
    if d >= n.max(1) || (n * d) % 2 == 1 {
        return Err(Error::domain(format!("regular: no simple {d}-regular graph on {n} nodes")));
    }
    let mut rng = SeedStream::new(seed).rng(&format!("gen/regular/{n}/{d}"));
    let mut stubs: Vec<u64> = (0..n).flat_map(|v| std::iter::repeat_n(v, d as usize)).collect();
    for _ in 0..REGULAR_ATTEMPTS {
        stubs.shuffle(&mut rng);
        let mut edges: Vec<(u64, u64)> =
            stubs.chunks(2).map(|c| (c[0].min(c[1]), c[0].max(c[1]))).collect();
        if edges.iter().any(|&(a, b)| a == b) {
            continue;
        }
        edges.sort_unstable();
        if edges.windows(2).any(|w| w[0] == w[1]) {
            continue;
        }
        return Ok(build(n, edges));
    }
    Err(Error::RandomFailure { attempts: REGULAR_ATTEMPTS })
}
