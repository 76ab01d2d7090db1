//! Graph families shared by the integration and acceptance tests.

#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use local_derand::gen;
use local_derand::Graph;

pub struct Case {
    pub name: String,
    pub graph: Graph,
}

fn case(name: String, graph: Graph) -> Case {
    Case { name, graph }
}

/// Sizes in `[2, 500]` used for every density.
pub const GNP_SIZES: [u64; 45] = [
    2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 14, 16, 18, 20, 24, 28, 32, 36, 40, 48, 56, 64, 72, 80, 96, 112, 128, 144, 160,
    176, 192, 208, 224, 240, 256, 288, 320, 352, 384, 400, 420, 440, 460, 480, 500,
];

pub const GNP_DENSITIES: [f64; 3] = [0.01, 0.05, 0.3];

/// 135 random graphs, 15 paths, 15 grids, 14 cliques and 21 trees.
pub fn sweep() -> Vec<Case> {
    let mut out = Vec::new();
    for (k, &p) in GNP_DENSITIES.iter().enumerate() {
        for (i, &n) in GNP_SIZES.iter().enumerate() {
            let seed = (k * 1000 + i) as u64;
            out.push(case(format!("gnp({n},{p},{seed})"), gen::gnp(n, p, seed).unwrap()));
        }
    }
    for n in [1, 2, 3, 4, 5, 8, 10, 16, 25, 50, 64, 100, 150, 200, 300] {
        out.push(case(format!("path({n})"), gen::path(n)));
    }
    for (r, c) in [(1, 1), (1, 5), (2, 2), (2, 7), (3, 3), (4, 4), (5, 8), (6, 6), (8, 8), (10, 3), (10, 10), (12, 15), (15, 15), (20, 10), (20, 20)] {
        out.push(case(format!("grid({r},{c})"), gen::grid(r, c)));
    }
    for n in [1, 2, 3, 4, 5, 6, 7, 8, 10, 12, 16, 20, 30, 40] {
        out.push(case(format!("complete({n})"), gen::complete(n)));
    }
    for (i, n) in [1u64, 2, 3, 5, 8, 13, 21, 34, 55, 89, 100, 144, 150, 200, 233, 250, 300, 350, 377, 400, 500].into_iter().enumerate() {
        out.push(case(format!("tree({n},{i})"), gen::tree(n, i as u64)));
    }
    out
}

/// Independent maximality and independence check.
pub fn is_maximal_independent(g: &Graph, set: &[local_derand::NodeId]) -> bool {
    let members: BTreeSet<u64> = set.iter().map(|v| v.0).collect();
    if members.len() != set.len() || set.iter().any(|&v| !g.contains(v)) {
        return false;
    }
    let edges = g.edges().map(|(a, b)| (g.id(a).0, g.id(b).0));
    let mut dominated: BTreeSet<u64> = members.clone();
    for (a, b) in edges {
        if members.contains(&a) && members.contains(&b) {
            return false;
        }
        if members.contains(&a) {
            dominated.insert(b);
        }
        if members.contains(&b) {
            dominated.insert(a);
        }
    }
    dominated.len() == g.n()
}

/// Plain BFS distances by node index, `usize::MAX` when unreachable.
pub fn bfs(g: &Graph, s: usize) -> Vec<usize> {
    let mut d = vec![usize::MAX; g.n()];
    d[s] = 0;
    let mut q = VecDeque::from([s]);
    while let Some(v) = q.pop_front() {
        for &w in g.neighbors(v) {
            if d[w] == usize::MAX {
                d[w] = d[v] + 1;
                q.push_back(w);
            }
        }
    }
    d
}

/// Graph on the nodes of `g` with at least one edge.
pub fn strip_isolated(g: &Graph) -> Graph {
    g.induced_by_indices(&g.non_isolated())
}
