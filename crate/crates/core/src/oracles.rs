//! Exhaustive and exact references for small inputs.
//!
//! None of these are used by the algorithms themselves. Each routine refuses
//! inputs beyond its [`OracleBudget`] with [`Error::Budget`].

use std::collections::HashMap;

use petgraph::graph::UnGraph;

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId, UNREACHABLE};
use crate::hitting::{BipartiteInstance, UNode};
use crate::rounding::{FractionalAssignment, UtilityCostInstance};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_nodes: usize,
    pub max_label_tuples: u64,
    /// Largest V-side for subset enumeration in hitting-set checks.
    pub max_subset_nodes: usize,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget { max_nodes: 24, max_label_tuples: 1 << 20, max_subset_nodes: 20 }
    }
}

/// Subset search over edges is used up to this many edges.
pub const EDGE_SUBSET_LIMIT: usize = 20;

fn matching_by_edge_subsets(edges: &[(usize, usize)], n: usize) -> Vec<usize> {
    let mut best: Vec<usize> = Vec::new();
    for mask in 0u32..(1u32 << edges.len()) {
        if (mask.count_ones() as usize) <= best.len() {
            continue;
        }
        let mut used = vec![false; n];
        let ok = (0..edges.len()).filter(|&e| mask >> e & 1 == 1).all(|e| {
            let (a, b) = edges[e];
            let free = !used[a] && !used[b];
            used[a] = true;
            used[b] = true;
            free
        });
        if ok {
            best = (0..edges.len()).filter(|&e| mask >> e & 1 == 1).collect();
        }
    }
    best
}

/// Best matching on the vertex set `mask`, branching on its lowest vertex.
fn matching_by_vertex_masks(g: &Graph, mask: u32, memo: &mut HashMap<u32, u32>) -> u32 {
    if mask == 0 {
        return 0;
    }
    if let Some(&v) = memo.get(&mask) {
        return v;
    }
    let v = mask.trailing_zeros() as usize;
    let rest = mask & !(1 << v);
    let mut best = matching_by_vertex_masks(g, rest, memo);
    for &w in g.neighbors(v) {
        if rest >> w & 1 == 1 {
            best = best.max(1 + matching_by_vertex_masks(g, rest & !(1 << w), memo));
        }
    }
    memo.insert(mask, best);
    best
}

fn reconstruct(g: &Graph, mut mask: u32, memo: &mut HashMap<u32, u32>) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    while mask != 0 {
        let v = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << v);
        let target = matching_by_vertex_masks(g, mask, memo);
        let partner = g
            .neighbors(v)
            .iter()
            .copied()
            .find(|&w| rest >> w & 1 == 1 && 1 + matching_by_vertex_masks(g, rest & !(1 << w), memo) == target);
        match partner {
            Some(w) if matching_by_vertex_masks(g, rest, memo) != target => {
                out.push((v, w));
                mask = rest & !(1 << w);
            }
            _ => mask = rest,
        }
    }
    out
}

/// Maximum matching size by a general-graph blossom algorithm; usable at any
/// scale and used as the cross-check for the exhaustive searches.
pub fn blossom_matching_size(g: &Graph) -> usize {
    let mut pg: UnGraph<(), ()> = UnGraph::with_capacity(g.n(), g.m());
    let nodes: Vec<_> = (0..g.n()).map(|_| pg.add_node(())).collect();
    for (a, b) in g.edges() {
        pg.add_edge(nodes[a], nodes[b], ());
    }
    petgraph::algo::maximum_matching(&pg).len()
}

/// A maximum-cardinality matching found by exhaustive search, cross-checked
/// against [`blossom_matching_size`].
pub fn exact_max_matching(g: &Graph, budget: &OracleBudget) -> Result<Vec<(NodeId, NodeId)>> {
    if g.n() > budget.max_nodes.min(32) {
        return Err(Error::Budget { what: "nodes", size: g.n(), budget: budget.max_nodes });
    }
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let chosen: Vec<(usize, usize)> = if edges.len() <= EDGE_SUBSET_LIMIT {
        matching_by_edge_subsets(&edges, g.n()).into_iter().map(|e| edges[e]).collect()
    } else {
        let full = if g.n() == 32 { u32::MAX } else { (1u32 << g.n()) - 1 };
        reconstruct(g, full, &mut HashMap::new())
    };
    let reference = blossom_matching_size(g);
    if chosen.len() != reference {
        return Err(Error::Contract(format!(
            "exhaustive matching size {} disagrees with blossom size {reference}",
            chosen.len()
        )));
    }
    Ok(chosen.into_iter().map(|(a, b)| (g.id(a), g.id(b))).collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct RoundCheck {
    pub best_value: f64,
    pub best_labels: Vec<usize>,
    pub expected_utility: f64,
    pub expected_cost: f64,
    pub tuples: u64,
}

impl RoundCheck {
    pub fn expected_value(&self) -> f64 {
        self.expected_utility - self.expected_cost
    }
}

/// Enumerates every integral labelling, recording the best `u - c` and the
/// `lambda`-weighted expectations of `u` and `c`.
pub fn exhaustive_round_check(
    inst: &UtilityCostInstance,
    lambda: &FractionalAssignment,
    budget: &OracleBudget,
) -> Result<RoundCheck> {
    let n = inst.n();
    let l = inst.labels();
    if lambda.n() != n || lambda.labels() != l {
        return Err(Error::domain("assignment shape does not match the instance"));
    }
    let tuples = (l as u64).checked_pow(n as u32).filter(|&t| t <= budget.max_label_tuples);
    let Some(tuples) = tuples else {
        return Err(Error::Budget { what: "label tuples", size: usize::MAX, budget: budget.max_label_tuples as usize });
    };
    let (u0, c0) = inst.offsets();
    let mut labels = vec![0usize; n];
    let mut best_value = f64::NEG_INFINITY;
    let mut best_labels = labels.clone();
    let (mut eu, mut ec) = (0.0, 0.0);
    for _ in 0..tuples {
        let (mut u, mut c) = (u0, c0);
        let mut prob = 1.0;
        for (v, &k) in labels.iter().enumerate() {
            let (nu, nc) = inst.node_terms(v);
            u += nu[k];
            c += nc[k];
            prob *= lambda.row(v)[k];
        }
        for t in inst.pairs() {
            let idx = labels[t.a] * l + labels[t.b];
            u += t.utility[idx];
            c += t.cost[idx];
        }
        if u - c > best_value {
            best_value = u - c;
            best_labels.clone_from(&labels);
        }
        eu += prob * u;
        ec += prob * c;
        // Odometer increment, least significant node first.
        for k in labels.iter_mut() {
            *k += 1;
            if *k < l {
                break;
            }
            *k = 0;
        }
    }
    Ok(RoundCheck { best_value, best_labels, expected_utility: eu, expected_cost: ec, tuples })
}

/// Which hitting-set inequality a witness must satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HittingRule {
    /// Unhit weight plus `Norm |S|` at most `e^{-pΔ} Σw + 4 Norm p |V|`.
    Basic,
    /// Weight hit at most `floor(Δ/k)/2` times plus `Norm |S|` at most
    /// `4 (e^{-pk} Σw + Norm p |V|)`.
    Grouped(usize),
}

fn sides(inst: &BipartiteInstance, rule: HittingRule, size: usize, member: impl Fn(usize) -> bool) -> (f64, f64) {
    let total: f64 = inst.u().iter().map(|u| u.weight).sum();
    let size = size as f64;
    let nv = inst.v().len() as f64;
    let (p, norm, delta) = (inst.p(), inst.norm(), inst.delta());
    let hits = |u: &UNode| u.neighbors.iter().filter(|&&v| member(v)).count();
    match rule {
        HittingRule::Basic => {
            let unhit: f64 = inst.u().iter().filter(|u| hits(u) == 0).map(|u| u.weight).sum();
            (unhit + norm * size, (-p * delta as f64).exp() * total + 4.0 * norm * p * nv)
        }
        HittingRule::Grouped(k) => {
            let cap = (delta / k.max(1)) as f64 / 2.0;
            let light: f64 = inst.u().iter().filter(|u| hits(u) as f64 <= cap).map(|u| u.weight).sum();
            (light + norm * size, 4.0 * ((-p * k as f64).exp() * total + norm * p * nv))
        }
    }
}

/// Both sides of `rule` for `selected` (V indices), computed without the
/// instance's own side methods.
pub fn hitting_sides(inst: &BipartiteInstance, rule: HittingRule, selected: &[usize]) -> (f64, f64) {
    let mut member = vec![false; inst.v().len()];
    for &v in selected {
        member[v] = true;
    }
    sides(inst, rule, selected.len(), |v| member[v])
}

/// The first subset in increasing bitmask order satisfying `rule`, if any.
pub fn exhaustive_hitting_check(
    inst: &BipartiteInstance,
    rule: HittingRule,
    budget: &OracleBudget,
) -> Result<Option<Vec<usize>>> {
    let nv = inst.v().len();
    if nv > budget.max_subset_nodes.min(30) {
        return Err(Error::Budget { what: "subset nodes", size: nv, budget: budget.max_subset_nodes });
    }
    for mask in 0u64..(1u64 << nv) {
        let (lhs, rhs) = sides(inst, rule, mask.count_ones() as usize, |v| mask >> v & 1 == 1);
        if lhs <= rhs {
            return Ok(Some((0..nv).filter(|&v| mask >> v & 1 == 1).collect()));
        }
    }
    Ok(None)
}

/// For every node, the minimiser of `(delay(v) + dist(v, u), v)` over all
/// nodes `v` in its component, by all-pairs BFS.
pub fn brute_force_centers(g: &Graph, delays: &[u64]) -> Vec<usize> {
    let dist: Vec<Vec<usize>> = (0..g.n()).map(|v| g.bfs(v)).collect();
    (0..g.n())
        .map(|u| {
            (0..g.n())
                .filter(|&v| dist[v][u] != UNREACHABLE)
                .min_by_key(|&v| (delays[v] + dist[v][u] as u64, v))
                .expect("u reaches itself")
        })
        .collect()
}

/// Exact `Pr[|Y - E Y| >= t]` for `Y` a sum of independent variables each
/// equal to `b` with probability `probs[i]` and `0` otherwise.
pub fn two_point_tail(probs: &[f64], b: f64, t: f64) -> f64 {
    let mut dist = vec![1.0];
    for &p in probs {
        let mut next = vec![0.0; dist.len() + 1];
        for (k, &q) in dist.iter().enumerate() {
            next[k] += q * (1.0 - p);
            next[k + 1] += q * p;
        }
        dist = next;
    }
    let mean: f64 = probs.iter().sum::<f64>() * b;
    dist.iter().enumerate().filter(|(k, _)| (*k as f64 * b - mean).abs() >= t).map(|(_, q)| q).sum()
}

/// `2 exp(-min(δ, δ²) E[X] / 3)` for sums of independent `[0, 1]` variables.
pub fn chernoff_bound(mean: f64, delta: f64) -> f64 {
    2.0 * (-delta.min(delta * delta) * mean / 3.0).exp()
}

/// `2 exp(-t / (6b))` for sums of independent `[0, b]` variables and `t >= E[Y]/2`.
pub fn chernoff_scaled(t: f64, b: f64) -> f64 {
    2.0 * (-t / (6.0 * b)).exp()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;
    use crate::rounding::evaluate;
    use proptest::prelude::*;

    #[test]
    fn matching_examples() {
        let b = OracleBudget::default();
        assert_eq!(exact_max_matching(&gen::path(4), &b).unwrap().len(), 2);
        assert_eq!(exact_max_matching(&gen::complete(4), &b).unwrap().len(), 2);
        assert_eq!(exact_max_matching(&gen::cycle(9).unwrap(), &b).unwrap().len(), 4);
        // 28 edges forces the vertex-mask search.
        assert_eq!(exact_max_matching(&gen::complete(8), &b).unwrap().len(), 4);
        assert_eq!(exact_max_matching(&gen::complete(9), &b).unwrap().len(), 4);
        assert!(matches!(exact_max_matching(&gen::path(25), &b), Err(Error::Budget { .. })));
    }

    #[test]
    fn round_check_single_node() {
        let g = gen::edgeless(1);
        let mut bld = UtilityCostInstance::builder(g, 2);
        bld.add_node(0, 1, 3.0, 1.0).unwrap();
        let inst = bld.build().unwrap();
        let lam = FractionalAssignment::binary(&[0.25]).unwrap();
        let r = exhaustive_round_check(&inst, &lam, &OracleBudget::default()).unwrap();
        assert_eq!(r.tuples, 2);
        assert_eq!(r.best_labels, vec![1]);
        assert!((r.expected_value() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn round_check_refuses_large() {
        let g = gen::edgeless(21);
        let inst = UtilityCostInstance::builder(g, 2).build().unwrap();
        let lam = FractionalAssignment::binary(&[0.5; 21]).unwrap();
        assert!(matches!(exhaustive_round_check(&inst, &lam, &OracleBudget::default()), Err(Error::Budget { .. })));
    }

    #[test]
    fn hitting_witnesses() {
        let budget = OracleBudget::default();
        let inst = BipartiteInstance::new([NodeId(0)], [(NodeId(10), 1.0, vec![NodeId(0)])], 1, 1.0, 0.01).unwrap();
        // Unhit costs 1 > e^{-1} + 0.04, so the witness must be {v}.
        assert_eq!(exhaustive_hitting_check(&inst, HittingRule::Basic, &budget).unwrap(), Some(vec![0]));
        let inst = BipartiteInstance::new([NodeId(0)], [(NodeId(10), 0.0, vec![NodeId(0)])], 1, 1.0, 1e9).unwrap();
        assert_eq!(exhaustive_hitting_check(&inst, HittingRule::Basic, &budget).unwrap(), Some(vec![]));
    }

    #[test]
    fn brute_centers_zero_delay() {
        let g = gen::path(4);
        assert_eq!(brute_force_centers(&g, &[0; 4]), vec![0, 1, 2, 3]);
        assert_eq!(brute_force_centers(&g, &[0, 9, 9, 9]), vec![0, 0, 0, 0]);
    }

    #[test]
    fn chernoff_dominates_exact_tails() {
        let probs = vec![0.1; 60];
        let b = 0.5;
        let mean = 6.0 * b;
        for t in [mean / 2.0, mean, 2.0 * mean] {
            assert!(two_point_tail(&probs, b, t) <= chernoff_scaled(t, b));
            assert!(two_point_tail(&probs, b, t) <= chernoff_bound(6.0, t / mean));
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn searches_agree_with_blossom(n in 2u64..14, p in 0.05f64..0.9, seed in 0u64..10_000) {
            let g = gen::gnp(n, p, seed).unwrap();
            let m = exact_max_matching(&g, &OracleBudget::default()).unwrap();
            prop_assert!(crate::matching::is_matching(&g, &m));
            let edges: Vec<_> = g.edges().collect();
            let full = (1u32 << g.n()) - 1;
            let by_mask = reconstruct(&g, full, &mut HashMap::new());
            prop_assert_eq!(by_mask.len(), m.len());
            if edges.len() <= EDGE_SUBSET_LIMIT {
                prop_assert_eq!(matching_by_edge_subsets(&edges, g.n()).len(), m.len());
            }
        }

        #[test]
        fn expectation_matches_evaluate(seed in 0u64..10_000) {
            use rand::Rng;
            let mut rng = crate::rng::SeedStream::new(seed).rng("oracle-test");
            let g = gen::gnp(10, 0.3, seed).unwrap();
            let mut bld = UtilityCostInstance::builder(g.clone(), 2);
            for v in 0..10 {
                bld.add_node(v, 1, rng.random::<f64>(), rng.random::<f64>()).unwrap();
            }
            for (a, b) in g.edges() {
                bld.add_pair(a, b, 1, 1, rng.random::<f64>(), rng.random::<f64>()).unwrap();
            }
            let inst = bld.build().unwrap();
            let x: Vec<f64> = (0..10).map(|_| rng.random::<f64>()).collect();
            let lam = FractionalAssignment::binary(&x).unwrap();
            let r = exhaustive_round_check(&inst, &lam, &OracleBudget::default()).unwrap();
            let e = evaluate(&inst, &lam).unwrap();
            prop_assert!((r.expected_utility - e.utility).abs() <= 1e-9 * (1.0 + e.utility.abs()));
            prop_assert!((r.expected_cost - e.cost).abs() <= 1e-9 * (1.0 + e.cost.abs()));
        }
    }
}
