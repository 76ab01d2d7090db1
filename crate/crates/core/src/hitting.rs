//! Deterministic hitting sets on bipartite instances.
//!
//! [`basic_hitting_set`] runs `T = ceil(10 p Δ)` steps. Each step rounds the
//! fractional set `x_v = 2p/T` with [`crate::rounding::round_labels`], adds the
//! chosen nodes, and drops every U-node that got hit. The potential
//! `Φ_i` recorded in the outcome is non-increasing by construction and every
//! step re-checks it.
//!
//! [`grouped_hitting_set`] asks for many hits per U-node by splitting each
//! U-node into `floor(Δ/k)` copies over disjoint blocks of `k` neighbours.

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId, MAX_ID};
use crate::ledger::RoundLedger;
use crate::rounding::{greedy_color, round_labels, FractionalAssignment, RoundingOptions, UtilityCostInstance};

const REL_TOLERANCE: f64 = 1e-9;

fn leq(lhs: f64, rhs: f64) -> bool {
    lhs <= rhs + REL_TOLERANCE * (lhs.abs() + rhs.abs() + 1.0)
}

#[derive(Debug, Clone, PartialEq)]
pub struct UNode {
    pub id: NodeId,
    pub weight: f64,
    /// Indices into the V-side, sorted by ID.
    pub neighbors: Vec<usize>,
}

/// Bipartite instance with a uniform U-side degree `delta`.
#[derive(Debug, Clone, PartialEq)]
pub struct BipartiteInstance {
    v: Vec<NodeId>,
    u: Vec<UNode>,
    delta: usize,
    p: f64,
    norm: f64,
}

impl BipartiteInstance {
    /// `u` lists `(id, weight, neighbours)`; every neighbour must be present in `v`.
    pub fn new(
        v: impl IntoIterator<Item = NodeId>,
        u: impl IntoIterator<Item = (NodeId, f64, Vec<NodeId>)>,
        delta: usize,
        p: f64,
        norm: f64,
    ) -> Result<Self> {
        let mut v: Vec<NodeId> = v.into_iter().collect();
        v.sort_unstable();
        if v.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::domain("duplicate V-side node"));
        }
        if !(p > 0.0 && p <= 1.0) {
            return Err(Error::domain(format!("p = {p} is not in (0, 1]")));
        }
        if !(norm.is_finite() && norm >= 0.0) {
            return Err(Error::domain(format!("Norm = {norm} must be finite and non-negative")));
        }
        let mut nodes = Vec::new();
        for (id, weight, nbrs) in u {
            if !(weight.is_finite() && weight >= 0.0) {
                return Err(Error::domain(format!("U-node {id}: weight {weight} must be finite and non-negative")));
            }
            let mut idx = nbrs
                .iter()
                .map(|x| v.binary_search(x).map_err(|_| Error::UnknownNode(*x)))
                .collect::<Result<Vec<_>>>()?;
            idx.sort_unstable();
            idx.dedup();
            if idx.len() != delta || nbrs.len() != delta {
                return Err(Error::domain(format!(
                    "U-node {id} has {} distinct neighbours, expected Δ = {delta}",
                    idx.len()
                )));
            }
            nodes.push(UNode { id, weight, neighbors: idx });
        }
        Ok(BipartiteInstance { v, u: nodes, delta, p, norm })
    }

    pub fn v(&self) -> &[NodeId] {
        &self.v
    }

    pub fn u(&self) -> &[UNode] {
        &self.u
    }

    pub fn delta(&self) -> usize {
        self.delta
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn norm(&self) -> f64 {
        self.norm
    }

    pub fn total_weight(&self) -> f64 {
        self.u.iter().map(|u| u.weight).sum()
    }

    /// Number of steps `T = max(1, ceil(10 p Δ))`.
    pub fn steps(&self) -> usize {
        ((10.0 * self.p * self.delta as f64).ceil() as usize).max(1)
    }

    fn trivially_empty(&self) -> bool {
        self.u.is_empty() || self.delta == 0 || (self.norm == 0.0 && self.u.iter().all(|u| u.weight == 0.0))
    }

    /// How many neighbours of each U-node lie in `selected` (V indices).
    pub fn hit_counts(&self, selected: &[usize]) -> Vec<usize> {
        let mut chosen = vec![false; self.v.len()];
        for &s in selected {
            chosen[s] = true;
        }
        self.u.iter().map(|u| u.neighbors.iter().filter(|&&x| chosen[x]).count()).collect()
    }

    /// Left and right side of the basic inequality for `selected`:
    /// `Σ_{unhit} w + Norm |S|` and `e^{-pΔ} Σ w + Norm 4p |V|`.
    pub fn basic_sides(&self, selected: &[usize]) -> (f64, f64) {
        let hits = self.hit_counts(selected);
        let unhit: f64 = self.u.iter().zip(&hits).filter(|(_, &h)| h == 0).map(|(u, _)| u.weight).sum();
        let lhs = unhit + self.norm * selected.len() as f64;
        let rhs = (-self.p * self.delta as f64).exp() * self.total_weight()
            + self.norm * 4.0 * self.p * self.v.len() as f64;
        (lhs, rhs)
    }

    /// Left and right side of the grouped inequality for group size `k`:
    /// `Σ_{u: hits <= floor(Δ/k)/2} w + Norm |S|` and `4 (e^{-pk} Σ w + Norm p |V|)`.
    pub fn grouped_sides(&self, k: usize, selected: &[usize]) -> (f64, f64) {
        let groups = (self.delta / k.max(1)) as f64;
        let hits = self.hit_counts(selected);
        let light: f64 = self
            .u
            .iter()
            .zip(&hits)
            .filter(|(_, &h)| (h as f64) <= 0.5 * groups)
            .map(|(u, _)| u.weight)
            .sum();
        let lhs = light + self.norm * selected.len() as f64;
        let rhs = 4.0
            * ((-self.p * k as f64).exp() * self.total_weight() + self.norm * self.p * self.v.len() as f64);
        (lhs, rhs)
    }
}

/// Graph on the V-side with an edge between any two nodes sharing a U-neighbour.
pub fn conflict_graph(inst: &BipartiteInstance) -> Graph {
    let mut edges = Vec::new();
    for u in &inst.u {
        for (i, &a) in u.neighbors.iter().enumerate() {
            for &b in &u.neighbors[i + 1..] {
                edges.push((inst.v[a], inst.v[b]));
            }
        }
    }
    Graph::from_edges(inst.v.iter().copied(), edges).expect("V-side IDs are valid")
}

#[derive(Debug, Clone, PartialEq)]
pub struct StepRecord {
    pub step: usize,
    pub chosen: usize,
    pub fractional_utility: f64,
    pub fractional_cost: f64,
    /// `e^{-((T-i)/T)pΔ} Σ_{unhit} Y_i(u) w_u + Norm |S_i|`.
    pub good_lhs: f64,
    /// `e^{-((T-i+1)/T)pΔ} Σ_{unhit} w_u + Norm 4p/T |V|`.
    pub good_rhs: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HittingOutcome {
    /// Selected V indices in increasing order.
    pub selected: Vec<usize>,
    pub selected_ids: Vec<NodeId>,
    /// `Φ_0, ..., Φ_T`; empty when the instance was trivially solved.
    pub potentials: Vec<f64>,
    pub steps: Vec<StepRecord>,
    /// Colours used on the conflict graph.
    pub colors: usize,
    pub lhs: f64,
    pub rhs: f64,
}

impl HittingOutcome {
    fn empty(lhs: f64, rhs: f64) -> Self {
        HittingOutcome {
            selected: Vec::new(),
            selected_ids: Vec::new(),
            potentials: Vec::new(),
            steps: Vec::new(),
            colors: 0,
            lhs,
            rhs,
        }
    }

    /// Rounds on `H`: every step is one pass over the colour classes, and a
    /// conflict edge spans two H-hops.
    pub fn h_rounds(&self) -> u64 {
        self.steps.len() as u64 * (self.colors as u64).max(1) * 2
    }

    /// Each step is one rounding pass over the colour classes of the conflict
    /// graph, whose edges span two hops of `H`; `h_edge_radius` is the host
    /// distance covered by one H-edge.
    pub fn charge(&self, ledger: &mut RoundLedger, label: &str, h_edge_radius: u64) -> Result<()> {
        if self.steps.is_empty() {
            return ledger.charge(label, 0, 0);
        }
        let radius = 2 * h_edge_radius;
        let rounds = self.steps.len() as u64 * (self.colors as u64).max(1) * radius;
        ledger.charge(label, radius, rounds)
    }
}

/// Subset with `Σ_{unhit} w + Norm |S| <= e^{-pΔ} Σ w + Norm 4p |V|`.
pub fn basic_hitting_set(inst: &BipartiteInstance) -> Result<HittingOutcome> {
    if inst.trivially_empty() {
        let (lhs, rhs) = inst.basic_sides(&[]);
        return Ok(HittingOutcome::empty(lhs, rhs));
    }
    let t = inst.steps();
    let p = inst.p;
    let delta = inst.delta as f64;
    let nv = inst.v.len();
    let x = 2.0 * p / t as f64;
    if delta * x > 0.2 + REL_TOLERANCE {
        return Err(Error::claim("hitting-density", format!("Δ·2p/T = {} exceeds 0.2", delta * x)));
    }
    let factor = |i: usize| (-((t - i) as f64 / t as f64) * p * delta).exp();
    let norm_term = inst.norm * 4.0 * p / t as f64 * nv as f64;

    let conflict = conflict_graph(inst);
    let coloring = greedy_color(&conflict);
    let lambda = FractionalAssignment::binary(&vec![x; nv])?;

    let mut unhit = vec![true; inst.u.len()];
    let mut in_w = vec![false; nv];
    let mut w_size = 0usize;
    let unhit_weight = |unhit: &[bool]| -> f64 {
        inst.u.iter().zip(unhit).filter(|(_, &h)| h).map(|(u, _)| u.weight).sum()
    };
    let potential = |i: usize, unhit_w: f64, w_size: usize| {
        factor(i) * unhit_w
            + inst.norm * w_size as f64
            + (t - i) as f64 / t as f64 * inst.norm * 4.0 * p * nv as f64
    };
    let mut potentials = vec![potential(0, unhit_weight(&unhit), 0)];
    let mut steps = Vec::with_capacity(t);

    for i in 1..=t {
        let f = factor(i);
        let mut b = UtilityCostInstance::builder(conflict.clone(), 2);
        b.add_offset(norm_term, 0.0);
        for v in 0..nv {
            b.add_node(v, 1, 0.0, inst.norm)?;
        }
        for (u, _) in inst.u.iter().zip(&unhit).filter(|(_, &h)| h) {
            if u.weight == 0.0 {
                continue;
            }
            for (a_pos, &a) in u.neighbors.iter().enumerate() {
                b.add_node(a, 1, f * u.weight, 0.0)?;
                for &c in &u.neighbors[a_pos + 1..] {
                    b.add_pair(a, c, 1, 1, 0.0, f * u.weight)?;
                }
            }
        }
        let rinst = b.build()?;
        let out = round_labels(&rinst, &lambda, &coloring, RoundingOptions::default())?;
        let frac = out.fractional;
        if !leq(2.0 * frac.cost, frac.utility) {
            return Err(Error::claim(
                "hitting-utility-dominance",
                format!("step {i}: u(x) = {}, c(x) = {}", frac.utility, frac.cost),
            ));
        }
        let chosen: Vec<usize> = (0..nv).filter(|&v| out.labels[v] == 1).collect();
        let mut in_s = vec![false; nv];
        for &v in &chosen {
            in_s[v] = true;
        }

        let before_w = unhit_weight(&unhit);
        let mut y_sum = 0.0;
        for (k, u) in inst.u.iter().enumerate() {
            if !unhit[k] {
                continue;
            }
            let h = u.neighbors.iter().filter(|&&nb| in_s[nb]).count() as f64;
            let y = 1.0 - h + h * (h - 1.0) / 2.0;
            let indicator = if h == 0.0 { 1.0 } else { 0.0 };
            if y < indicator {
                return Err(Error::claim("hitting-y-indicator", format!("step {i}: Y = {y}")));
            }
            y_sum += y * u.weight;
            if h > 0.0 {
                unhit[k] = false;
            }
        }
        let good_lhs = f * y_sum + inst.norm * chosen.len() as f64;
        let good_rhs = factor(i - 1) * before_w + norm_term;
        if !leq(good_lhs, good_rhs) {
            return Err(Error::claim(
                "hitting-good-set",
                format!("step {i}/{t}: {good_lhs} > {good_rhs}, chose {} nodes", chosen.len()),
            ));
        }
        for &v in &chosen {
            if !in_w[v] {
                in_w[v] = true;
                w_size += 1;
            }
        }
        let phi = potential(i, unhit_weight(&unhit), w_size);
        let prev = *potentials.last().unwrap();
        if !leq(phi, prev) {
            return Err(Error::claim("hitting-potential-monotone", format!("step {i}: Φ {prev} -> {phi}")));
        }
        potentials.push(phi);
        steps.push(StepRecord {
            step: i,
            chosen: chosen.len(),
            fractional_utility: frac.utility,
            fractional_cost: frac.cost,
            good_lhs,
            good_rhs,
        });
    }

    let selected: Vec<usize> = (0..nv).filter(|&v| in_w[v]).collect();
    let (lhs, rhs) = inst.basic_sides(&selected);
    if !leq(lhs, rhs) {
        return Err(Error::claim("hitting-basic", format!("{lhs} > {rhs}")));
    }
    Ok(HittingOutcome {
        selected_ids: selected.iter().map(|&v| inst.v[v]).collect(),
        selected,
        potentials,
        steps,
        colors: coloring.count(),
        lhs,
        rhs,
    })
}

/// Replaces every U-node by `floor(Δ/k)` copies, copy `j` wired to the
/// sorted neighbours `[j k, (j+1) k)`, each with weight `2 w / floor(Δ/k)`.
pub fn split_into_copies(inst: &BipartiteInstance, k: usize) -> Result<BipartiteInstance> {
    if k == 0 || k > inst.delta {
        return Err(Error::domain(format!("group size k = {k} must lie in [1, Δ = {}]", inst.delta)));
    }
    let groups = inst.delta / k;
    let shift = (inst.delta as u64).next_power_of_two().trailing_zeros() + 2;
    let mut copies = Vec::with_capacity(inst.u.len() * groups);
    for u in &inst.u {
        if u.id.0 >= MAX_ID >> shift {
            return Err(Error::domain(format!("copy IDs of U-node {} overflow the ID space", u.id)));
        }
        for j in 0..groups {
            copies.push(UNode {
                id: NodeId((u.id.0 << shift) + j as u64),
                weight: 2.0 * u.weight / groups as f64,
                neighbors: u.neighbors[j * k..(j + 1) * k].to_vec(),
            });
        }
    }
    Ok(BipartiteInstance { v: inst.v.clone(), u: copies, delta: k, p: inst.p, norm: inst.norm })
}

/// Subset with `Σ_{u: hits <= floor(Δ/k)/2} w + Norm |S| <= 4 (e^{-pk} Σ w + Norm p |V|)`.
pub fn grouped_hitting_set(inst: &BipartiteInstance, k: usize) -> Result<HittingOutcome> {
    let copies = split_into_copies(inst, k)?;
    let mut out = basic_hitting_set(&copies)?;
    let (lhs, rhs) = inst.grouped_sides(k, &out.selected);
    if !leq(lhs, rhs) {
        return Err(Error::claim("hitting-grouped", format!("{lhs} > {rhs}")));
    }
    out.lhs = lhs;
    out.rhs = rhs;
    Ok(out)
}
