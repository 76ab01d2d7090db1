//! Pairwise utility/cost objectives and their deterministic rounding.
//!
//! An instance assigns every decision node a label from a finite alphabet.
//! The objective decomposes into per-node terms and per-conflict-edge terms,
//! so under a product distribution its expectation depends only on pairwise
//! marginals. [`round_labels`] fixes labels one colour class at a time by the
//! method of conditional expectations; since a proper colouring leaves no
//! term between two nodes of the same class, every class can be decided in
//! parallel and the expected objective never decreases.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::ledger::RoundLedger;

const PROB_TOLERANCE: f64 = 1e-9;

/// Absolute slack used when comparing objective values derived from `reference`.
pub fn slack(utility: f64, cost: f64) -> f64 {
    1e-9 * (utility.abs() + cost.abs() + 1.0)
}

#[derive(Debug, Clone)]
pub struct PairTerm {
    pub a: usize,
    pub b: usize,
    /// Row-major `[label_a * L + label_b]`.
    pub utility: Vec<f64>,
    pub cost: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct UtilityCostInstance {
    conflict: Graph,
    labels: usize,
    node_utility: Vec<f64>,
    node_cost: Vec<f64>,
    pairs: Vec<PairTerm>,
    incident: Vec<Vec<usize>>,
    utility_offset: f64,
    cost_offset: f64,
}

impl UtilityCostInstance {
    pub fn builder(conflict: Graph, labels: usize) -> InstanceBuilder {
        InstanceBuilder::new(conflict, labels)
    }

    pub fn conflict_graph(&self) -> &Graph {
        &self.conflict
    }

    pub fn labels(&self) -> usize {
        self.labels
    }

    pub fn n(&self) -> usize {
        self.conflict.n()
    }

    pub fn pairs(&self) -> &[PairTerm] {
        &self.pairs
    }

    pub fn node_terms(&self, v: usize) -> (&[f64], &[f64]) {
        let l = self.labels;
        (&self.node_utility[v * l..(v + 1) * l], &self.node_cost[v * l..(v + 1) * l])
    }

    pub fn offsets(&self) -> (f64, f64) {
        (self.utility_offset, self.cost_offset)
    }
}

#[derive(Debug)]
pub struct InstanceBuilder {
    conflict: Graph,
    labels: usize,
    node_utility: Vec<f64>,
    node_cost: Vec<f64>,
    pairs: Vec<PairTerm>,
    pair_index: HashMap<(usize, usize), usize>,
    utility_offset: f64,
    cost_offset: f64,
}

impl InstanceBuilder {
    pub fn new(conflict: Graph, labels: usize) -> Self {
        let n = conflict.n();
        InstanceBuilder {
            conflict,
            labels,
            node_utility: vec![0.0; n * labels],
            node_cost: vec![0.0; n * labels],
            pairs: Vec::new(),
            pair_index: HashMap::new(),
            utility_offset: 0.0,
            cost_offset: 0.0,
        }
    }

    fn check_node(&self, v: usize, label: usize) -> Result<()> {
        if v >= self.conflict.n() {
            return Err(Error::domain(format!("decision node {v} out of range")));
        }
        if label >= self.labels {
            return Err(Error::domain(format!("label {label} outside alphabet of size {}", self.labels)));
        }
        Ok(())
    }

    /// Adds to the node term of `v` evaluated at `label`.
    pub fn add_node(&mut self, v: usize, label: usize, utility: f64, cost: f64) -> Result<&mut Self> {
        self.check_node(v, label)?;
        self.node_utility[v * self.labels + label] += utility;
        self.node_cost[v * self.labels + label] += cost;
        Ok(self)
    }

    /// Adds to the edge term of `{a, b}` evaluated at `(label_a, label_b)`.
    /// The edge must exist in the conflict graph.
    pub fn add_pair(
        &mut self,
        a: usize,
        b: usize,
        label_a: usize,
        label_b: usize,
        utility: f64,
        cost: f64,
    ) -> Result<&mut Self> {
        self.check_node(a, label_a)?;
        self.check_node(b, label_b)?;
        if a == b || !self.conflict.has_edge(a, b) {
            return Err(Error::domain(format!(
                "pair term on {{{}, {}}} is not a conflict edge",
                self.conflict.id(a),
                self.conflict.id(b)
            )));
        }
        let (a, b, la, lb) = if a < b { (a, b, label_a, label_b) } else { (b, a, label_b, label_a) };
        let l = self.labels;
        let idx = *self.pair_index.entry((a, b)).or_insert_with(|| {
            self.pairs.push(PairTerm { a, b, utility: vec![0.0; l * l], cost: vec![0.0; l * l] });
            self.pairs.len() - 1
        });
        self.pairs[idx].utility[la * l + lb] += utility;
        self.pairs[idx].cost[la * l + lb] += cost;
        Ok(self)
    }

    pub fn add_offset(&mut self, utility: f64, cost: f64) -> &mut Self {
        self.utility_offset += utility;
        self.cost_offset += cost;
        self
    }

    pub fn build(self) -> Result<UtilityCostInstance> {
        let finite = self.node_utility.iter().chain(&self.node_cost).all(|x| x.is_finite())
            && self.pairs.iter().all(|p| p.utility.iter().chain(&p.cost).all(|x| x.is_finite()))
            && self.utility_offset.is_finite()
            && self.cost_offset.is_finite();
        if !finite {
            return Err(Error::domain("utility/cost terms must be finite"));
        }
        let mut incident = vec![Vec::new(); self.conflict.n()];
        for (t, p) in self.pairs.iter().enumerate() {
            incident[p.a].push(t);
            incident[p.b].push(t);
        }
        Ok(UtilityCostInstance {
            conflict: self.conflict,
            labels: self.labels,
            node_utility: self.node_utility,
            node_cost: self.node_cost,
            pairs: self.pairs,
            incident,
            utility_offset: self.utility_offset,
            cost_offset: self.cost_offset,
        })
    }
}

/// A product distribution over labels, one probability vector per decision node.
#[derive(Debug, Clone, PartialEq)]
pub struct FractionalAssignment {
    labels: usize,
    probs: Vec<f64>,
    lambda_min: f64,
}

impl FractionalAssignment {
    pub fn new(labels: usize, rows: &[Vec<f64>]) -> Result<Self> {
        let mut probs = Vec::with_capacity(rows.len() * labels);
        for (v, row) in rows.iter().enumerate() {
            if row.len() != labels {
                return Err(Error::domain(format!("node {v}: expected {labels} probabilities")));
            }
            probs.extend_from_slice(row);
        }
        Self::from_flat(labels, probs)
    }

    fn from_flat(labels: usize, probs: Vec<f64>) -> Result<Self> {
        let mut lambda_min = 1.0f64;
        for (v, row) in probs.chunks(labels.max(1)).enumerate() {
            if row.iter().any(|&p| !(0.0..=1.0).contains(&p)) {
                return Err(Error::domain(format!("node {v}: probabilities must lie in [0, 1]")));
            }
            let sum: f64 = row.iter().sum();
            if (sum - 1.0).abs() > PROB_TOLERANCE {
                return Err(Error::domain(format!("node {v}: probabilities sum to {sum}")));
            }
            for &p in row {
                if p > 0.0 {
                    lambda_min = lambda_min.min(p);
                }
            }
        }
        Ok(FractionalAssignment { labels, probs, lambda_min })
    }

    /// Two-label assignment where `marked[v]` is the probability of label 1.
    pub fn binary(marked: &[f64]) -> Result<Self> {
        let probs = marked.iter().flat_map(|&x| [1.0 - x, x]).collect();
        Self::from_flat(2, probs)
    }

    pub fn integral(labels: usize, choice: &[usize]) -> Result<Self> {
        let mut probs = vec![0.0; choice.len() * labels];
        for (v, &l) in choice.iter().enumerate() {
            if l >= labels {
                return Err(Error::domain(format!("node {v}: label {l} outside alphabet")));
            }
            probs[v * labels + l] = 1.0;
        }
        Self::from_flat(labels, probs)
    }

    pub fn n(&self) -> usize {
        self.probs.len().checked_div(self.labels).unwrap_or(0)
    }

    pub fn labels(&self) -> usize {
        self.labels
    }

    pub fn row(&self, v: usize) -> &[f64] {
        &self.probs[v * self.labels..(v + 1) * self.labels]
    }

    pub fn lambda_min(&self) -> f64 {
        self.lambda_min
    }

    /// Some(labels) when every row is a point mass.
    pub fn as_integral(&self) -> Option<Vec<usize>> {
        (0..self.n()).map(|v| self.row(v).iter().position(|&p| p == 1.0)).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Objective {
    pub utility: f64,
    pub cost: f64,
}

impl Objective {
    pub fn value(&self) -> f64 {
        self.utility - self.cost
    }

    pub fn slack(&self) -> f64 {
        slack(self.utility, self.cost)
    }
}

fn check_shape(inst: &UtilityCostInstance, a: &FractionalAssignment) -> Result<()> {
    if a.n() != inst.n() {
        return Err(Error::domain(format!("assignment covers {} of {} decision nodes", a.n(), inst.n())));
    }
    if a.labels() != inst.labels() {
        return Err(Error::domain("assignment alphabet does not match instance"));
    }
    Ok(())
}

/// Expected utility and cost under the product distribution `a`.
pub fn evaluate(inst: &UtilityCostInstance, a: &FractionalAssignment) -> Result<Objective> {
    check_shape(inst, a)?;
    Ok(evaluate_flat(inst, &a.probs))
}

fn evaluate_flat(inst: &UtilityCostInstance, probs: &[f64]) -> Objective {
    let l = inst.labels;
    let mut utility = inst.utility_offset;
    let mut cost = inst.cost_offset;
    for v in 0..inst.n() {
        for k in 0..l {
            let p = probs[v * l + k];
            if p != 0.0 {
                utility += p * inst.node_utility[v * l + k];
                cost += p * inst.node_cost[v * l + k];
            }
        }
    }
    for t in &inst.pairs {
        for la in 0..l {
            let pa = probs[t.a * l + la];
            if pa == 0.0 {
                continue;
            }
            for lb in 0..l {
                let pb = probs[t.b * l + lb];
                if pb != 0.0 {
                    utility += pa * pb * t.utility[la * l + lb];
                    cost += pa * pb * t.cost[la * l + lb];
                }
            }
        }
    }
    Objective { utility, cost }
}

/// Direct evaluation of an integral labelling.
pub fn evaluate_labels(inst: &UtilityCostInstance, labels: &[usize]) -> Result<Objective> {
    evaluate(inst, &FractionalAssignment::integral(inst.labels(), labels)?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    colors: Vec<usize>,
    count: usize,
}

impl Coloring {
    pub fn new(colors: Vec<usize>) -> Self {
        let count = colors.iter().max().map_or(0, |&c| c + 1);
        Coloring { colors, count }
    }

    pub fn color(&self, v: usize) -> usize {
        self.colors[v]
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    /// Number of colours in use (ζ).
    pub fn count(&self) -> usize {
        self.count
    }

    pub fn is_proper(&self, g: &Graph) -> bool {
        self.colors.len() == g.n() && g.edges().all(|(a, b)| self.colors[a] != self.colors[b])
    }
}

/// First-fit colouring in increasing ID order; uses at most Δ+1 colours.
pub fn greedy_color(g: &Graph) -> Coloring {
    let mut colors = vec![usize::MAX; g.n()];
    let mut taken = vec![usize::MAX; g.max_degree() + 2];
    for v in 0..g.n() {
        for &w in g.neighbors(v) {
            if colors[w] != usize::MAX {
                taken[colors[w]] = v;
            }
        }
        colors[v] = (0..).find(|&c| taken[c] != v).unwrap();
    }
    Coloring::new(colors)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RoundingOptions {
    /// Re-evaluate the full objective after every colour class and compare it
    /// with the incrementally tracked value.
    pub verify_each_class: bool,
}

#[derive(Debug, Clone)]
pub struct RoundingOutcome {
    pub labels: Vec<usize>,
    pub fractional: Objective,
    pub rounded: Objective,
    /// Expected `u - c` after each colour class is fixed.
    pub class_objectives: Vec<f64>,
    pub colors: usize,
}

impl RoundingOutcome {
    /// Rounds charged for one pass over the colour classes when each class
    /// needs `host_radius` rounds to read fixed neighbour labels.
    pub fn charge(&self, ledger: &mut RoundLedger, label: &str, host_radius: u64) -> Result<()> {
        let rounds = (self.colors as u64).max(1) * host_radius;
        ledger.charge(label, host_radius, rounds)
    }
}

/// Rounds `lambda` to an integral labelling with `u(l) - c(l) >= u(lambda) - c(lambda)`.
///
/// Requires `u(lambda) - c(lambda) >= 0.1 u(lambda)` and a proper colouring
/// of the conflict graph.
pub fn round_labels(
    inst: &UtilityCostInstance,
    lambda: &FractionalAssignment,
    coloring: &Coloring,
    options: RoundingOptions,
) -> Result<RoundingOutcome> {
    check_shape(inst, lambda)?;
    if !coloring.is_proper(&inst.conflict) {
        return Err(Error::Contract("colouring is not proper on the conflict graph".into()));
    }
    let fractional = evaluate_flat(inst, &lambda.probs);
    let tol = fractional.slack();
    if fractional.value() < 0.1 * fractional.utility - tol {
        return Err(Error::Precondition { utility: fractional.utility, cost: fractional.cost });
    }

    let l = inst.labels;
    let mut probs = lambda.probs.clone();
    let mut classes: Vec<Vec<usize>> = vec![Vec::new(); coloring.count()];
    for v in 0..inst.n() {
        classes[coloring.color(v)].push(v);
    }

    let mut objective = fractional.value();
    let mut class_objectives = Vec::with_capacity(classes.len());
    let mut gains = vec![0.0; l];
    let mut choices = Vec::new();
    for class in &classes {
        choices.clear();
        let mut improvement = 0.0;
        for &v in class {
            for (k, g) in gains.iter_mut().enumerate() {
                *g = inst.node_utility[v * l + k] - inst.node_cost[v * l + k];
            }
            for &t in &inst.incident[v] {
                let term = &inst.pairs[t];
                let (other, mine_first) = if term.a == v { (term.b, true) } else { (term.a, false) };
                for lo in 0..l {
                    let po = probs[other * l + lo];
                    if po == 0.0 {
                        continue;
                    }
                    for (k, g) in gains.iter_mut().enumerate() {
                        let idx = if mine_first { k * l + lo } else { lo * l + k };
                        *g += po * (term.utility[idx] - term.cost[idx]);
                    }
                }
            }
            let expected: f64 = (0..l).map(|k| probs[v * l + k] * gains[k]).sum();
            let mut best = 0;
            for k in 1..l {
                if gains[k] > gains[best] {
                    best = k;
                }
            }
            improvement += gains[best] - expected;
            choices.push((v, best));
        }
        for &(v, best) in &choices {
            probs[v * l..(v + 1) * l].fill(0.0);
            probs[v * l + best] = 1.0;
        }
        let next = objective + improvement;
        if next < objective - tol {
            return Err(Error::claim("conditional-expectation-monotone", format!("{objective} -> {next}")));
        }
        objective = next;
        if options.verify_each_class {
            let full = evaluate_flat(inst, &probs).value();
            if (full - objective).abs() > tol.max(1e-9 * full.abs()) || full < fractional.value() - tol {
                return Err(Error::claim(
                    "conditional-expectation-monotone",
                    format!("tracked {objective}, evaluated {full}"),
                ));
            }
        }
        class_objectives.push(objective);
    }

    let labels: Vec<usize> =
        (0..inst.n()).map(|v| (0..l).find(|&k| probs[v * l + k] == 1.0).unwrap_or(0)).collect();
    let rounded = evaluate_flat(inst, &probs);
    if rounded.value() < 0.9 * fractional.value() - tol || rounded.value() < fractional.value() - tol {
        return Err(Error::claim(
            "rounding-contract",
            format!("u-c fell from {} to {}", fractional.value(), rounded.value()),
        ));
    }
    Ok(RoundingOutcome { labels, fractional, rounded, class_objectives, colors: coloring.count() })
}
