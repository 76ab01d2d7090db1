//! Constant-approximate maximum matching.
//!
//! The pipeline is: a doubling fractional matching, a constant-fraction
//! clustering weighted by node loads, restriction to edges whose endpoints
//! have small cluster degree, independent rounding inside each cluster, and
//! an integral finisher on the support of the rounded values.

use std::collections::BTreeMap;

use rand::Rng;
use serde::Serialize;

use crate::claims::Checks;
use crate::clustering::{base_log_n, cluster_constant, f14, verify_partition_with, ClusterParams, Partition};
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::ledger::RoundLedger;
use crate::rng::SeedStream;

/// Attempts per cluster before intra-cluster rounding gives up.
pub const INTRA_ATTEMPTS: usize = 200;

/// Edge values over `g.edges()` order.
#[derive(Debug, Clone, PartialEq)]
pub struct FractionalMatching {
    pub edges: Vec<(usize, usize)>,
    pub x: Vec<f64>,
    /// Doubling iterations performed.
    pub iterations: u32,
}

impl FractionalMatching {
    pub fn value(&self) -> f64 {
        self.x.iter().sum()
    }

    pub fn loads(&self, n: usize) -> Vec<f64> {
        let mut y = vec![0.0; n];
        for (&(a, b), &x) in self.edges.iter().zip(&self.x) {
            y[a] += x;
            y[b] += x;
        }
        y
    }

    pub fn is_valid(&self, n: usize) -> bool {
        let tol = 1.0 + 1e-9;
        self.x.iter().all(|&x| (0.0..=tol).contains(&x)) && self.loads(n).iter().all(|&y| y <= tol)
    }

    /// Nodes with load above one half. After the doubling loop they cover
    /// every edge, so their number bounds the maximum matching from above.
    pub fn saturated(&self, n: usize) -> Vec<usize> {
        self.loads(n).iter().enumerate().filter(|(_, &y)| y > 0.5 + 1e-9).map(|(v, _)| v).collect()
    }
}

/// Starts every edge at `1/Δ` and runs `ceil(log2 Δ)` synchronised rounds in
/// which an edge doubles iff both endpoint loads are at most one half.
pub fn fractional_matching(g: &Graph) -> FractionalMatching {
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let delta = g.max_degree();
    if edges.is_empty() {
        return FractionalMatching { edges, x: Vec::new(), iterations: 0 };
    }
    let iterations = (delta as u64).next_power_of_two().trailing_zeros();
    // Values are kept as integer multiples of 1/Δ so the load tests are exact.
    let mut units = vec![1u64; edges.len()];
    let mut load = vec![0u64; g.n()];
    for _ in 0..iterations {
        load.iter_mut().for_each(|l| *l = 0);
        for (&(a, b), &u) in edges.iter().zip(&units) {
            load[a] += u;
            load[b] += u;
        }
        for (e, &(a, b)) in edges.iter().enumerate() {
            if 2 * load[a] <= delta as u64 && 2 * load[b] <= delta as u64 {
                units[e] *= 2;
            }
        }
    }
    let x = units.iter().map(|&u| u as f64 / delta as f64).collect();
    FractionalMatching { edges, x, iterations }
}

/// Good nodes, good edges and their assignment to clusters.
#[derive(Debug, Clone, PartialEq)]
pub struct GoodEdges {
    pub good_nodes: Vec<bool>,
    /// Per edge of `g.edges()`.
    pub good: Vec<bool>,
    /// Cluster index to the good edges whose larger-ID endpoint lies in it.
    pub by_cluster: BTreeMap<usize, Vec<usize>>,
}

pub fn good_edges(g: &Graph, p: &Partition, f: f64) -> GoodEdges {
    let good_nodes: Vec<bool> = (0..g.n()).map(|v| p.cluster_degree(g, v) as f64 <= f).collect();
    let mut good = Vec::with_capacity(g.m());
    let mut by_cluster: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (e, (a, b)) in g.edges().enumerate() {
        let ok = good_nodes[a] && good_nodes[b];
        good.push(ok);
        if ok {
            by_cluster.entry(p.cluster_of(a.max(b))).or_default().push(e);
        }
    }
    GoodEdges { good_nodes, good, by_cluster }
}

/// Thresholds of the intra-cluster rounding for a given `f` and `log2 n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IntraThresholds {
    pub f: f64,
    pub log_n: f64,
}

impl IntraThresholds {
    /// Values at or above this are kept as `x/5`.
    pub fn keep(&self) -> f64 {
        1.0 / (10000.0 * self.f * self.log_n)
    }

    /// The single non-zero value a small edge may take.
    pub fn small_value(&self) -> f64 {
        1.0 / (50000.0 * self.f * self.log_n)
    }

    pub fn slack(&self) -> f64 {
        1.0 / (1000.0 * self.f)
    }

    /// `x/10 - 1/(1000f) <= s <= x/2 + 1/(1000f)` for the sums at one node.
    pub fn window(&self, x_sum: f64) -> (f64, f64) {
        (x_sum / 10.0 - self.slack(), x_sum / 2.0 + self.slack())
    }
}

fn within(v: f64, (lo, hi): (f64, f64)) -> bool {
    let tol = 1e-9 * (v.abs() + hi.abs() + 1e-300);
    v >= lo - tol && v <= hi + tol
}

/// Node-wise sums of `x` and `x_intra` over one cluster's edges.
fn cluster_sums(edges: &[(usize, usize)], x: &[f64], xi: &[f64]) -> BTreeMap<usize, (f64, f64)> {
    let mut sums: BTreeMap<usize, (f64, f64)> = BTreeMap::new();
    for (k, &(a, b)) in edges.iter().enumerate() {
        for v in [a, b] {
            let s = sums.entry(v).or_insert((0.0, 0.0));
            s.0 += x[k];
            s.1 += xi[k];
        }
    }
    sums
}

/// Rounds the values of one cluster. `edges` and `x` are the cluster's edges
/// (endpoint indices) and their fractional values; the result depends on
/// nothing else besides the seed stream label.
pub fn round_cluster(
    edges: &[(usize, usize)],
    x: &[f64],
    th: IntraThresholds,
    stream: &SeedStream,
    center: NodeId,
) -> Result<(Vec<f64>, usize)> {
    let keep = th.keep();
    let scale = 10000.0 * th.f * th.log_n;
    for attempt in 0..INTRA_ATTEMPTS {
        let mut rng = stream.rng(&format!("matching/intra/{center}/{attempt}"));
        let xi: Vec<f64> = x
            .iter()
            .map(|&xe| {
                if xe >= keep {
                    xe / 5.0
                } else if rng.random::<f64>() < scale * xe {
                    th.small_value()
                } else {
                    0.0
                }
            })
            .collect();
        if cluster_sums(edges, x, &xi).values().all(|&(s, si)| within(si, th.window(s))) {
            return Ok((xi, attempt + 1));
        }
    }
    Err(Error::RetryBudget { center, attempts: INTRA_ATTEMPTS })
}

#[derive(Debug, Clone, PartialEq)]
pub struct IntraOutcome {
    /// Per edge of `g.edges()`; zero outside `E^good`.
    pub x: Vec<f64>,
    pub max_attempts: usize,
}

pub fn intra_round_matching(
    g: &Graph,
    p: &Partition,
    frac: &FractionalMatching,
    good: &GoodEdges,
    th: IntraThresholds,
    stream: &SeedStream,
    checks: &mut Checks,
) -> Result<IntraOutcome> {
    let mut xi = vec![0.0; frac.edges.len()];
    let mut max_attempts = 0;
    for (&c, list) in &good.by_cluster {
        let edges: Vec<(usize, usize)> = list.iter().map(|&e| frac.edges[e]).collect();
        let x: Vec<f64> = list.iter().map(|&e| frac.x[e]).collect();
        let center = g.id(p.centers()[c]);
        let (vals, attempts) = round_cluster(&edges, &x, th, stream, center)?;
        max_attempts = max_attempts.max(attempts);
        for (v, (s, si)) in cluster_sums(&edges, &x, &vals) {
            checks.holds("matching-intra-window", within(si, th.window(s)), || {
                format!("node {} in cluster of {center}: {si} vs window of {s}", g.id(v))
            })?;
        }
        for (&e, v) in list.iter().zip(vals) {
            xi[e] = v;
        }
    }
    Ok(IntraOutcome { x: xi, max_attempts })
}

/// Greedy maximal matching over edges in increasing `(a, b)` index order
/// among the edges with `keep[e]`, extending `start`.
fn greedy_extend(n: usize, edges: &[(usize, usize)], keep: impl Fn(usize) -> bool, start: &[usize]) -> Vec<usize> {
    let mut used = vec![false; n];
    let mut out = start.to_vec();
    for &e in start {
        used[edges[e].0] = true;
        used[edges[e].1] = true;
    }
    for (e, &(a, b)) in edges.iter().enumerate() {
        if keep(e) && !used[a] && !used[b] {
            used[a] = true;
            used[b] = true;
            out.push(e);
        }
    }
    out.sort_unstable();
    out
}

/// Reference finisher: greedy maximal matching on the support.
pub fn finish_greedy(n: usize, edges: &[(usize, usize)], x: &[f64]) -> Vec<usize> {
    greedy_extend(n, edges, |e| x[e] > 0.0, &[])
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DoublingStep {
    pub level: i32,
    pub before: f64,
    pub after: f64,
    /// `(before - after) / before`.
    pub relative_loss: f64,
}

/// Alternative finisher: rounds values down to powers of two, then from the
/// smallest level upwards doubles or drops each edge in ID order while
/// keeping loads at most one, and finally completes greedily on the support.
pub fn finish_doubling(n: usize, edges: &[(usize, usize)], x: &[f64]) -> (Vec<usize>, Vec<DoublingStep>) {
    let mut level: Vec<Option<i32>> = x
        .iter()
        .map(|&v| (v > 0.0).then(|| v.log2().floor() as i32).map(|l| l.min(0)))
        .collect();
    let value = |l: &Option<i32>| l.map_or(0.0, |l| (l as f64).exp2());
    let mut load = vec![0.0; n];
    for (e, &(a, b)) in edges.iter().enumerate() {
        load[a] += value(&level[e]);
        load[b] += value(&level[e]);
    }
    let mut steps = Vec::new();
    let lowest = level.iter().flatten().copied().min();
    if let Some(lowest) = lowest {
        for l in lowest..0 {
            let before: f64 = level.iter().map(value).sum();
            let unit = (l as f64).exp2();
            for (e, &(a, b)) in edges.iter().enumerate() {
                if level[e] != Some(l) {
                    continue;
                }
                if load[a] + unit <= 1.0 && load[b] + unit <= 1.0 {
                    level[e] = Some(l + 1);
                    load[a] += unit;
                    load[b] += unit;
                } else {
                    level[e] = None;
                    load[a] -= unit;
                    load[b] -= unit;
                }
            }
            let after: f64 = level.iter().map(value).sum();
            let relative_loss = if before > 0.0 { (before - after) / before } else { 0.0 };
            steps.push(DoublingStep { level: l, before, after, relative_loss });
        }
    }
    let rounded: Vec<usize> = (0..edges.len()).filter(|&e| level[e] == Some(0)).collect();
    (greedy_extend(n, edges, |e| x[e] > 0.0, &rounded), steps)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum Finisher {
    #[default]
    Greedy,
    Doubling,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct MatchingConfig {
    /// Defaults to `ceil(log2(N)^{1/3})`.
    pub alpha: Option<u64>,
    /// Defaults to the cluster-degree bound of the constant-fraction clustering.
    pub f_override: Option<f64>,
    pub seed: u64,
    pub finisher: Finisher,
    /// Exact maximum matching size, when known, for the absolute constants.
    pub m_star: Option<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct MatchingOutcome {
    #[serde(skip)]
    pub matching: Vec<(NodeId, NodeId)>,
    /// Size of a vertex cover certified by the fractional stage.
    pub m_star_bound: usize,
    pub frac_value: f64,
    pub good_value: f64,
    pub intra_value: f64,
    pub matching_size: usize,
    pub rounds: u64,
    pub alpha: u64,
    pub f: f64,
    pub max_intra_attempts: usize,
    pub doubling_steps: Vec<DoublingStep>,
    #[serde(skip)]
    pub checks: Checks,
    #[serde(skip)]
    pub ledger: RoundLedger,
}

/// `alpha = ceil(log2(N)^{1/3})` for `n` nodes.
pub fn default_alpha(n: usize) -> u64 {
    ((base_log_n(n) as f64).cbrt().ceil() as u64).max(1)
}

pub fn approx_matching(g: &Graph, cfg: &MatchingConfig) -> Result<MatchingOutcome> {
    let mut checks = Checks::new(true);
    let mut ledger = RoundLedger::new();
    let h = g.induced_by_indices(&g.non_isolated());
    let n = h.n();
    if h.m() == 0 {
        return Ok(MatchingOutcome {
            matching: Vec::new(),
            m_star_bound: 0,
            frac_value: 0.0,
            good_value: 0.0,
            intra_value: 0.0,
            matching_size: 0,
            rounds: 0,
            alpha: cfg.alpha.unwrap_or(1),
            f: cfg.f_override.unwrap_or(0.0),
            max_intra_attempts: 0,
            doubling_steps: Vec::new(),
            checks,
            ledger,
        });
    }

    let frac = fractional_matching(&h);
    let it = frac.iterations as u64;
    ledger.charge("matching/fractional", it.min(1), it)?;
    checks.holds("matching-frac-valid", frac.is_valid(n), || "load above one".into())?;
    let min_x = frac.x.iter().copied().fold(f64::INFINITY, f64::min);
    checks.leq_exact("matching-frac-granularity", 1.0 / n as f64, min_x, || "smallest edge value".into())?;
    let cover = frac.saturated(n);
    let covers = frac.edges.iter().all(|&(a, b)| cover.binary_search(&a).is_ok() || cover.binary_search(&b).is_ok());
    checks.holds("matching-frac-cover", covers, || "saturated nodes miss an edge".into())?;
    let frac_value = frac.value();
    checks.leq("matching-frac-vs-cover", cover.len() as f64 / 4.0, frac_value, || "Σx against |T|/4".into())?;

    let alpha = cfg.alpha.unwrap_or_else(|| default_alpha(n));
    let y = frac.loads(n);
    let clustering = cluster_constant(&h, alpha, &y)?;
    let params: ClusterParams = clustering.cluster.params;
    let f = cfg.f_override.unwrap_or_else(|| f14(&params));
    checks.absorb(&clustering.cluster.checks);
    ledger.absorb(clustering.cluster.ledger.clone());
    let partition = &clustering.cluster.partition;

    let good = good_edges(&h, partition, f);
    ledger.charge("matching/good-edges", 1, 1)?;
    let good_value: f64 = (0..frac.edges.len()).filter(|&e| good.good[e]).map(|e| frac.x[e]).sum();
    checks.leq("matching-good-fraction", 0.8 * frac_value, good_value, || "Σ_good x against 0.8 Σx".into())?;

    let th = IntraThresholds { f, log_n: (n as f64).log2() };
    let stream = SeedStream::new(cfg.seed);
    let intra = intra_round_matching(&h, partition, &frac, &good, th, &stream, &mut checks)?;
    let radius = verify_partition_with(&h, partition, f)?.max_radius as u64;
    ledger.charge("matching/intra", radius + 1, 2 * (radius + 1))?;
    let intra_value: f64 = intra.x.iter().sum();
    let intra_frac = FractionalMatching { edges: frac.edges.clone(), x: intra.x.clone(), iterations: 0 };
    checks.holds("matching-intra-valid", intra_frac.is_valid(n), || "x_intra load above one".into())?;
    let good_count = good.good_nodes.iter().filter(|&&b| b).count() as f64;
    checks.leq("matching-intra-aggregate", good_value / 10.0 - good_count / (1000.0 * f), intra_value, || {
        "aggregated intra lower bound".into()
    })?;
    let support_degree = {
        let mut d = vec![0usize; n];
        for (e, &(a, b)) in frac.edges.iter().enumerate() {
            if intra.x[e] > 0.0 {
                d[a] += 1;
                d[b] += 1;
            }
        }
        d.into_iter().max().unwrap_or(0)
    };
    checks.leq_exact("matching-support-degree", support_degree as f64, 50000.0 * f * th.log_n, || {
        "max degree of the support".into()
    })?;

    let (chosen, doubling_steps) = match cfg.finisher {
        Finisher::Greedy => (finish_greedy(n, &frac.edges, &intra.x), Vec::new()),
        Finisher::Doubling => finish_doubling(n, &frac.edges, &intra.x),
    };
    let diameter = h.diameter() as u64;
    ledger.charge("global/finish-matching", diameter, diameter)?;
    let matching: Vec<(NodeId, NodeId)> = chosen
        .iter()
        .map(|&e| {
            let (a, b) = frac.edges[e];
            (h.id(a), h.id(b))
        })
        .collect();
    checks.holds("matching-is-matching", is_matching(&h, &matching), || "two edges share an endpoint".into())?;
    let size = matching.len();
    checks.leq("matching-finisher", 2.0 / 9.0 * intra_value, size as f64, || "|M| against (2/9) Σ x_intra".into())?;

    if let Some(m_star) = cfg.m_star {
        let m = m_star as f64;
        checks.leq("matching-frac-vs-opt", m / 5.0, frac_value, || "Σx against |M*|/5".into())?;
        checks.leq("matching-intra-vs-opt", m / 40000.0, intra_value, || "Σ x_intra against |M*|/40000".into())?;
        checks.leq("matching-size-vs-opt", m / 100000.0, size as f64, || "|M| against |M*|/100000".into())?;
    }

    Ok(MatchingOutcome {
        matching,
        m_star_bound: cover.len(),
        frac_value,
        good_value,
        intra_value,
        matching_size: size,
        rounds: ledger.total(),
        alpha,
        f,
        max_intra_attempts: intra.max_attempts,
        doubling_steps,
        checks,
        ledger,
    })
}

/// True iff `m` consists of edges of `g` with pairwise distinct endpoints.
pub fn is_matching(g: &Graph, m: &[(NodeId, NodeId)]) -> bool {
    let mut used = std::collections::HashSet::new();
    m.iter().all(|&(a, b)| {
        matches!((g.index_of(a), g.index_of(b)), (Some(x), Some(y)) if g.has_edge(x, y)) && used.insert(a) && used.insert(b)
    })
}
