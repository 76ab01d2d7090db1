//! Low-diameter clustering by exponentially shrinking active sets.
//!
//! All constructions share one driver: compute `V_0 = V ⊇ V_1 ⊇ ... ⊇ V_{10α}`,
//! give node `v` the delay `50α - 5 i_v` where `i_v` is the last phase in
//! which it is active, and let every node join the centre minimising
//! `(del(v) + d(v, u), ID(v))`. The constructions differ only in how
//! `V_{i+1}` is chosen from `V_i`.

mod constant;
mod mpx;
mod partition;
mod pipelined;

pub use constant::{cluster_constant, cluster_constant_with, ConstantOutcome};
pub use mpx::{mpx_randomized, MPX_RETRIES};
pub use partition::{
    delays_to_partition, path_replay_violation, verify_partition_with, Partition, PartitionJson, PartitionReport,
};
pub use pipelined::{cluster_all, cluster_all_with};

use serde::Serialize;

use crate::claims::Checks;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::ledger::RoundLedger;

/// `log2 N` and the cluster-radius parameter `alpha`.
///
/// `N` is the smallest power of two with `N >= n^2` and `N^2 >= 50 log2(N) n^2`
/// (and `log2 N >= 4`), raised until `alpha` divides `log2 N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ClusterParams {
    pub n: usize,
    pub alpha: u64,
    pub log_n: u64,
}

/// Smallest admissible `log2 N` before rounding up to a multiple of `alpha`.
pub fn base_log_n(n: usize) -> u64 {
    let n2 = (n.max(1) as f64).powi(2);
    (4u64..)
        .find(|&l| {
            let l_f = l as f64;
            l_f.exp2() >= n2 && (2.0 * l_f).exp2() >= 50.0 * l_f * n2
        })
        .unwrap()
}

impl ClusterParams {
    pub fn new(n: usize, alpha: u64) -> Result<Self> {
        let l0 = base_log_n(n);
        if alpha == 0 || alpha > l0 {
            return Err(Error::domain(format!("alpha = {alpha} must lie in [1, {l0}] for n = {n}")));
        }
        Ok(ClusterParams { n, alpha, log_n: l0.div_ceil(alpha) * alpha })
    }

    /// Number of phases `10 alpha`.
    pub fn phases(&self) -> usize {
        10 * self.alpha as usize
    }

    /// Steps per phase `log2(N) / alpha`.
    pub fn steps(&self) -> usize {
        (self.log_n / self.alpha) as usize
    }

    /// `log2 log2 N`.
    pub fn log_log_n(&self) -> f64 {
        (self.log_n as f64).log2()
    }

    /// Radius cap of the S-sets, `100 alpha`.
    pub fn s_radius(&self) -> usize {
        100 * self.alpha as usize
    }

    /// Delay of a node whose last active phase is `level`.
    pub fn delay(&self, level: usize) -> u64 {
        50 * self.alpha - 5 * level as u64
    }
}

/// Cluster-degree bound of the all-nodes-good construction:
/// `10 alpha (2000 log2 N)^{log2(N)/alpha}`.
pub fn f13(params: &ClusterParams) -> f64 {
    10.0 * params.alpha as f64 * (2000.0 * params.log_n as f64).powi(params.steps() as i32)
}

/// Cluster-degree bound of the constant-fraction construction:
/// `10 alpha ceil(1000 log2 log2 N)^{log2(N)/alpha}`.
pub fn f14(params: &ClusterParams) -> f64 {
    10.0 * params.alpha as f64 * (1000.0 * params.log_log_n()).ceil().powi(params.steps() as i32)
}

/// `V_active ∩ B(u, min(d(u, V_active) + 2, 100 alpha))`, sorted by ID.
/// Empty when no active node lies within distance `100 alpha`.
pub fn compute_s(g: &Graph, u: usize, active: &[bool], alpha: u64) -> Vec<usize> {
    let mut scratch = BallScratch::new(g.n());
    scratch.s_set(g, u, active, 100 * alpha as usize)
}

struct BallScratch {
    dist: Vec<usize>,
    queue: Vec<usize>,
}

impl BallScratch {
    fn new(n: usize) -> Self {
        BallScratch { dist: vec![usize::MAX; n], queue: Vec::new() }
    }

    fn s_set(&mut self, g: &Graph, u: usize, active: &[bool], cap: usize) -> Vec<usize> {
        self.queue.clear();
        self.queue.push(u);
        self.dist[u] = 0;
        let mut limit = cap;
        let mut head = 0;
        let mut found = Vec::new();
        while head < self.queue.len() {
            let v = self.queue[head];
            head += 1;
            let d = self.dist[v];
            if d > limit {
                break;
            }
            if active[v] {
                if found.is_empty() {
                    limit = limit.min(d + 2);
                }
                found.push(v);
            }
            if d == limit {
                continue;
            }
            for &w in g.neighbors(v) {
                if self.dist[w] == usize::MAX {
                    self.dist[w] = d + 1;
                    self.queue.push(w);
                }
            }
        }
        for &v in &self.queue {
            self.dist[v] = usize::MAX;
        }
        found.sort_unstable();
        found
    }
}

fn s_sets(g: &Graph, active: &[bool], alpha: u64) -> Vec<Vec<usize>> {
    if !active.iter().any(|&a| a) {
        return vec![Vec::new(); g.n()];
    }
    let mut scratch = BallScratch::new(g.n());
    (0..g.n()).map(|u| scratch.s_set(g, u, active, 100 * alpha as usize)).collect()
}

fn count_in(set: &[usize], mask: &[bool]) -> usize {
    set.iter().filter(|&&v| mask[v]).count()
}

/// Per-phase active-set sizes and the data behind the cluster-degree bound.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PhaseTrace {
    /// `|V_i|` for `i = 0..=10 alpha`.
    pub active_sizes: Vec<usize>,
    /// `R_u = max |S_i(u)|` over phases with `S_i(u) ∩ V_{i+1} = ∅`.
    #[serde(skip)]
    pub r: Vec<usize>,
    /// Last phase in which each node is active.
    #[serde(skip)]
    pub levels: Vec<usize>,
}

impl PhaseTrace {
    pub fn terminal_empty(&self) -> bool {
        self.active_sizes.last() == Some(&0)
    }
}

/// Everything a construction sees when choosing `V_{i+1}`.
pub(crate) struct PhaseView<'a> {
    pub i: usize,
    pub active: &'a [bool],
    pub s: &'a [Vec<usize>],
}

#[derive(Debug, Clone)]
pub struct ClusterOutcome {
    pub params: ClusterParams,
    pub partition: Partition,
    pub trace: PhaseTrace,
    pub checks: Checks,
    pub ledger: RoundLedger,
}

/// Runs the phase driver. `next` returns `V_{i+1}` as a mask; it must be a
/// subset of `V_i`.
pub(crate) fn run_phases(
    g: &Graph,
    params: &ClusterParams,
    label: &str,
    ledger: &mut RoundLedger,
    mut next: impl FnMut(&PhaseView<'_>, &mut RoundLedger) -> Result<Vec<bool>>,
) -> Result<(Partition, PhaseTrace)> {
    let n = g.n();
    let alpha = params.alpha;
    let mut active = vec![true; n];
    let mut levels = vec![0usize; n];
    let mut r = vec![0usize; n];
    let mut active_sizes = vec![n];
    for i in 0..params.phases() {
        ledger.charge(format!("{label}/s-ball"), 100 * alpha, 100 * alpha)?;
        let s = s_sets(g, &active, alpha);
        let chosen = next(&PhaseView { i, active: &active, s: &s }, ledger)?;
        if chosen.len() != n || chosen.iter().zip(&active).any(|(&c, &a)| c && !a) {
            return Err(Error::Contract(format!("phase {i} returned a set outside the active set")));
        }
        for u in 0..n {
            if chosen[u] {
                levels[u] = i + 1;
            }
            if count_in(&s[u], &chosen) == 0 {
                r[u] = r[u].max(s[u].len());
            }
        }
        active = chosen;
        active_sizes.push(active.iter().filter(|&&a| a).count());
    }
    let delays: Vec<u64> = levels.iter().map(|&l| params.delay(l)).collect();
    let partition = delays_to_partition(g, &delays, alpha)?;
    ledger.charge(format!("{label}/token-spread"), 50 * alpha + 2, 50 * alpha + 2)?;
    Ok((partition, PhaseTrace { active_sizes, r, levels }))
}

/// Structural checks common to every construction: the last active set is
/// empty, clusters have strong diameter at most `100 alpha`, shortest paths
/// to the centre stay inside the cluster, and `deg_C(u) <= 10 alpha R_u`.
pub(crate) fn check_structure(
    g: &Graph,
    params: &ClusterParams,
    partition: &Partition,
    trace: &PhaseTrace,
    checks: &mut Checks,
) -> Result<()> {
    checks.holds("alg1-terminal-empty", trace.terminal_empty(), || {
        format!("|V_10α| = {}", trace.active_sizes.last().unwrap())
    })?;
    let report = verify_partition_with(g, partition, f64::INFINITY)?;
    checks.leq_exact("cluster-diameter", report.max_diameter as f64, 100.0 * params.alpha as f64, || {
        "strong diameter".into()
    })?;
    checks.leq_exact("cluster-radius", report.max_radius as f64, 50.0 * params.alpha as f64, || {
        "radius from centre".into()
    })?;
    let violation = path_replay_violation(g, partition);
    checks.holds("cluster-path-replay", violation.is_none(), || format!("node {}", violation.unwrap()))?;
    if trace.terminal_empty() {
        for u in 0..g.n() {
            let deg = partition.cluster_degree(g, u) as f64;
            let bound = 10.0 * params.alpha as f64 * trace.r[u] as f64;
            checks.leq_exact("cluster-degree-vs-r", deg, bound, || format!("node {}", g.id(u)))?;
        }
    }
    Ok(())
}

/// Strict checking with the default thresholds, or a stress configuration with
/// a smaller degree base and group size that exercises the hitting-set path
/// on small graphs. Claims whose proofs depend on the real thresholds are
/// only recorded when `strict` is false.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClusterOptions {
    pub strict: bool,
    pub degree_base: Option<f64>,
    pub group_size: Option<usize>,
}

impl Default for ClusterOptions {
    fn default() -> Self {
        ClusterOptions { strict: true, degree_base: None, group_size: None }
    }
}

impl ClusterOptions {
    pub fn stress(degree_base: f64, group_size: usize) -> Self {
        ClusterOptions { strict: false, degree_base: Some(degree_base), group_size: Some(group_size) }
    }
}

/// The `deg` smallest-ID members of `s` inside `mask`, or `None` if fewer exist.
fn wire(s: &[usize], mask: &[bool], deg: usize) -> Option<Vec<usize>> {
    let picked: Vec<usize> = s.iter().copied().filter(|&v| mask[v]).take(deg).collect();
    (picked.len() == deg).then_some(picked)
}
