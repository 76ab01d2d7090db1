//! Maximal independent set by derandomized Luby iterations.
//!
//! Each iteration orients the remaining graph `H` by `(deg, ID)`, picks for
//! every good vertex a light set of in-neighbours, computes a fractional
//! marking inside each cluster of a fixed low-diameter partition, and rounds
//! it on `H^2` against the pessimistic estimator of removed edges.

use std::collections::BTreeMap;

use rand::Rng;
use serde::Serialize;

use crate::claims::Checks;
use crate::clustering::{base_log_n, cluster_all, f13, verify_partition_with, Partition};
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId, Orientation};
use crate::ledger::RoundLedger;
use crate::rng::SeedStream;
use crate::rounding::{evaluate, greedy_color, round_labels, FractionalAssignment, RoundingOptions, UtilityCostInstance};

/// Attempts per cluster before intra-cluster rounding gives up.
pub const INTRA_ATTEMPTS: usize = 200;

/// True iff no edge lies inside `is` and every other node has a neighbour in it.
pub fn verify_mis(g: &Graph, is: &[NodeId]) -> bool {
    let mut member = vec![false; g.n()];
    for &id in is {
        match g.index_of(id) {
            Some(v) => member[v] = true,
            None => return false,
        }
    }
    (0..g.n()).all(|v| {
        if member[v] {
            g.neighbors(v).iter().all(|&w| !member[w])
        } else {
            g.neighbors(v).iter().any(|&w| member[w])
        }
    })
}

/// Vertices with at least `deg/3` incoming edges.
pub fn good_vertices(h: &Graph, o: &Orientation) -> Vec<usize> {
    (0..h.n()).filter(|&v| h.degree(v) > 0 && 3 * o.incoming(v).len() >= h.degree(v)).collect()
}

/// Shortest prefix of `IN(v)` in increasing ID whose `1/deg` sum reaches `1/3`.
pub fn select_instar(h: &Graph, o: &Orientation, v: usize) -> Result<Vec<usize>> {
    if 3 * o.incoming(v).len() < h.degree(v) || h.degree(v) == 0 {
        return Err(Error::domain(format!("node {} is not a good vertex", h.id(v))));
    }
    let mut out = Vec::new();
    let mut sum = 0.0;
    for &u in o.incoming(v) {
        out.push(u);
        sum += 1.0 / h.degree(u) as f64;
        if 3.0 * sum >= 1.0 - 1e-12 {
            break;
        }
    }
    Ok(out)
}

/// Per-node values and the thresholds that produced them.
#[derive(Debug, Clone, PartialEq)]
pub struct IntraMarking {
    pub x: Vec<f64>,
    pub max_attempts: usize,
}

/// Local structure of one iteration.
#[derive(Debug, Clone)]
pub struct LubyInstance {
    pub orientation: Orientation,
    pub good: Vec<usize>,
    /// `IN*(v)` for each good vertex, aligned with `good`.
    pub instar: Vec<Vec<usize>>,
}

impl LubyInstance {
    pub fn new(h: &Graph) -> Result<Self> {
        let orientation = h.orient();
        let good = good_vertices(h, &orientation);
        let instar = good.iter().map(|&v| select_instar(h, &orientation, v)).collect::<Result<_>>()?;
        Ok(LubyInstance { orientation, good, instar })
    }
}

/// `1/(10 deg)` for low-degree nodes, otherwise a draw from
/// `{0, 1/(10000 f log n)}` with the same mean, resampled per cluster until
/// every per-cluster window holds.
pub fn intra_round_mis(
    h: &Graph,
    p: &Partition,
    inst: &LubyInstance,
    f: f64,
    log_n: f64,
    stream: &SeedStream,
    label: &str,
) -> Result<IntraMarking> {
    let n = h.n();
    let high = 1000.0 * f * log_n;
    let unit = 1.0 / (10000.0 * f * log_n);
    let slack = 1.0 / (100.0 * f);
    let inv = |u: usize| 1.0 / h.degree(u) as f64;

    // Constraint groups per cluster: members and whether a lower bound applies.
    let mut groups: BTreeMap<usize, Vec<(Vec<usize>, bool)>> = BTreeMap::new();
    let mut split = |set: &[usize], lower: bool| {
        let mut by: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &u in set {
            by.entry(p.cluster_of(u)).or_default().push(u);
        }
        for (c, members) in by {
            groups.entry(c).or_default().push((members, lower));
        }
    };
    for star in &inst.instar {
        split(star, true);
    }
    for u in 0..n {
        split(inst.orientation.out(u), false);
    }

    let mut x: Vec<f64> = (0..n).map(|u| if (h.degree(u) as f64) <= high { 1.0 / (10.0 * h.degree(u) as f64) } else { 0.0 }).collect();
    let mut max_attempts = 0;
    for (c, members) in p.clusters().iter().enumerate() {
        let random: Vec<usize> = members.iter().copied().filter(|&u| h.degree(u) as f64 > high).collect();
        if random.is_empty() {
            continue;
        }
        let center = h.id(p.centers()[c]);
        let cons = groups.get(&c).map(Vec::as_slice).unwrap_or(&[]);
        let mut ok = false;
        for attempt in 0..INTRA_ATTEMPTS {
            let mut rng = stream.rng(&format!("{label}/intra/{center}/{attempt}"));
            for &u in &random {
                x[u] = if rng.random::<f64>() < high / h.degree(u) as f64 { unit } else { 0.0 };
            }
            ok = cons.iter().all(|(set, lower)| {
                let s: f64 = set.iter().map(|&u| inv(u)).sum();
                let sx: f64 = set.iter().map(|&u| x[u]).sum();
                sx <= s / 5.0 + slack && (!lower || sx >= s / 20.0 - slack)
            });
            if ok {
                max_attempts = max_attempts.max(attempt + 1);
                break;
            }
        }
        if !ok {
            return Err(Error::RetryBudget { center, attempts: INTRA_ATTEMPTS });
        }
    }
    Ok(IntraMarking { x, max_attempts })
}

/// Utility `Σ_v (deg v / 2) Σ_{IN*} x_u` and cost
/// `Σ_v (deg v / 2) (Σ_{u != u' in IN*} x_u x_u' + Σ_{u in IN*} Σ_{w in OUT(u)} x_u x_w)`
/// over the decision graph `H^2` with labels `{unmarked, marked}`.
pub fn build_mis_instance(h: &Graph, inst: &LubyInstance) -> Result<UtilityCostInstance> {
    let mut b = UtilityCostInstance::builder(h.square(), 2);
    for (&v, star) in inst.good.iter().zip(&inst.instar) {
        let w = h.degree(v) as f64 / 2.0;
        for (k, &u) in star.iter().enumerate() {
            b.add_node(u, 1, w, 0.0)?;
            // Ordered pairs, so each unordered pair carries twice the weight.
            for &u2 in &star[k + 1..] {
                b.add_pair(u, u2, 1, 1, 0.0, 2.0 * w)?;
            }
            for &o in inst.orientation.out(u) {
                b.add_pair(u, o, 1, 1, 0.0, w)?;
            }
        }
    }
    b.build()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IterationStats {
    pub nodes: usize,
    pub edges: usize,
    pub removed_edges: usize,
    pub added: usize,
    pub utility_fractional: f64,
    pub cost_fractional: f64,
    pub z_fractional: f64,
    pub z_rounded: f64,
    /// Smallest and largest `Σ_{IN*(v)} x` over good `v`, largest `Σ_{OUT(u)} x`.
    pub min_instar_mass: f64,
    pub max_instar_mass: f64,
    pub max_out_mass: f64,
    pub intra_attempts: usize,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct MisConfig {
    /// Defaults to `ceil(sqrt(log2 N))`.
    pub alpha: Option<u64>,
    /// Defaults to the cluster-degree bound of the all-nodes clustering.
    pub f_override: Option<f64>,
    pub seed: u64,
    /// Count claim violations instead of failing on the first one.
    pub lenient: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct MisOutcome {
    pub is: Vec<NodeId>,
    pub is_size: usize,
    pub iterations: usize,
    pub per_iteration_removed_fraction: Vec<f64>,
    pub stats: Vec<IterationStats>,
    pub rounds: u64,
    pub alpha: u64,
    pub f: f64,
    #[serde(skip)]
    pub checks: Checks,
    #[serde(skip)]
    pub ledger: RoundLedger,
}

/// `ceil(sqrt(log2 N))` for `n` nodes.
pub fn default_alpha(n: usize) -> u64 {
    ((base_log_n(n) as f64).sqrt().ceil() as u64).max(1)
}

/// Upper bound on iterations implied by removing a `1/24000` fraction of
/// the edges each time.
pub fn iteration_bound(m: usize) -> usize {
    (24000.0 * ((m + 1) as f64).ln()).ceil() as usize + 1
}

pub fn mis(g: &Graph, cfg: &MisConfig) -> Result<MisOutcome> {
    let mut checks = Checks::new(!cfg.lenient);
    let mut ledger = RoundLedger::new();
    let alpha = cfg.alpha.unwrap_or_else(|| default_alpha(g.n()));
    let clustering = cluster_all(g, alpha)?;
    let f = cfg.f_override.unwrap_or_else(|| f13(&clustering.params));
    checks.absorb(&clustering.checks);
    ledger.absorb(clustering.ledger.clone());
    let radius = verify_partition_with(g, &clustering.partition, f)?.max_radius as u64;
    let log_n = (g.n().max(2) as f64).log2();
    let stream = SeedStream::new(cfg.seed);

    let mut removed = vec![false; g.n()];
    let mut in_is = vec![false; g.n()];
    let mut stats = Vec::new();
    loop {
        let alive: Vec<usize> = (0..g.n()).filter(|&v| !removed[v]).collect();
        let rest = g.induced_by_indices(&alive);
        let h_local = rest.non_isolated();
        if h_local.is_empty() {
            break;
        }
        let t = stats.len();
        let to_g: Vec<usize> = h_local.iter().map(|&i| alive[i]).collect();
        let h = g.induced_by_indices(&to_g);
        let part = clustering.partition.restrict(g, &h)?;
        let max_cd = part.cluster_degrees(&h).into_iter().max().unwrap_or(0);
        checks.leq_exact("mis-f-covers-cluster-degree", max_cd as f64, f, || format!("iteration {t}"))?;

        let inst = LubyInstance::new(&h)?;
        let good_deg: usize = inst.good.iter().map(|&v| h.degree(v)).sum();
        checks.leq_exact("mis-good-degree", h.m() as f64, 2.0 * good_deg as f64, || format!("iteration {t}"))?;
        for (&v, star) in inst.good.iter().zip(&inst.instar) {
            let s: f64 = star.iter().map(|&u| 1.0 / h.degree(u) as f64).sum();
            checks.holds("mis-instar-sum", (1.0 / 3.0 - 1e-12..=4.0 / 3.0).contains(&s), || {
                format!("iteration {t}, node {}: {s}", h.id(v))
            })?;
        }

        let label = format!("mis/iteration/{t}");
        let marking = intra_round_mis(&h, &part, &inst, f, log_n, &stream, &label)?;
        ledger.charge("mis/intra", radius + 1, 2 * (radius + 1))?;
        let x = &marking.x;
        let (mut min_in, mut max_in, mut max_out) = (f64::INFINITY, 0.0f64, 0.0f64);
        for (&v, star) in inst.good.iter().zip(&inst.instar) {
            let s: f64 = star.iter().map(|&u| x[u]).sum();
            min_in = min_in.min(s);
            max_in = max_in.max(s);
            checks.leq("mis-instar-mass-lower", 1.0 / 1000.0, s, || format!("iteration {t}, node {}", h.id(v)))?;
            checks.leq("mis-instar-mass-upper", s, 1.0 / 3.0, || format!("iteration {t}, node {}", h.id(v)))?;
        }
        for u in 0..h.n() {
            let s: f64 = inst.orientation.out(u).iter().map(|&w| x[w]).sum();
            max_out = max_out.max(s);
            checks.leq("mis-out-mass", s, 0.25, || format!("iteration {t}, node {}", h.id(u)))?;
        }

        let problem = build_mis_instance(&h, &inst)?;
        let frac = FractionalAssignment::binary(x)?;
        let z_frac = evaluate(&problem, &frac)?;
        checks.leq("mis-fractional-precondition", z_frac.utility / 3.0, z_frac.value(), || {
            format!("iteration {t}")
        })?;
        checks.leq("mis-fractional-removal", h.m() as f64 / 12000.0, z_frac.value(), || format!("iteration {t}"))?;
        let coloring = greedy_color(problem.conflict_graph());
        let rounded = round_labels(&problem, &frac, &coloring, RoundingOptions::default())?;
        rounded.charge(&mut ledger, "mis/rounding", 2)?;

        let marked = &rounded.labels;
        let mut dead = vec![false; h.n()];
        let mut added = 0;
        for u in 0..h.n() {
            if marked[u] == 1 && inst.orientation.out(u).iter().all(|&w| marked[w] == 0) {
                in_is[to_g[u]] = true;
                added += 1;
                dead[u] = true;
                for &w in h.neighbors(u) {
                    dead[w] = true;
                }
            }
        }
        ledger.charge("mis/join", 1, 2)?;
        let removed_edges = h.edges().filter(|&(a, b)| dead[a] || dead[b]).count();
        let z_rounded = rounded.rounded.value();
        checks.leq("mis-estimator-bound", z_rounded, removed_edges as f64, || format!("iteration {t}"))?;
        checks.holds("mis-removal", 24000 * removed_edges >= h.m(), || {
            format!("iteration {t}: removed {removed_edges} of {}", h.m())
        })?;
        for u in 0..h.n() {
            if dead[u] {
                removed[to_g[u]] = true;
            }
        }
        stats.push(IterationStats {
            nodes: h.n(),
            edges: h.m(),
            removed_edges,
            added,
            utility_fractional: z_frac.utility,
            cost_fractional: z_frac.cost,
            z_fractional: z_frac.value(),
            z_rounded,
            min_instar_mass: min_in,
            max_instar_mass: max_in,
            max_out_mass: max_out,
            intra_attempts: marking.max_attempts,
        });
        if removed_edges == 0 {
            // Only reachable in lenient mode; avoid looping forever.
            return Err(Error::claim("mis-removal", format!("iteration {t} removed no edges")));
        }
    }
    for v in 0..g.n() {
        if !removed[v] {
            in_is[v] = true;
        }
    }
    let is: Vec<NodeId> = (0..g.n()).filter(|&v| in_is[v]).map(|v| g.id(v)).collect();
    checks.holds("mis-valid", verify_mis(g, &is), || "output is not a maximal independent set".into())?;
    checks.holds("mis-iteration-bound", stats.len() <= iteration_bound(g.m()), || {
        format!("{} iterations", stats.len())
    })?;
    Ok(MisOutcome {
        is_size: is.len(),
        is,
        iterations: stats.len(),
        per_iteration_removed_fraction: stats.iter().map(|s| s.removed_edges as f64 / s.edges as f64).collect(),
        stats,
        rounds: ledger.total(),
        alpha,
        f,
        checks,
        ledger,
    })
}

/// Randomized baseline: marks each node with probability `1/(10 deg)` and
/// keeps marked nodes without a marked out-neighbour.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LubyOutcome {
    pub is: Vec<NodeId>,
    pub iterations: usize,
    pub per_iteration_removed_fraction: Vec<f64>,
}

/// Iteration cap of the randomized baseline.
pub const LUBY_MAX_ITERATIONS: usize = 1_000_000;

pub fn luby_randomized(g: &Graph, seed: u64) -> Result<LubyOutcome> {
    let stream = SeedStream::new(seed);
    let mut removed = vec![false; g.n()];
    let mut in_is = vec![false; g.n()];
    let mut fractions = Vec::new();
    while fractions.len() < LUBY_MAX_ITERATIONS {
        let alive: Vec<usize> = (0..g.n()).filter(|&v| !removed[v]).collect();
        let rest = g.induced_by_indices(&alive);
        let local = rest.non_isolated();
        if local.is_empty() {
            for v in alive {
                in_is[v] = true;
            }
            let is: Vec<NodeId> = (0..g.n()).filter(|&v| in_is[v]).map(|v| g.id(v)).collect();
            return Ok(LubyOutcome { is, iterations: fractions.len(), per_iteration_removed_fraction: fractions });
        }
        let to_g: Vec<usize> = local.iter().map(|&i| alive[i]).collect();
        let h = g.induced_by_indices(&to_g);
        let o = h.orient();
        let mut rng = stream.rng(&format!("luby/iteration/{}", fractions.len()));
        let marked: Vec<bool> = (0..h.n()).map(|u| rng.random::<f64>() < 1.0 / (10.0 * h.degree(u) as f64)).collect();
        let mut dead = vec![false; h.n()];
        for u in 0..h.n() {
            if marked[u] && o.out(u).iter().all(|&w| !marked[w]) {
                in_is[to_g[u]] = true;
                dead[u] = true;
                for &w in h.neighbors(u) {
                    dead[w] = true;
                }
            }
        }
        let gone = h.edges().filter(|&(a, b)| dead[a] || dead[b]).count();
        fractions.push(gone as f64 / h.m() as f64);
        for u in 0..h.n() {
            if dead[u] {
                removed[to_g[u]] = true;
            }
        }
    }
    Err(Error::RandomFailure { attempts: LUBY_MAX_ITERATIONS })
}
