use crate::claims::Checks;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::hitting::{grouped_hitting_set, BipartiteInstance};
use crate::ledger::RoundLedger;

use super::{check_structure, count_in, run_phases, wire, ClusterOptions, ClusterOutcome, ClusterParams, PhaseView};

/// Output of the weighted constant-fraction construction.
#[derive(Debug, Clone)]
pub struct ConstantOutcome {
    pub cluster: ClusterOutcome,
    /// `deg_C(u) <= degree_bound`.
    pub good: Vec<bool>,
    pub good_weight: f64,
    pub total_weight: f64,
    pub degree_bound: f64,
}

/// Partition of diameter at most `100 alpha` in which nodes carrying at least
/// 90% of the weight `x` have cluster degree at most [`super::f14`].
pub fn cluster_constant(g: &Graph, alpha: u64, x: &[f64]) -> Result<ConstantOutcome> {
    cluster_constant_with(g, alpha, x, ClusterOptions::default())
}

pub fn cluster_constant_with(g: &Graph, alpha: u64, x: &[f64], opts: ClusterOptions) -> Result<ConstantOutcome> {
    let n = g.n();
    if x.len() != n {
        return Err(Error::domain("weight vector length does not match the graph"));
    }
    let floor = 1.0 / n.max(1) as f64;
    if let Some(v) = (0..n).find(|&v| !(x[v] >= floor * (1.0 - 1e-12) && x[v] <= 1.0 + 1e-12)) {
        return Err(Error::domain(format!("weight {} of node {} is outside [1/n, 1]", x[v], g.id(v))));
    }
    let params = ClusterParams::new(n, alpha)?;
    let log_n = params.log_n as f64;
    let steps = params.steps();
    let base = opts.degree_base.unwrap_or((1000.0 * params.log_log_n()).ceil());
    let k = opts.group_size.unwrap_or((100.0 * params.log_log_n()).ceil() as usize);
    let deg = |j: usize| base.powi((steps - j) as i32);
    let norm = |i: usize, j: usize| ((i * steps + j) as f64 - 2.0 * log_n).exp2();
    let total: f64 = x.iter().sum();
    let host = 100 * alpha;

    let mut checks = Checks::new(opts.strict);
    let mut ledger = RoundLedger::new();
    let (partition, trace) = run_phases(g, &params, "cluster-constant", &mut ledger, |view: &PhaseView<'_>, ledger| {
        let i = view.i;
        let mut cur = view.active.to_vec();
        for j in 0..steps {
            let size = cur.iter().filter(|&&a| a).count() as f64;
            checks.leq("constant-active-size", size, total / (50.0 * log_n * norm(i, j)), || format!("(i, j) = ({i}, {j})"))?;
            let dj = deg(j);
            let counts: Vec<usize> = view.s.iter().map(|s| count_in(s, &cur)).collect();
            let u_h: Vec<usize> = (0..n).filter(|&u| counts[u] as f64 >= dj).collect();
            let mut next = vec![false; n];
            let mut h_rounds = 0;
            if !u_h.is_empty() {
                let delta = dj as usize;
                let inst = BipartiteInstance::new(
                    (0..n).filter(|&v| cur[v]).map(|v| g.id(v)),
                    u_h.iter().map(|&u| {
                        let nb = wire(&view.s[u], &cur, delta).expect("U_H nodes have deg_j candidates");
                        (g.id(u), x[u], nb.into_iter().map(|v| g.id(v)).collect())
                    }),
                    delta,
                    1.0 / 16.0,
                    norm(i, j),
                )?;
                let out = grouped_hitting_set(&inst, k.clamp(1, delta))?;
                for id in &out.selected_ids {
                    next[g.index_of(*id).unwrap()] = true;
                }
                h_rounds = out.h_rounds();
            }
            ledger.charge("cluster-constant/step", host, host * h_rounds.max(1))?;
            let next_deg = deg(j + 1);
            let bad: f64 = (0..n)
                .filter(|&u| counts[u] as f64 >= dj && (count_in(&view.s[u], &next) as f64) < next_deg)
                .map(|u| x[u])
                .sum();
            checks.leq("constant-bad-weight", bad, total / (100.0 * log_n), || format!("(i, j) = ({i}, {j})"))?;
            cur = next;
        }
        let size = cur.iter().filter(|&&a| a).count() as f64;
        checks.leq("constant-active-size", size, total / (50.0 * log_n * norm(i, steps)), || {
            format!("(i, j) = ({i}, {steps})")
        })?;
        Ok(cur)
    })?;
    check_structure(g, &params, &partition, &trace, &mut checks)?;

    let degree_bound = 10.0 * alpha as f64 * base.powi(steps as i32);
    let good: Vec<bool> = (0..n).map(|u| partition.cluster_degree(g, u) as f64 <= degree_bound).collect();
    let good_weight: f64 = (0..n).filter(|&u| good[u]).map(|u| x[u]).sum();
    checks.leq("constant-good-fraction", 0.9 * total, good_weight, || "weighted fraction of good nodes".into())?;
    Ok(ConstantOutcome {
        cluster: ClusterOutcome { params, partition, trace, checks, ledger },
        good,
        good_weight,
        total_weight: total,
        degree_bound,
    })
}
