use crate::claims::Checks;
use crate::error::Result;
use crate::graph::Graph;
use crate::hitting::{grouped_hitting_set, BipartiteInstance};
use crate::ledger::RoundLedger;

use super::{check_structure, run_phases, wire, ClusterOptions, ClusterOutcome, ClusterParams, PhaseView};

const NEVER: usize = usize::MAX;

/// Partition of diameter at most `100 alpha` in which every node has cluster
/// degree at most [`super::f13`].
pub fn cluster_all(g: &Graph, alpha: u64) -> Result<ClusterOutcome> {
    cluster_all_with(g, alpha, ClusterOptions::default())
}

/// Membership of one pipeline row `V_{i,j,0} ⊆ V_{i,j,1} ⊆ ...`, stored as the
/// first `ℓ` at which each node joins.
struct Row(Vec<usize>);

impl Row {
    fn contains(&self, v: usize, ell: usize) -> bool {
        self.0[v] <= ell
    }

    fn count(&self, set: &[usize], ell: usize) -> usize {
        set.iter().filter(|&&v| self.contains(v, ell)).count()
    }

    fn mask(&self, ell: usize) -> Vec<bool> {
        self.0.iter().map(|&a| a <= ell).collect()
    }
}

pub fn cluster_all_with(g: &Graph, alpha: u64, opts: ClusterOptions) -> Result<ClusterOutcome> {
    let n = g.n();
    let params = ClusterParams::new(n, alpha)?;
    let log_n = params.log_n as f64;
    let steps = params.steps();
    let ells = 4 * params.log_n as usize;
    let base = opts.degree_base.unwrap_or(2000.0 * log_n);
    let k = opts.group_size.unwrap_or(500 * params.log_n as usize);
    let p = 1.0 / (64.0 * log_n);
    let deg = |j: usize| base.powi((steps - j) as i32);
    let norm = |i: usize, j: usize| ((i * steps + j) as f64).exp2();
    let host = 100 * alpha;

    let mut checks = Checks::new(opts.strict);
    let mut ledger = RoundLedger::new();
    let (partition, trace) = run_phases(g, &params, "cluster-all", &mut ledger, |view: &PhaseView<'_>, ledger| {
        let i = view.i;
        let size0 = view.active.iter().filter(|&&a| a).count() as f64;
        checks.leq("all-active-size", size0, 2.0 * log_n * n as f64 / norm(i, 0), || format!("(i, j) = ({i}, 0)"))?;
        let important: Vec<usize> = (0..n).filter(|&u| view.s[u].len() as f64 >= deg(0)).collect();

        let mut prev = Row(view.active.iter().map(|&a| if a { 0 } else { NEVER }).collect());
        // finish[ℓ] of the previous row in the round DP; row 0 costs nothing.
        let mut prev_finish = vec![0u64; ells + 1];
        for j in 1..=steps {
            let mut cur = Row(vec![NEVER; n]);
            let mut finish = vec![0u64; ells + 1];
            let (d_prev, d_cur) = (deg(j - 1), deg(j));
            for ell in 1..=ells {
                let u_h: Vec<usize> = important
                    .iter()
                    .copied()
                    .filter(|&u| {
                        prev.count(&view.s[u], ell) as f64 >= d_prev && (cur.count(&view.s[u], ell - 1) as f64) < d_cur
                    })
                    .collect();
                let mut h_rounds = 0;
                if !u_h.is_empty() {
                    let delta = d_prev as usize;
                    let v_h = prev.mask(ell);
                    let inst = BipartiteInstance::new(
                        (0..n).filter(|&v| v_h[v]).map(|v| g.id(v)),
                        u_h.iter().map(|&u| {
                            let nb = wire(&view.s[u], &v_h, delta).expect("U_H nodes have deg_{j-1} candidates");
                            (g.id(u), 1.0, nb.into_iter().map(|v| g.id(v)).collect())
                        }),
                        delta,
                        p,
                        norm(i, j) * (j as f64 - ell as f64).exp2(),
                    )?;
                    let out = grouped_hitting_set(&inst, k.clamp(1, delta))?;
                    for id in &out.selected_ids {
                        let v = g.index_of(*id).unwrap();
                        if cur.0[v] == NEVER {
                            cur.0[v] = ell;
                        }
                    }
                    h_rounds = out.h_rounds();
                }
                let cost = host * h_rounds.max(1);
                finish[ell] = cost + finish[ell - 1].max(prev_finish[ell]);
                let bad = important.iter().filter(|&&u| (cur.count(&view.s[u], ell) as f64) < d_cur).count();
                checks.leq("all-bad-count", bad as f64, n as f64 * (j as f64 - ell as f64).exp2(), || {
                    format!("(i, j, ell) = ({i}, {j}, {ell})")
                })?;
            }
            let size = cur.0.iter().filter(|&&a| a <= ells).count() as f64;
            checks.leq("all-active-size", size, 2.0 * log_n * n as f64 / norm(i, j), || format!("(i, j) = ({i}, {j})"))?;
            prev = cur;
            prev_finish = finish;
        }
        ledger.charge("cluster-all/pipeline", host, prev_finish[ells].max(host))?;
        let next = prev.mask(ells);
        let missed = important.iter().filter(|&&u| view.s[u].iter().all(|&v| !next[v])).count();
        checks.holds("all-important-hit", missed == 0, || format!("phase {i}: {missed} important nodes unhit"))?;
        Ok(next)
    })?;
    check_structure(g, &params, &partition, &trace, &mut checks)?;
    let bound = 10.0 * alpha as f64 * base.powi(steps as i32);
    let max_deg = partition.cluster_degrees(g).into_iter().max().unwrap_or(0);
    checks.leq_exact("all-cluster-degree", max_deg as f64, bound, || "max deg_C".into())?;
    Ok(ClusterOutcome { params, partition, trace, checks, ledger })
}
