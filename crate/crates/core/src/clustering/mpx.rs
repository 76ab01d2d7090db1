use rand::Rng;

use crate::claims::Checks;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::ledger::RoundLedger;
use crate::rng::SeedStream;

use super::{check_structure, run_phases, ClusterOutcome, ClusterParams};

/// Extra attempts after the first when the last active set is non-empty.
pub const MPX_RETRIES: usize = 5;

/// Randomized baseline: every active node stays active with probability
/// `2^{-log2(N)/alpha}`.
pub fn mpx_randomized(g: &Graph, alpha: u64, seed: u64) -> Result<ClusterOutcome> {
    let params = ClusterParams::new(g.n(), alpha)?;
    let keep = (-(params.steps() as f64)).exp2();
    let stream = SeedStream::new(seed);
    for attempt in 0..=MPX_RETRIES {
        let mut ledger = RoundLedger::new();
        let (partition, trace) = run_phases(g, &params, "mpx", &mut ledger, |view, _| {
            let mut rng = stream.rng(&format!("mpx/attempt/{attempt}/phase/{}", view.i));
            Ok(view.active.iter().map(|&a| a && rng.random::<f64>() < keep).collect())
        })?;
        if !trace.terminal_empty() {
            continue;
        }
        let mut checks = Checks::new(true);
        check_structure(g, &params, &partition, &trace, &mut checks)?;
        return Ok(ClusterOutcome { params, partition, trace, checks, ledger });
    }
    Err(Error::RandomFailure { attempts: MPX_RETRIES + 1 })
}
