use std::fmt::Write as _;
use std::time::Instant;

use anyhow::{Context, Result};
use local_derand::gen;

use crate::args::{Algo, BenchArgs};
use crate::run::{execute, Params};

pub const HEADER: &str = "n,algorithm,rounds,quality,wall_time_ms";

/// Output size used as the quality column: independent-set size, matching
/// size or number of clusters.
fn quality(algo: Algo, outputs: &serde_json::Value) -> u64 {
    let key = match algo {
        Algo::Mis | Algo::LubyRand => "is_size",
        Algo::Matching => "matching_size",
        Algo::ClusterAll | Algo::ClusterConstant | Algo::Mpx => "clusters",
    };
    outputs[key].as_u64().unwrap_or(0)
}

pub fn bench(args: &BenchArgs) -> Result<String> {
    let mut algos: Vec<Algo> = Vec::new();
    for &a in &args.algo {
        let extra = if args.baselines { a.baseline() } else { None };
        for x in std::iter::once(a).chain(extra) {
            if !algos.contains(&x) {
                algos.push(x);
            }
        }
    }
    let mut csv = String::from(HEADER);
    csv.push('\n');
    for &n in &args.n {
        let p = if n == 0 { 0.0 } else { (args.avg_degree / n as f64).clamp(0.0, 1.0) };
        let g = gen::gnp(n, p, args.seed)?;
        for &algo in &algos {
            let params = Params { seed: args.seed, ..Default::default() };
            let start = Instant::now();
            let body = execute(&g, algo, &params).with_context(|| format!("{} on n = {n}", algo.name()))?;
            let ms = start.elapsed().as_secs_f64() * 1000.0;
            let _ = writeln!(csv, "{n},{},{},{},{ms:.3}", algo.name(), body.ledger.total(), quality(algo, &body.outputs));
        }
    }
    Ok(csv)
}
