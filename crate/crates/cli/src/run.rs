use anyhow::Result;
use local_derand::claims::Checks;
use local_derand::clustering::{
    cluster_all, cluster_constant, f13, f14, mpx_randomized, verify_partition_with, ClusterOutcome,
};
use local_derand::matching::{approx_matching, Finisher, MatchingConfig};
use local_derand::mis::{luby_randomized, mis, MisConfig};
use local_derand::oracles::{blossom_matching_size, exact_max_matching, OracleBudget};
use local_derand::{Error, Graph, RoundLedger};
use serde_json::json;

use crate::args::{Algo, BudgetArgs, FinisherArg, OracleArgs, OracleCheck, RunArgs};
use crate::report::{status, Body, GraphInfo, Report, Violation, SCHEMA};
use crate::source::{load, usage};

pub fn budget(b: &BudgetArgs) -> OracleBudget {
    let d = OracleBudget::default();
    OracleBudget {
        max_nodes: b.nodes.unwrap_or(d.max_nodes),
        max_label_tuples: b.tuples.unwrap_or(d.max_label_tuples),
        max_subset_nodes: b.subset.unwrap_or(d.max_subset_nodes),
    }
}

/// Parameters of one algorithm invocation, shared by `run` and `bench`.
#[derive(Debug, Clone, Default)]
pub struct Params {
    pub alpha: Option<u64>,
    pub f_override: Option<f64>,
    pub seed: u64,
    pub doubling: bool,
    pub m_star: Option<usize>,
    pub lenient: bool,
}

fn cluster_body(g: &Graph, out: ClusterOutcome, bound: f64) -> Result<Body> {
    let report = verify_partition_with(g, &out.partition, bound)?;
    let outputs = json!({
        "params": out.params,
        "clusters": out.partition.len(),
        "max_diameter": report.max_diameter,
        "diameter_bound": report.diameter_bound,
        "max_radius": report.max_radius,
        "max_cluster_degree": report.max_cluster_degree,
        "degree_bound": bound,
        "degree_histogram": report.degree_histogram,
        "active_sizes": out.trace.active_sizes,
        "rounds": out.ledger.total(),
        "partition": out.partition.to_json(g),
    });
    let mut checks = out.checks;
    checks.holds("report-partition-within-bounds", report.ok, || "diameter or degree bound exceeded".into())?;
    Ok(Body { outputs, checks, ledger: out.ledger })
}

pub fn execute(g: &Graph, algo: Algo, p: &Params) -> Result<Body, Error> {
    let alpha_or = |default: u64| p.alpha.unwrap_or(default);
    let body = match algo {
        Algo::Mis => {
            let cfg = MisConfig { alpha: p.alpha, f_override: p.f_override, seed: p.seed, lenient: p.lenient };
            let out = mis(g, &cfg)?;
            Body { outputs: serde_json::to_value(&out).expect("serializable"), checks: out.checks, ledger: out.ledger }
        }
        Algo::Matching => {
            let cfg = MatchingConfig {
                alpha: p.alpha,
                f_override: p.f_override,
                seed: p.seed,
                finisher: if p.doubling { Finisher::Doubling } else { Finisher::Greedy },
                m_star: p.m_star,
            };
            let out = approx_matching(g, &cfg)?;
            let mut outputs = serde_json::to_value(&out).expect("serializable");
            outputs["matching"] = serde_json::to_value(&out.matching).expect("serializable");
            if let Some(m) = p.m_star {
                outputs["m_star"] = json!(m);
            }
            Body { outputs, checks: out.checks, ledger: out.ledger }
        }
        Algo::ClusterAll => {
            let out = cluster_all(g, alpha_or(local_derand::mis::default_alpha(g.n())))?;
            let bound = p.f_override.unwrap_or_else(|| f13(&out.params));
            cluster_body(g, out, bound).map_err(to_core)?
        }
        Algo::ClusterConstant => {
            // Unit weights: every node counts equally towards the good fraction.
            let x = vec![1.0; g.n()];
            let out = cluster_constant(g, alpha_or(local_derand::matching::default_alpha(g.n())), &x)?;
            let bound = p.f_override.unwrap_or_else(|| f14(&out.cluster.params));
            let mut body = cluster_body(g, out.cluster, f64::INFINITY).map_err(to_core)?;
            body.outputs["good_weight"] = json!(out.good_weight);
            body.outputs["total_weight"] = json!(out.total_weight);
            body.outputs["degree_bound"] = json!(bound);
            body.checks.leq("report-good-fraction", 0.9 * out.total_weight, out.good_weight, || {
                "good weight against 0.9 of the total".into()
            })?;
            body
        }
        Algo::Mpx => {
            let out = mpx_randomized(g, alpha_or(local_derand::mis::default_alpha(g.n())), p.seed)?;
            cluster_body(g, out, f64::INFINITY).map_err(to_core)?
        }
        Algo::LubyRand => {
            let out = luby_randomized(g, p.seed)?;
            let mut checks = Checks::new(true);
            checks.holds("luby-valid", local_derand::mis::verify_mis(g, &out.is), || "not a maximal independent set".into())?;
            let mut ledger = RoundLedger::new();
            let it = out.iterations as u64;
            ledger.charge("luby/iterations", it.min(1), 2 * it)?;
            let mut outputs = serde_json::to_value(&out).expect("serializable");
            outputs["is_size"] = json!(out.is.len());
            outputs["rounds"] = json!(ledger.total());
            Body { outputs, checks, ledger }
        }
    };
    Ok(body)
}

fn to_core(e: anyhow::Error) -> Error {
    match e.downcast::<Error>() {
        Ok(e) => e,
        Err(e) => Error::Contract(e.to_string()),
    }
}

/// Input problems propagate as errors; algorithm failures become a report.
fn is_input(e: &Error) -> bool {
    matches!(e, Error::Parse { .. } | Error::UnknownNode(_) | Error::Domain(_) | Error::Budget { .. })
}

pub fn run(args: &RunArgs) -> Result<Report> {
    if args.algo.randomized() && args.seed.is_none() {
        return Err(usage(format!("--algo {} needs --seed", args.algo.name())));
    }
    if args.exact_opt && args.algo != Algo::Matching {
        return Err(usage("--exact-opt applies to --algo matching only"));
    }
    if args.lenient && args.algo != Algo::Mis {
        return Err(usage("--lenient applies to --algo mis only"));
    }
    let (g, source) = load(&args.source, args.seed)?;
    let m_star = if args.exact_opt { Some(exact_max_matching(&g, &budget(&args.budget))?.len()) } else { None };
    let params = Params {
        alpha: args.alpha,
        f_override: args.f_override,
        seed: args.seed.unwrap_or(0),
        doubling: args.finisher == FinisherArg::Doubling,
        m_star,
        lenient: args.lenient,
    };
    let config = json!({
        "alpha": args.alpha,
        "f_override": args.f_override,
        "seed": args.seed,
        "finisher": match args.finisher { FinisherArg::Greedy => "greedy", FinisherArg::Doubling => "doubling" },
        "exact_opt": args.exact_opt,
        "lenient": args.lenient,
    });
    let graph = GraphInfo { source, n: g.n(), m: g.m() };
    let report = match execute(&g, args.algo, &params) {
        Ok(body) => Report {
            schema: SCHEMA,
            command: "run",
            algo: args.algo.name(),
            graph,
            config,
            status: status(&body.checks),
            violation: None,
            outputs: body.outputs,
            claims: body.checks.tallies().to_vec(),
            ledger: body.ledger.report(),
        },
        Err(e) if is_input(&e) => return Err(e.into()),
        Err(e) => Report {
            schema: SCHEMA,
            command: "run",
            algo: args.algo.name(),
            graph,
            config,
            status: "fail",
            violation: Some(Violation::from_error(&e)),
            outputs: serde_json::Value::Null,
            claims: Vec::new(),
            ledger: Default::default(),
        },
    };
    Ok(report)
}

pub fn oracle(args: &OracleArgs) -> Result<Report> {
    let (g, source) = load(&args.source, args.seed)?;
    let b = budget(&args.budget);
    let exact = exact_max_matching(&g, &b)?;
    let graph = GraphInfo { source, n: g.n(), m: g.m() };
    let config = json!({ "seed": args.seed, "budget_nodes": b.max_nodes });
    let (algo, outputs, checks, ledger) = match args.check {
        OracleCheck::MaxMatching => {
            let outputs = json!({
                "max_matching_size": exact.len(),
                "blossom_size": blossom_matching_size(&g),
                "matching": exact,
            });
            ("max-matching", outputs, Checks::new(true), RoundLedger::new())
        }
        OracleCheck::MatchingRatio => {
            let seed = args.seed.ok_or_else(|| usage("--check matching-ratio needs --seed"))?;
            let params = Params { seed, m_star: Some(exact.len()), ..Default::default() };
            let body = execute(&g, Algo::Matching, &params)?;
            let mut outputs = body.outputs;
            outputs["ratio"] = json!(if exact.is_empty() {
                1.0
            } else {
                outputs["matching_size"].as_f64().unwrap_or(0.0) / exact.len() as f64
            });
            ("matching-ratio", outputs, body.checks, body.ledger)
        }
    };
    Ok(Report {
        schema: SCHEMA,
        command: "oracle",
        algo,
        graph,
        config,
        status: status(&checks),
        violation: None,
        outputs,
        claims: checks.tallies().to_vec(),
        ledger: ledger.report(),
    })
}
