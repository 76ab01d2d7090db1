use local_derand::oracles::{exhaustive_round_check, OracleBudget};
use local_derand::rounding::{
    evaluate, evaluate_labels, greedy_color, round_labels, FractionalAssignment, RoundingOptions, UtilityCostInstance,
};
use local_derand::{gen, Graph};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_instance(seed: u64, n: u64, labels: usize, cost_scale: f64) -> (UtilityCostInstance, FractionalAssignment) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = gen::gnp(n, 0.4, seed).unwrap();
    let mut b = UtilityCostInstance::builder(g.clone(), labels);
    for v in 0..g.n() {
        for l in 0..labels {
            b.add_node(v, l, rng.random_range(0.0..2.0), cost_scale * rng.random_range(0.0..0.3)).unwrap();
        }
    }
    for (a, c) in g.edges() {
        for la in 0..labels {
            for lb in 0..labels {
                b.add_pair(a, c, la, lb, rng.random_range(0.0..0.5), cost_scale * rng.random_range(0.0..0.3)).unwrap();
            }
        }
    }
    let rows: Vec<Vec<f64>> = (0..g.n())
        .map(|_| {
            let w: Vec<f64> = (0..labels).map(|_| rng.random_range(0.1..1.0)).collect();
            let s: f64 = w.iter().sum();
            w.into_iter().map(|x| x / s).collect()
        })
        .collect();
    (b.build().unwrap(), FractionalAssignment::new(labels, &rows).unwrap())
}

#[test]
fn eight_node_evaluate_matches_exhaustive_expectation() {
    for seed in 0..20 {
        let (inst, lambda) = random_instance(seed, 8, 3, 1.0);
        let obj = evaluate(&inst, &lambda).unwrap();
        let oracle = exhaustive_round_check(&inst, &lambda, &OracleBudget::default()).unwrap();
        assert_eq!(oracle.tuples, 3u64.pow(8));
        let tol = 1e-9 * (obj.utility.abs() + obj.cost.abs() + 1.0);
        assert!((obj.utility - oracle.expected_utility).abs() <= tol, "seed {seed}");
        assert!((obj.cost - oracle.expected_cost).abs() <= tol, "seed {seed}");
        let best = evaluate_labels(&inst, &oracle.best_labels).unwrap();
        assert!((best.value() - oracle.best_value).abs() <= tol);
    }
}

#[test]
fn ten_node_binary_evaluate_matches_enumeration() {
    for seed in 100..110 {
        let (inst, lambda) = random_instance(seed, 10, 2, 1.0);
        let obj = evaluate(&inst, &lambda).unwrap();
        let oracle = exhaustive_round_check(&inst, &lambda, &OracleBudget::default()).unwrap();
        assert_eq!(oracle.tuples, 1024);
        assert!((obj.value() - oracle.expected_value()).abs() <= 1e-9, "seed {seed}");
    }
}

#[test]
fn greedy_coloring_is_proper() {
    let g = gen::gnp(50, 0.1, 4).unwrap();
    let c = greedy_color(&g);
    for (a, b) in g.edges() {
        assert_ne!(c.color(a), c.color(b));
    }
    assert!(c.is_proper(&g));
    assert!(c.count() <= g.max_degree() + 1);
    let k4 = gen::complete(4);
    let c4 = greedy_color(&k4);
    assert!(c4.is_proper(&k4));
    assert_eq!(c4.count(), 4);
}

#[test]
fn improper_coloring_is_rejected() {
    let (inst, lambda) = random_instance(1, 6, 2, 0.5);
    let bad = local_derand::rounding::Coloring::new(vec![0; inst.n()]);
    if inst.conflict_graph().m() > 0 {
        assert!(round_labels(&inst, &lambda, &bad, RoundingOptions::default()).is_err());
    }
}

#[test]
fn rounding_on_edgeless_conflict_graph_is_one_class() {
    let g = Graph::from_edges((0..5).map(local_derand::NodeId), Vec::new()).unwrap();
    let mut b = UtilityCostInstance::builder(g.clone(), 2);
    for v in 0..5 {
        b.add_node(v, 1, 1.0, 0.25).unwrap();
    }
    let inst = b.build().unwrap();
    let lambda = FractionalAssignment::binary(&[0.5; 5]).unwrap();
    let out = round_labels(&inst, &lambda, &greedy_color(&g), RoundingOptions::default()).unwrap();
    assert_eq!(out.labels, vec![1; 5]);
    assert!((out.rounded.value() - 3.75).abs() < 1e-12);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rounding_never_loses_expected_value(seed: u64, n in 1u64..9) {
        let (inst, lambda) = random_instance(seed, n, 2, 0.4);
        let frac = evaluate(&inst, &lambda).unwrap();
        prop_assume!(frac.value() >= 0.1 * frac.utility);
        let out = round_labels(&inst, &lambda, &greedy_color(inst.conflict_graph()), RoundingOptions { verify_each_class: true }).unwrap();
        let oracle = exhaustive_round_check(&inst, &lambda, &OracleBudget::default()).unwrap();
        let tol = 1e-9 * (frac.utility.abs() + frac.cost.abs() + 1.0);
        prop_assert!(out.rounded.value() >= frac.value() - tol);
        prop_assert!(out.rounded.value() <= oracle.best_value + tol);
        for w in out.class_objectives.windows(2) {
            prop_assert!(w[1] >= w[0] - tol);
        }
    }
}
