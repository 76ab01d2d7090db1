use local_derand::clustering::{mpx_randomized, Partition};
use local_derand::hitting::BipartiteInstance;
use local_derand::mis::{build_mis_instance, LubyInstance};
use local_derand::oracles::{
    blossom_matching_size, brute_force_centers, chernoff_bound, chernoff_scaled, exact_max_matching,
    exhaustive_hitting_check, exhaustive_round_check, two_point_tail, HittingRule, OracleBudget,
};
use local_derand::rounding::{evaluate, FractionalAssignment};
use local_derand::{gen, Error, NodeId};
use proptest::prelude::*;

#[test]
fn single_edge_objective_has_closed_form() {
    let g = gen::path(2);
    let inst = LubyInstance::new(&g).unwrap();
    let problem = build_mis_instance(&g, &inst).unwrap();
    for x in [0.0, 0.05, 0.1, 0.25, 0.5, 1.0] {
        let lambda = FractionalAssignment::binary(&[x, x]).unwrap();
        let obj = evaluate(&problem, &lambda).unwrap();
        assert!((obj.value() - (x / 2.0 - x * x / 2.0)).abs() < 1e-15, "x = {x}");
        let check = exhaustive_round_check(&problem, &lambda, &OracleBudget::default()).unwrap();
        assert!((check.expected_value() - obj.value()).abs() < 1e-15);
        assert_eq!(check.tuples, 4);
        // Marking only the lower endpoint earns 1/2 at no cost.
        assert_eq!(check.best_value, 0.5);
        assert_eq!(check.best_labels, vec![1, 0]);
    }
}

#[test]
fn forced_hit_and_free_empty_witnesses() {
    let forced = BipartiteInstance::new([NodeId(0)], [(NodeId(1), 1.0, vec![NodeId(0)])], 1, 1.0, 0.0).unwrap();
    let w = exhaustive_hitting_check(&forced, HittingRule::Basic, &OracleBudget::default()).unwrap();
    assert_eq!(w, Some(vec![0]));
    let u: Vec<(NodeId, f64, Vec<NodeId>)> = (0..5).map(|i| (NodeId(100 + i), 0.0, vec![NodeId(i), NodeId(i + 1)])).collect();
    let free = BipartiteInstance::new((0..8).map(NodeId), u, 2, 0.3, 1e12).unwrap();
    let w = exhaustive_hitting_check(&free, HittingRule::Basic, &OracleBudget::default()).unwrap();
    assert_eq!(w, Some(vec![]));
    let big = BipartiteInstance::new((0..21).map(NodeId), [], 1, 0.5, 1.0).unwrap();
    assert!(matches!(exhaustive_hitting_check(&big, HittingRule::Basic, &OracleBudget::default()), Err(Error::Budget { .. })));
}

#[test]
fn exact_matching_sizes_on_known_families() {
    let b = OracleBudget::default();
    assert_eq!(exact_max_matching(&gen::path(7), &b).unwrap().len(), 3);
    assert_eq!(exact_max_matching(&gen::cycle(9).unwrap(), &b).unwrap().len(), 4);
    assert_eq!(exact_max_matching(&gen::complete(6), &b).unwrap().len(), 3);
    assert_eq!(exact_max_matching(&gen::star(10), &b).unwrap().len(), 1);
    assert_eq!(exact_max_matching(&gen::grid(4, 4), &b).unwrap().len(), 8);
    assert_eq!(blossom_matching_size(&gen::disjoint_edges(12)), 12);
}

#[test]
fn oracles_refuse_oversized_inputs() {
    let b = OracleBudget::default();
    let big = gen::gnp(40, 0.3, 1).unwrap();
    assert!(matches!(exact_max_matching(&big, &b), Err(Error::Budget { .. })));
    let h = gen::path(30);
    let inst = LubyInstance::new(&h).unwrap();
    let problem = build_mis_instance(&h, &inst).unwrap();
    let lambda = FractionalAssignment::binary(&[0.1; 30]).unwrap();
    assert!(matches!(exhaustive_round_check(&problem, &lambda, &b), Err(Error::Budget { .. })));
}

#[test]
fn tail_is_below_chernoff_estimates() {
    let probs = vec![0.3; 40];
    let mean = 12.0;
    for delta in [0.2, 0.5, 1.0, 2.0] {
        let tail = two_point_tail(&probs, 1.0, delta * mean);
        assert!(tail <= chernoff_bound(mean, delta), "delta {delta}: {tail}");
    }
    let b = 0.25;
    let t = 0.5 * mean * b;
    assert!(two_point_tail(&probs, b, t) <= chernoff_scaled(t, b));
    assert_eq!(two_point_tail(&[], 1.0, 0.0), 1.0);
    assert!((two_point_tail(&[0.5], 1.0, 0.5) - 1.0).abs() < 1e-15);
}

#[test]
fn mpx_centres_agree_with_brute_force() {
    let g = gen::gnp(60, 0.06, 2).unwrap();
    let out = mpx_randomized(&g, 2, 4).unwrap();
    let p: &Partition = &out.partition;
    let centers = brute_force_centers(&g, p.delays());
    for v in 0..g.n() {
        assert_eq!(p.center_of(v), centers[v]);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn exact_matching_agrees_with_blossom(n in 1u64..16, p in 0.0f64..0.6, seed: u64) {
        let g = gen::gnp(n, p, seed).unwrap();
        let m = exact_max_matching(&g, &OracleBudget::default()).unwrap();
        prop_assert_eq!(m.len(), blossom_matching_size(&g));
        let mut used = std::collections::BTreeSet::new();
        for &(a, b) in &m {
            prop_assert!(g.has_edge(g.index_of(a).unwrap(), g.index_of(b).unwrap()));
            prop_assert!(used.insert(a) && used.insert(b));
        }
    }
}
