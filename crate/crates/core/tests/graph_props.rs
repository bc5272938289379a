use num_integer::Integer;
use proptest::prelude::*;
use proptest::sample::select;

use fixedloci_core::graphs::{
    automorphism_count, brute_isomorphic, component_descriptor, deck_order, edge_r, edge_stabilizer, enumerate_graphs,
    graph_r, oracle_graph_r, DecoratedGraph, WeightVector,
};

/// All graphs for a few small parameter sets, with a weight vector that
/// covers their labels.
fn small_graph() -> impl Strategy<Value = DecoratedGraph> {
    let mut pool = Vec::new();
    for (g, n, big_n, d) in [(0, 0, 1, 3), (0, 1, 2, 2), (1, 0, 1, 2), (0, 2, 2, 2), (1, 1, 2, 1)] {
        pool.extend(enumerate_graphs(g, n, big_n, d).unwrap());
    }
    select(pool)
}

fn weights() -> impl Strategy<Value = WeightVector> {
    prop::collection::btree_set(-9i64..=9, 3).prop_map(|s| WeightVector::new(s.into_iter().collect()).unwrap())
}

proptest! {
    #[test]
    fn r_is_invariant_under_affine_weight_changes(graph in small_graph(), w in weights(), shift in -20i64..=20) {
        let r = graph_r(&graph, &w).unwrap();
        let shifted = WeightVector::new(w.as_slice().iter().map(|x| x + shift).collect()).unwrap();
        let negated = WeightVector::new(w.as_slice().iter().map(|x| -x).collect()).unwrap();
        prop_assert_eq!(graph_r(&graph, &shifted).unwrap(), r);
        prop_assert_eq!(graph_r(&graph, &negated).unwrap(), r);
        let lcm = graph.edges.iter().fold(1u64, |acc, e| acc.lcm(&e.degree));
        prop_assert_eq!(lcm % r, 0);
    }

    #[test]
    fn r_matches_oracle(graph in small_graph(), w in weights()) {
        let r = graph_r(&graph, &w).unwrap();
        let lcm = graph.edges.iter().fold(1u64, |acc, e| acc.lcm(&e.degree));
        prop_assert_eq!(oracle_graph_r(&graph, &w, lcm * r).unwrap(), r);
    }

    #[test]
    fn stabilizer_splits_the_degree(d in 1u64..=40, delta in (-40i64..=40).prop_filter("nonzero", |x| *x != 0)) {
        let s = edge_stabilizer(d, delta).unwrap();
        prop_assert_eq!(s.component_count * s.degree_to_target, d);
        prop_assert_eq!(s.degree_to_target, edge_r(d, delta).unwrap());
        prop_assert_eq!(edge_stabilizer(d, -delta).unwrap(), s);
    }

    #[test]
    fn canonical_form_is_a_complete_invariant(a in small_graph(), b in small_graph()) {
        prop_assert_eq!(a.canonical_form() == b.canonical_form(), brute_isomorphic(&a, &b));
        prop_assert_eq!(a.canonical().canonical_form(), a.canonical_form());
    }

    #[test]
    fn descriptor_orders(graph in small_graph()) {
        let report = component_descriptor(&graph, None).unwrap();
        prop_assert_eq!(report.a_order, automorphism_count(&graph) * deck_order(&graph));
        prop_assert_eq!(report.deck_order, graph.edges.iter().map(|e| e.degree).product::<u64>());
        prop_assert!(report.r.is_none());
    }
}
