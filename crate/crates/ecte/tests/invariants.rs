//! Property-based invariants over randomly shaped instances.

use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;

use ecte::format;
use ecte::online::{simulate, ChildPolicy};
use ecte::oracle;
use ecte::piecemeal::{adversarial_dfs, adversarial_pdfs, pdfs, thresholds};
use ecte::rearrange::{build_t_prime, satisfies_st};
use ecte::route::{restricted_cost, route_length, validate_strategy};
use ecte::traversal::{dfs_tour, steiner_route, ChildOrder};
use ecte::tree::{Instance, NodeId};
use ecte::weight::Weight;

/// Random tree as a parent vector (parent of node `i+1` is `parents[i] %
/// (i+1)`), integer weights, budget `2*height + slack`.
fn arb_instance(max_nodes: usize) -> impl Strategy<Value = Instance> {
    (2..=max_nodes)
        .prop_flat_map(|n| {
            (
                proptest::collection::vec(any::<usize>(), n - 1),
                proptest::collection::vec(1u32..=8, n - 1),
                0u32..=4,
            )
        })
        .prop_map(|(parents, weights, slack)| {
            let n = parents.len() + 1;
            let mut depth = vec![Weight::zero(); n];
            let mut edges = Vec::new();
            let mut height = Weight::zero();
            for i in 1..n {
                let p = parents[i - 1] % i;
                let w = Weight::from_int(weights[i - 1] as i64);
                depth[i] = &depth[p] + &w;
                if depth[i] > height {
                    height = depth[i].clone();
                }
                edges.push((format!("n{p}"), format!("n{i}"), w));
            }
            let budget = height.double() + Weight::from_int(slack as i64);
            let mut b = Instance::builder(budget);
            for (p, c, w) in edges {
                b = b.edge(&p, &c, w);
            }
            b.build().expect("constructed within height bound")
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn potentials_telescope(t in arb_instance(10)) {
        prop_assert_eq!(t.potential(t.root()), t.budget().half());
        for v in t.node_ids() {
            if let Some(p) = t.parent(v) {
                prop_assert_eq!(
                    t.potential(v),
                    t.potential(p) - t.parent_edge_weight(v)
                );
                prop_assert!(!t.potential(v).is_negative());
            }
        }
    }

    #[test]
    fn heavy_edges_have_heavy_endpoints(t in arb_instance(10)) {
        let cl = t.classify();
        for v in t.node_ids() {
            if cl.edge_heavy(v) {
                prop_assert!(cl.node_heavy(v));
                prop_assert!(cl.node_heavy(t.parent(v).unwrap()));
            }
        }
    }

    #[test]
    fn tours_traverse_each_edge_twice(t in arb_instance(10), seed in 0u64..1000) {
        for policy in [ChildOrder::FileOrder, ChildOrder::Lexicographic, ChildOrder::Seeded(seed)] {
            let tour = dfs_tour(&t, &policy).unwrap();
            prop_assert_eq!(tour.vertices.len(), 2 * t.node_count() - 1);
            prop_assert_eq!(tour.vertices[0], t.root());
            prop_assert_eq!(*tour.vertices.last().unwrap(), t.root());
            let mut count: BTreeMap<NodeId, usize> = BTreeMap::new();
            for pair in tour.vertices.windows(2) {
                let lower = if t.parent(pair[1]) == Some(pair[0]) { pair[1] } else { pair[0] };
                *count.entry(lower).or_default() += 1;
            }
            for v in t.node_ids() {
                if v != t.root() {
                    prop_assert_eq!(count[&v], 2);
                }
            }
            prop_assert_eq!(
                tour.prefix_lengths(&t).last().unwrap().clone(),
                t.total_weight().double()
            );
        }
    }

    #[test]
    fn steiner_route_length_is_twice_weight(t in arb_instance(10), picks in proptest::collection::vec(any::<usize>(), 0..4)) {
        let nodes: Vec<NodeId> = t.node_ids().collect();
        let targets: BTreeSet<NodeId> = picks.iter().map(|p| nodes[p % nodes.len()]).collect();
        let route = steiner_route(&t, &targets);
        let len = route_length(&t, &route).unwrap();
        prop_assert_eq!(len, oracle::steiner_weight(&t, &targets).double());
        for target in &targets {
            prop_assert!(route.visits(*target));
        }
    }

    #[test]
    fn restricted_cost_is_additive(t in arb_instance(10), mask in any::<u64>()) {
        let tour = dfs_tour(&t, &ChildOrder::FileOrder).unwrap();
        let strategy = pdfs(&t, &tour).strategy;
        let all: BTreeSet<NodeId> = t.node_ids().filter(|v| *v != t.root()).collect();
        let (a, b): (BTreeSet<NodeId>, BTreeSet<NodeId>) =
            all.iter().partition(|v| mask & (1 << (v.0 % 64)) != 0);
        let total = strategy.cost(&t).unwrap();
        let split = restricted_cost(&t, &strategy, &a).unwrap()
            + restricted_cost(&t, &strategy, &b).unwrap();
        prop_assert_eq!(split, total);
    }

    #[test]
    fn pdfs_is_feasible_and_covers_tour(t in arb_instance(10), seed in 0u64..1000) {
        let tour = dfs_tour(&t, &ChildOrder::Seeded(seed)).unwrap();
        let trace = pdfs(&t, &tour);
        prop_assert!(validate_strategy(&t, &trace.strategy).unwrap().is_feasible());
        for len in &trace.per_route_lengths {
            prop_assert!(len <= t.budget());
        }
        for w in trace.stop_indices.windows(2) {
            prop_assert!(w[1] > w[0]);
        }
        let mut rebuilt = vec![tour.vertices[0]];
        for w in trace.stop_indices.windows(2) {
            rebuilt.extend_from_slice(&tour.vertices[w[0] + 1..=w[1]]);
        }
        prop_assert_eq!(rebuilt, tour.vertices);
    }

    #[test]
    fn adversarial_dominates_and_respects_caps(t in arb_instance(9), numer in 0u32..=100) {
        let tour = dfs_tour(&t, &ChildOrder::FileOrder).unwrap();
        let plain = pdfs(&t, &tour);
        let (worst, cap) = adversarial_dfs(&t, &tour);
        prop_assert!(worst.cost() >= plain.cost());

        // Any cap's outcome is dominated by the sweep.
        let probe = t.potential(t.root()).double() * Weight::ratio(numer as i64, 100);
        let probed = adversarial_pdfs(&t, &tour, &probe).unwrap();
        prop_assert!(probed.cost() <= worst.cost());
        prop_assert!(probed.per_route_lengths[0] <= probe);
        prop_assert!(validate_strategy(&t, &probed.strategy).unwrap().is_feasible());

        // The argmax cap is itself a threshold.
        prop_assert!(thresholds(&t, &tour).values.contains(&cap));
    }

    #[test]
    fn thresholds_are_sorted_and_capped(t in arb_instance(10)) {
        let tour = dfs_tour(&t, &ChildOrder::FileOrder).unwrap();
        let set = thresholds(&t, &tour);
        let cap = t.potential(t.root()).double();
        prop_assert_eq!(set.values[0].clone(), Weight::zero());
        for w in set.values.windows(2) {
            prop_assert!(w[0] < w[1]);
        }
        for v in &set.values {
            prop_assert!(*v <= cap);
        }
    }

    #[test]
    fn online_equals_offline(t in arb_instance(10), seed in 0u64..1000) {
        let outcome = simulate(&t, ChildPolicy::SeededRandom(seed)).unwrap();
        prop_assert_eq!(outcome.log.gate_violations, 0);
        prop_assert_eq!(outcome.log.recharges + 1, outcome.strategy.route_count());
        let tour = dfs_tour(&t, &ChildOrder::Explicit(outcome.child_order.clone())).unwrap();
        let offline = pdfs(&t, &tour);
        prop_assert_eq!(offline.strategy, outcome.strategy);
    }

    #[test]
    fn serialization_round_trips(t in arb_instance(10)) {
        let text = format::serialize(&t);
        let back = format::parse(&text).unwrap();
        prop_assert_eq!(format::serialize(&back), text);
        prop_assert_eq!(back.node_count(), t.node_count());
        prop_assert_eq!(back.budget().clone(), t.budget().clone());
        for v in t.node_ids() {
            let b = back.node(t.name(v)).unwrap();
            prop_assert_eq!(back.depth(b).clone(), t.depth(v).clone());
        }
    }
}

proptest! {
    // Oracle-backed properties are costlier; fewer cases.
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn opt_cost_lower_bounds_pdfs(t in arb_instance(7)) {
        prop_assume!(t.leaves().len() <= 6);
        let tour = dfs_tour(&t, &ChildOrder::FileOrder).unwrap();
        let trace = pdfs(&t, &tour);
        let (opt, witness) = oracle::opt_cost(&t).unwrap();
        prop_assert!(opt <= trace.cost());
        prop_assert!(opt >= t.total_weight().double());
        prop_assert!(validate_strategy(&t, &witness).unwrap().is_feasible());
        prop_assert_eq!(witness.cost(&t).unwrap(), opt.clone());

        let (count, count_witness) = oracle::opt_routes(&t).unwrap();
        prop_assert!(validate_strategy(&t, &count_witness).unwrap().is_feasible());
        prop_assert!(count <= trace.route_count());
        let bound = (&opt / t.budget()).ceil();
        prop_assert!(Weight::from_int(count as i64) >= bound);
    }

    #[test]
    fn light_trees_have_closed_form_opt(t in arb_instance(7)) {
        prop_assume!(t.leaves().len() <= 6);
        let cl = t.classify();
        prop_assume!(!cl.node_heavy(t.root()));
        let (opt, _) = oracle::opt_cost(&t).unwrap();
        prop_assert_eq!(opt, t.total_weight().double());
    }

    #[test]
    fn rearrangement_shrinks_distances(seed in 0u64..500, scale in 1i64..=9) {
        let t = ecte::generator::generate(&ecte::generator::GeneratorSpec::HeavyPath { seed })
            .unwrap();
        let (ok, _) = satisfies_st(&t);
        prop_assert!(!ok);
        // Any epsilon below the minimum edge weight keeps the shape sound.
        let eps = Weight::ratio(scale, 10)
            * t.node_ids()
                .filter(|v| *v != t.root())
                .map(|v| t.parent_edge_weight(v).clone())
                .min()
                .unwrap();
        let result = build_t_prime(&t, &eps).unwrap();
        prop_assert!(result.changed());
        let tp = &result.tree;
        let (st_after, _) = satisfies_st(tp);
        prop_assert!(st_after);
        for u in t.node_ids() {
            for v in t.node_ids() {
                let du = t.distance(u, v);
                let dp = tp.distance(
                    tp.node(t.name(u)).unwrap(),
                    tp.node(t.name(v)).unwrap(),
                );
                prop_assert!(dp <= du);
            }
        }
        // Each moved light edge lost exactly eps.
        for m in &result.moved_edges {
            let orig = t.parent_edge_weight(t.node(&m.child).unwrap());
            prop_assert_eq!(&m.new_weight + &eps, orig.clone());
        }
    }
}
