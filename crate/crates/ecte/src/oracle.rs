//! Exact brute-force optima via leaf-set partitions, and the independent
//! potential-strategy enumeration used to validate them.
//!
//! Any route covering a vertex set from the root has length at least twice
//! the weight of the subtree spanning the root and that set, and a DFS of
//! the spanned subtree achieves it. Covering every leaf covers every vertex,
//! so minimizing over partitions of the leaf set (each group's doubled
//! spanning weight within the budget) is exact. Partitions are enumerated
//! as restricted growth strings; the default caps keep Bell numbers at desk
//! scale.

use std::collections::BTreeSet;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::route::{route_length, validate_strategy, Route, Strategy, Verdict};
use crate::traversal::steiner_route;
use crate::tree::{Instance, NodeId};
use crate::weight::Weight;

/// Default leaf cap for partition search (`Bell(10) = 115975`).
pub const DEFAULT_LEAF_CAP: usize = 10;
/// Default leaf cap for full potential-strategy enumeration.
pub const DEFAULT_ENUM_CAP: usize = 5;

/// Weight of the minimal subtree spanning the root and `leaves`.
pub fn steiner_weight(instance: &Instance, leaves: &BTreeSet<NodeId>) -> Weight {
    let mut marked: BTreeSet<NodeId> = BTreeSet::new();
    let mut total = Weight::zero();
    for &t in leaves {
        for v in instance.ancestors_inclusive(t) {
            if v == instance.root() || !marked.insert(v) {
                break;
            }
            total = total + instance.parent_edge_weight(v);
        }
    }
    total
}

/// Minimum-cost exploration strategy, by exhaustive partition of the leaf
/// set. Ties are broken by restricted-growth-string order.
pub fn opt_cost(instance: &Instance) -> Result<(Weight, Strategy)> {
    opt_cost_with_cap(instance, DEFAULT_LEAF_CAP)
}

pub fn opt_cost_with_cap(instance: &Instance, cap: usize) -> Result<(Weight, Strategy)> {
    let search = search_partitions(instance, cap)?;
    Ok((search.best_cost, search.best_cost_witness))
}

/// Minimum number of routes, over the same feasible-partition space. Ties
/// are broken by lower cost, then restricted-growth-string order.
pub fn opt_routes(instance: &Instance) -> Result<(usize, Strategy)> {
    opt_routes_with_cap(instance, DEFAULT_LEAF_CAP)
}

pub fn opt_routes_with_cap(instance: &Instance, cap: usize) -> Result<(usize, Strategy)> {
    let search = search_partitions(instance, cap)?;
    Ok((search.best_count, search.best_count_witness))
}

struct PartitionSearch {
    best_cost: Weight,
    best_cost_witness: Strategy,
    best_count: usize,
    best_count_witness: Strategy,
}

fn search_partitions(instance: &Instance, cap: usize) -> Result<PartitionSearch> {
    let leaves = instance.leaves();
    if leaves.len() > cap {
        return Err(Error::CapExceeded {
            leaves: leaves.len(),
            cap,
        });
    }

    let mut best_cost: Option<(Weight, Vec<Vec<NodeId>>)> = None;
    let mut best_count: Option<(usize, Weight, Vec<Vec<NodeId>>)> = None;

    for_each_partition(leaves.len(), |assign, parts| {
        let mut groups: Vec<Vec<NodeId>> = vec![Vec::new(); parts];
        for (leaf_idx, part) in assign.iter().enumerate() {
            groups[*part].push(leaves[leaf_idx]);
        }
        let mut cost = Weight::zero();
        for group in &groups {
            let set: BTreeSet<NodeId> = group.iter().copied().collect();
            let len = steiner_weight(instance, &set).double();
            if &len > instance.budget() {
                return; // this partition has an overlong group
            }
            cost = cost + len;
        }
        if best_cost.as_ref().map_or(true, |(c, _)| cost < *c) {
            best_cost = Some((cost.clone(), groups.clone()));
        }
        let better_count = match &best_count {
            None => true,
            Some((k, c, _)) => parts < *k || (parts == *k && cost < *c),
        };
        if better_count {
            best_count = Some((parts, cost, groups));
        }
    });

    let (cost, cost_groups) = best_cost.ok_or_else(|| {
        Error::InvalidInstance("no feasible partition: some leaf is out of reach".into())
    })?;
    let (count, _, count_groups) = best_count.expect("same feasibility as best_cost");

    let witness = |groups: &[Vec<NodeId>]| -> Strategy {
        Strategy::new(
            groups
                .iter()
                .map(|g| steiner_route(instance, &g.iter().copied().collect()))
                .collect(),
        )
    };
    Ok(PartitionSearch {
        best_cost: cost,
        best_cost_witness: witness(&cost_groups),
        best_count: count,
        best_count_witness: witness(&count_groups),
    })
}

/// Enumerates set partitions of `{0..n}` as restricted growth strings, in
/// lexicographic order. `f` receives the assignment and the part count.
fn for_each_partition(n: usize, mut f: impl FnMut(&[usize], usize)) {
    if n == 0 {
        f(&[], 0);
        return;
    }
    let mut assign = vec![0usize; n];
    let mut max = vec![1usize; n]; // max[i] = 1 + max(assign[..=i])
    loop {
        f(&assign, max[n - 1]);
        // Advance to the next restricted growth string.
        let mut i = n - 1;
        loop {
            if i == 0 {
                return;
            }
            if assign[i] < max[i - 1] {
                break;
            }
            i -= 1;
        }
        assign[i] += 1;
        max[i] = max[i - 1].max(assign[i] + 1);
        for k in i + 1..n {
            assign[k] = 0;
            max[k] = max[k - 1];
        }
    }
}

/// A route encoded as a leaf sequence plus an end anchor; translating it
/// concatenates the root-to-first-leaf path, the leaf-to-leaf paths, the
/// path from the last leaf to the anchor (or its closest ancestor present in
/// the tree) and the anchor-to-root path.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PotentialRoute {
    pub leaves: Vec<NodeId>,
    pub anchor: NodeId,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PotentialStrategy {
    pub routes: Vec<PotentialRoute>,
}

pub fn translate_potential_route(instance: &Instance, pr: &PotentialRoute) -> Result<Route> {
    if pr.leaves.is_empty() {
        return Err(Error::MalformedRoute(
            "potential route with no leaves".into(),
        ));
    }
    for &l in &pr.leaves {
        if !instance.is_leaf(l) {
            return Err(Error::MalformedRoute(format!(
                "`{}` is not a leaf",
                instance.name(l)
            )));
        }
    }
    let root = instance.root();
    let mut vertices = instance.root_path(pr.leaves[0]);
    for pair in pr.leaves.windows(2) {
        let path = instance.path_between(pair[0], pair[1]);
        vertices.extend_from_slice(&path[1..]);
    }
    let last = *pr.leaves.last().unwrap();
    let to_anchor = instance.path_between(last, pr.anchor);
    vertices.extend_from_slice(&to_anchor[1..]);
    let mut home = instance.root_path(pr.anchor);
    home.reverse();
    vertices.extend_from_slice(&home[1..]);
    debug_assert_eq!(vertices[0], root);
    debug_assert_eq!(*vertices.last().unwrap(), root);
    Ok(Route::new(vertices))
}

pub fn translate_potential_strategy(
    instance: &Instance,
    ps: &PotentialStrategy,
    first_budget: Option<&Weight>,
) -> Result<Strategy> {
    let routes: Result<Vec<Route>> = ps
        .routes
        .iter()
        .map(|pr| translate_potential_route(instance, pr))
        .collect();
    Ok(Strategy {
        routes: routes?,
        first_budget: first_budget.cloned(),
    })
}

/// All potential routes over distinct-leaf sequences of length `1..=max_len`
/// and all anchors, in deterministic order.
pub fn enumerate_potential_routes(instance: &Instance, max_len: usize) -> Vec<PotentialRoute> {
    let leaves = instance.leaves();
    let anchors: Vec<NodeId> = instance.node_ids().collect();
    let mut out = Vec::new();
    for k in 1..=max_len.min(leaves.len()) {
        for seq in leaves.iter().copied().permutations(k) {
            for &anchor in &anchors {
                out.push(PotentialRoute {
                    leaves: seq.clone(),
                    anchor,
                });
            }
        }
    }
    out
}

/// Streams every potential strategy with up to `max_routes` routes together
/// with its feasibility verdict. Exhaustive only at desk scale: the stream
/// has `|routes|^k` elements per route count `k`.
pub fn enumerate_potential_strategies<'a>(
    instance: &'a Instance,
    max_routes: usize,
    first_budget: Option<&'a Weight>,
) -> Result<impl Iterator<Item = (PotentialStrategy, Verdict)> + 'a> {
    let leaves = instance.leaves();
    if leaves.len() > DEFAULT_ENUM_CAP {
        return Err(Error::CapExceeded {
            leaves: leaves.len(),
            cap: DEFAULT_ENUM_CAP,
        });
    }
    let routes = enumerate_potential_routes(instance, leaves.len());
    let max_routes = max_routes.min(leaves.len()).max(1);
    let iter = (1..=max_routes).flat_map(move |k| {
        let routes = routes.clone();
        (0..k)
            .map(move |_| routes.clone())
            .multi_cartesian_product()
            .map(move |combo| {
                let ps = PotentialStrategy { routes: combo };
                let verdict = verdict_for(instance, &ps, first_budget);
                (ps, verdict)
            })
    });
    Ok(iter)
}

pub fn verdict_for(
    instance: &Instance,
    ps: &PotentialStrategy,
    first_budget: Option<&Weight>,
) -> Verdict {
    match translate_potential_strategy(instance, ps, first_budget) {
        Ok(strategy) => {
            validate_strategy(instance, &strategy).expect("translated routes are well formed")
        }
        Err(_) => Verdict::Uncovered {
            nodes: instance.node_ids().collect(),
        },
    }
}

/// Minimum cost over all feasible potential strategies, computed without
/// materializing the strategy stream: per leaf set, the cheapest route is
/// found by brute force over leaf orders (anchoring at the root, which never
/// lengthens a route), then a cover DP combines leaf sets. Cost is additive
/// and route order is irrelevant without a first budget, so this equals the
/// stream minimum.
pub fn min_cost_over_potential_strategies(instance: &Instance, cap: usize) -> Result<Weight> {
    let leaves = instance.leaves();
    let n = leaves.len();
    if n > cap {
        return Err(Error::CapExceeded { leaves: n, cap });
    }
    if n == 0 {
        return Ok(Weight::zero());
    }

    // best[mask] = cheapest single route whose leaf set is exactly `mask`,
    // if one fits the budget.
    let full = (1usize << n) - 1;
    let mut best: Vec<Option<Weight>> = vec![None; full + 1];
    for mask in 1..=full {
        let members: Vec<NodeId> = (0..n)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| leaves[i])
            .collect();
        let mut cheapest: Option<Weight> = None;
        for perm in members.iter().copied().permutations(members.len()) {
            let pr = PotentialRoute {
                leaves: perm,
                anchor: instance.root(),
            };
            let route = translate_potential_route(instance, &pr)?;
            let len = route_length(instance, &route)?;
            if cheapest.as_ref().map_or(true, |c| len < *c) {
                cheapest = Some(len);
            }
        }
        let cheapest = cheapest.expect("nonempty mask");
        if &cheapest <= instance.budget() {
            best[mask] = Some(cheapest);
        }
    }

    let mut dp: Vec<Option<Weight>> = vec![None; full + 1];
    dp[0] = Some(Weight::zero());
    for mask in 1..=full {
        // Iterate proper submasks that contain the lowest set bit, so each
        // group is chosen once.
        let low = mask & mask.wrapping_neg();
        let mut sub = mask;
        let mut best_here: Option<Weight> = None;
        while sub > 0 {
            if sub & low != 0 {
                if let (Some(group), Some(rest)) = (&best[sub], &dp[mask & !sub]) {
                    let total = group + rest;
                    if best_here.as_ref().map_or(true, |b| total < *b) {
                        best_here = Some(total);
                    }
                }
            }
            sub = (sub - 1) & mask;
        }
        dp[mask] = best_here;
    }
    dp[full]
        .clone()
        .ok_or_else(|| Error::InvalidInstance("no feasible potential strategy".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::tree::Instance;

    fn set(t: &Instance, names: &[&str]) -> BTreeSet<NodeId> {
        names.iter().map(|n| t.node(n).unwrap()).collect()
    }

    #[test]
    fn steiner_weight_examples() {
        let t = fixtures::two_fork();
        assert_eq!(
            steiner_weight(&t, &set(&t, &["c", "d"])),
            Weight::from_int(9)
        );
        assert_eq!(
            steiner_weight(&t, &set(&t, &["c", "d", "f", "g"])),
            Weight::from_int(17)
        );
        assert_eq!(steiner_weight(&t, &BTreeSet::new()), Weight::zero());
    }

    #[test]
    fn opt_cost_two_fork() {
        let t = fixtures::two_fork();
        let (cost, witness) = opt_cost(&t).unwrap();
        assert_eq!(cost, Weight::from_int(34));
        assert!(validate_strategy(&t, &witness).unwrap().is_feasible());
        assert_eq!(witness.cost(&t).unwrap(), cost);
        assert_eq!(witness.route_count(), 2);
    }

    #[test]
    fn opt_cost_heavy_path() {
        let t = fixtures::heavy_path();
        let (cost, witness) = opt_cost(&t).unwrap();
        assert_eq!(cost, Weight::from_int(34));
        assert!(validate_strategy(&t, &witness).unwrap().is_feasible());
    }

    #[test]
    fn opt_cost_star_forces_singletons() {
        let t = Instance::builder(Weight::from_int(10))
            .edge("r", "l1", Weight::from_int(5))
            .edge("r", "l2", Weight::from_int(5))
            .edge("r", "l3", Weight::from_int(5))
            .build()
            .unwrap();
        let (cost, _) = opt_cost(&t).unwrap();
        assert_eq!(cost, Weight::from_int(30));
        let (count, _) = opt_routes(&t).unwrap();
        assert_eq!(count, 3);
    }

    #[test]
    fn opt_routes_two_fork() {
        let t = fixtures::two_fork();
        let (count, witness) = opt_routes(&t).unwrap();
        assert_eq!(count, 2);
        assert!(validate_strategy(&t, &witness).unwrap().is_feasible());
    }

    #[test]
    fn observation_route_count_lower_bound() {
        for t in [fixtures::two_fork(), fixtures::heavy_path()] {
            let (cost, _) = opt_cost(&t).unwrap();
            let (count, _) = opt_routes(&t).unwrap();
            let bound = (cost / t.budget().clone()).ceil();
            assert!(Weight::from_int(count as i64) >= bound);
        }
    }

    #[test]
    fn cap_is_enforced() {
        let t = fixtures::two_fork();
        assert!(matches!(
            opt_cost_with_cap(&t, 3),
            Err(Error::CapExceeded { leaves: 4, cap: 3 })
        ));
    }

    #[test]
    fn translate_examples() {
        let t = fixtures::two_fork();
        let a = t.node("a").unwrap();
        let b = t.node("b").unwrap();
        let pr = PotentialRoute {
            leaves: vec![t.node("c").unwrap(), t.node("d").unwrap()],
            anchor: a,
        };
        let route = translate_potential_route(&t, &pr).unwrap();
        let names: Vec<&str> = route.vertices.iter().map(|v| t.name(*v)).collect();
        assert_eq!(names, vec!["a", "b", "c", "b", "d", "b", "a"]);
        assert_eq!(route_length(&t, &route).unwrap(), Weight::from_int(18));

        let anchored = PotentialRoute {
            leaves: vec![t.node("c").unwrap()],
            anchor: b,
        };
        assert_eq!(
            route_length(&t, &translate_potential_route(&t, &anchored).unwrap()).unwrap(),
            Weight::from_int(14)
        );

        let single = PotentialRoute {
            leaves: vec![t.node("g").unwrap()],
            anchor: a,
        };
        assert_eq!(
            route_length(&t, &translate_potential_route(&t, &single).unwrap()).unwrap(),
            Weight::from_int(12)
        );
    }

    #[test]
    fn translate_rejects_non_leaf() {
        let t = fixtures::two_fork();
        let pr = PotentialRoute {
            leaves: vec![t.node("b").unwrap()],
            anchor: t.root(),
        };
        assert!(translate_potential_route(&t, &pr).is_err());
    }

    #[test]
    fn potential_strategy_verdicts() {
        let t = fixtures::two_fork();
        let a = t.root();
        let good = PotentialStrategy {
            routes: vec![
                PotentialRoute {
                    leaves: vec![t.node("c").unwrap(), t.node("d").unwrap()],
                    anchor: a,
                },
                PotentialRoute {
                    leaves: vec![t.node("f").unwrap(), t.node("g").unwrap()],
                    anchor: a,
                },
            ],
        };
        assert!(verdict_for(&t, &good, None).is_feasible());

        let overlong = PotentialStrategy {
            routes: vec![PotentialRoute {
                leaves: vec![t.node("c").unwrap(), t.node("f").unwrap()],
                anchor: a,
            }],
        };
        match verdict_for(&t, &overlong, None) {
            Verdict::Overlong { route: 0, excess } => {
                assert_eq!(excess, Weight::from_int(6)); // 26 over budget 20
            }
            other => panic!("expected overlong, got {other:?}"),
        }

        let partial = PotentialStrategy {
            routes: vec![PotentialRoute {
                leaves: vec![t.node("c").unwrap(), t.node("d").unwrap()],
                anchor: a,
            }],
        };
        assert!(matches!(
            verdict_for(&t, &partial, None),
            Verdict::Uncovered { .. }
        ));
    }

    #[test]
    fn dp_minimum_matches_partition_oracle_on_fixtures() {
        for t in [fixtures::two_fork(), fixtures::heavy_path()] {
            let (cost, _) = opt_cost(&t).unwrap();
            let via_routes = min_cost_over_potential_strategies(&t, 6).unwrap();
            assert_eq!(cost, via_routes);
        }
    }

    #[test]
    fn stream_enumeration_agrees_on_a_tiny_tree() {
        let t = Instance::builder(Weight::from_int(8))
            .edge("r", "a", Weight::from_int(2))
            .edge("r", "b", Weight::from_int(3))
            .build()
            .unwrap();
        let (cost, _) = opt_cost(&t).unwrap();
        let mut best: Option<Weight> = None;
        for (ps, verdict) in enumerate_potential_strategies(&t, 2, None).unwrap() {
            if verdict.is_feasible() {
                let s = translate_potential_strategy(&t, &ps, None).unwrap();
                let c = s.cost(&t).unwrap();
                if best.as_ref().map_or(true, |b| c < *b) {
                    best = Some(c);
                }
            }
        }
        assert_eq!(best.unwrap(), cost);
        assert_eq!(min_cost_over_potential_strategies(&t, 5).unwrap(), cost);
    }

    #[test]
    fn no_covering_route_beats_twice_the_steiner_weight() {
        use itertools::Itertools;
        // For every leaf group, the cheapest enumerated route over all leaf
        // orders and anchors has length exactly twice the spanning weight.
        let t = fixtures::two_fork();
        let leaves = t.leaves();
        for k in 1..=leaves.len() {
            for group in leaves.iter().copied().combinations(k) {
                let set: BTreeSet<NodeId> = group.iter().copied().collect();
                let target = steiner_weight(&t, &set).double();
                let mut best: Option<Weight> = None;
                for perm in group.iter().copied().permutations(k) {
                    for anchor in t.node_ids() {
                        let pr = PotentialRoute {
                            leaves: perm.clone(),
                            anchor,
                        };
                        let len =
                            route_length(&t, &translate_potential_route(&t, &pr).unwrap()).unwrap();
                        assert!(len >= target, "route beat the spanning bound");
                        if best.as_ref().map_or(true, |b| len < *b) {
                            best = Some(len);
                        }
                    }
                }
                assert_eq!(best.unwrap(), target);
            }
        }
    }
}
