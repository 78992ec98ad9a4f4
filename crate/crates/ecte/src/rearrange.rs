//! Tree rearrangement: spreading bunched light edges down a subdivided
//! heavy edge so that every heavy-path vertex carries at most one light
//! edge and all light-edge potentials become pairwise distinct.
//!
//! At each vertex `u` with heavy degree one and `d > 1` light downward
//! edges, the heavy edge `{u, h}` becomes a path `u = v_0, ..., v_{d-1}, h`
//! whose first `d-1` edges have length `eps/(d-1)` and whose last edge keeps
//! the remainder, preserving the `u`-`h` distance. The `i`-th light edge
//! (in an order that preserves the fixed depth-first visiting order of the
//! original nodes) reattaches at `v_{i-1}` with its weight reduced by
//! `eps`. Distances between original nodes never grow, so feasibility can
//! only improve; a small enough `eps`, chosen from the least budget excess
//! any encoded route can realize, keeps every infeasible route infeasible.

use std::collections::BTreeSet;

use crate::certificates::{CheckItem, CheckStatus};
use crate::error::{Error, Result};
use crate::oracle::{translate_potential_route, PotentialRoute, PotentialStrategy};
use crate::piecemeal::thresholds;
use crate::route::route_length;
use crate::traversal::{dfs_tour, ChildOrder};
use crate::tree::{Instance, InstanceBuilder, NodeId};
use crate::weight::Weight;

/// Cap on leaf count for deficiency enumeration and the exhaustive
/// feasibility comparison.
pub const REARRANGE_ENUM_CAP: usize = 6;

/// A light edge that was reattached (possibly to a new subdivision vertex)
/// with its weight reduced.
#[derive(Clone, Debug)]
pub struct MovedEdge {
    pub child: String,
    pub new_parent: String,
    pub new_weight: Weight,
}

/// The perturbed tree, the `eps` used, and the correspondence bookkeeping.
/// Original nodes keep their names; subdivision vertices get fresh ones.
#[derive(Clone, Debug)]
pub struct RearrangeResult {
    pub tree: Instance,
    pub epsilon: Weight,
    pub moved_edges: Vec<MovedEdge>,
    pub subdivision_nodes: Vec<String>,
}

impl RearrangeResult {
    pub fn changed(&self) -> bool {
        !self.moved_edges.is_empty()
    }

    /// The node of the perturbed tree corresponding to an original node.
    pub fn map_node(&self, original: &Instance, v: NodeId) -> NodeId {
        self.tree
            .node(original.name(v))
            .expect("original nodes are preserved by construction")
    }

    /// Closest ancestor (inclusive) of a perturbed-tree node that exists in
    /// the original tree.
    pub fn closest_original_ancestor(&self, original: &Instance, v: NodeId) -> NodeId {
        let mut cur = v;
        loop {
            if original.contains(self.tree.name(cur)) {
                return original
                    .node(self.tree.name(cur))
                    .expect("checked membership");
            }
            cur = self.tree.parent(cur).expect("the root is an original node");
        }
    }
}

/// True when, along the heavy path from the root (if the root has heavy
/// degree one), every vertex except the bottom carries at most one light
/// downward edge. Vacuously true otherwise. On failure the first offending
/// vertex is returned.
pub fn satisfies_st(instance: &Instance) -> (bool, Option<NodeId>) {
    let cl = instance.classify();
    let root = instance.root();
    if cl.heavydeg(root) != 1 {
        return (true, None);
    }
    let mut cur = root;
    while cl.heavydeg(cur) == 1 {
        let lights = instance
            .children(cur)
            .iter()
            .filter(|c| !cl.edge_heavy(**c))
            .count();
        if lights > 1 {
            return (false, Some(cur));
        }
        cur = instance
            .children(cur)
            .iter()
            .copied()
            .find(|c| cl.edge_heavy(*c))
            .expect("heavydeg 1");
    }
    (true, None)
}

/// Applies the subdivision construction at every vertex with heavy degree
/// one and more than one light downward edge. When no vertex qualifies the
/// instance is returned unchanged (`moved_edges` empty).
pub fn build_t_prime(instance: &Instance, epsilon: &Weight) -> Result<RearrangeResult> {
    let min_edge = min_edge_weight(instance);
    if !epsilon.is_positive() || *epsilon >= min_edge {
        return Err(Error::BadEpsilon(format!(
            "eps must lie strictly between 0 and the minimum edge weight {min_edge}, got {epsilon}"
        )));
    }

    let cl = instance.classify();
    let qualifying: Vec<NodeId> = instance
        .preorder()
        .into_iter()
        .filter(|&u| {
            cl.heavydeg(u) == 1
                && instance
                    .children(u)
                    .iter()
                    .filter(|c| !cl.edge_heavy(**c))
                    .count()
                    > 1
        })
        .collect();

    if qualifying.is_empty() {
        return Ok(RearrangeResult {
            tree: instance.clone(),
            epsilon: epsilon.clone(),
            moved_edges: Vec::new(),
            subdivision_nodes: Vec::new(),
        });
    }

    // Per-parent adjacency with explicit order, keyed by name.
    let mut children: Vec<(String, Vec<(String, Weight)>)> = Vec::new();
    let slot_of = |name: &str, children: &mut Vec<(String, Vec<(String, Weight)>)>| -> usize {
        match children.iter().position(|(n, _)| n == name) {
            Some(i) => i,
            None => {
                children.push((name.to_string(), Vec::new()));
                children.len() - 1
            }
        }
    };
    for v in instance.preorder() {
        let slot = slot_of(instance.name(v), &mut children);
        children[slot].1 = instance
            .children(v)
            .iter()
            .map(|c| {
                (
                    instance.name(*c).to_string(),
                    instance.parent_edge_weight(*c).clone(),
                )
            })
            .collect();
    }

    let mut taken: BTreeSet<String> = instance
        .node_ids()
        .map(|v| instance.name(v).to_string())
        .collect();
    let fresh = |base: &str, taken: &mut BTreeSet<String>| -> String {
        let mut name = base.to_string();
        while taken.contains(&name) {
            name.push('\'');
        }
        taken.insert(name.clone());
        name
    };

    let mut moved_edges = Vec::new();
    let mut subdivision_nodes = Vec::new();

    for &u in &qualifying {
        let heavy_child = instance
            .children(u)
            .iter()
            .copied()
            .find(|c| cl.edge_heavy(*c))
            .expect("heavydeg 1");
        let heavy_weight = instance.parent_edge_weight(heavy_child).clone();
        let kids = instance.children(u).to_vec();
        let split = kids.iter().position(|c| *c == heavy_child).unwrap();
        let before: Vec<NodeId> = kids[..split].to_vec();
        let after: Vec<NodeId> = kids[split + 1..].to_vec();
        let d = before.len() + after.len();
        debug_assert!(d > 1);

        // Fresh subdivision vertices u = v_0, n_1, ..., n_{d-1}, then the
        // heavy child.
        let mut path_names = vec![instance.name(u).to_string()];
        for i in 1..d {
            let name = fresh(&format!("{}~{}", instance.name(u), i), &mut taken);
            subdivision_nodes.push(name.clone());
            path_names.push(name);
        }
        path_names.push(instance.name(heavy_child).to_string());

        // Light edge assigned to v_i: children preceding the heavy child in
        // the original order go top-down (visited before descending);
        // children following it are stacked bottom-up (visited while
        // unwinding), which preserves the original visiting order.
        let assigned: Vec<(NodeId, bool)> = before
            .iter()
            .map(|c| (*c, true)) // light child first
            .chain(after.iter().rev().map(|c| (*c, false))) // path child first
            .collect();

        let step = epsilon / &Weight::from_int((d - 1) as i64);
        let slot = slot_of(instance.name(u), &mut children);
        children[slot].1.clear();
        for i in 0..d {
            let (light, light_first) = assigned[i];
            let light_name = instance.name(light).to_string();
            let new_weight = instance.parent_edge_weight(light) - epsilon;
            moved_edges.push(MovedEdge {
                child: light_name.clone(),
                new_parent: path_names[i].clone(),
                new_weight: new_weight.clone(),
            });
            let next_weight = if i < d - 1 {
                step.clone()
            } else {
                &heavy_weight - epsilon
            };
            let slot = slot_of(&path_names[i], &mut children);
            let light_entry = (light_name, new_weight);
            let path_entry = (path_names[i + 1].clone(), next_weight);
            children[slot].1 = if light_first {
                vec![light_entry, path_entry]
            } else {
                vec![path_entry, light_entry]
            };
        }
    }

    // Emit edges from the root so the builder sees parents before children.
    let mut builder = InstanceBuilder::new_internal(instance.budget().clone());
    let mut stack = vec![instance.name(instance.root()).to_string()];
    while let Some(parent) = stack.pop() {
        if let Some((_, kids)) = children.iter().find(|(n, _)| *n == parent) {
            for (child, weight) in kids {
                builder = builder.edge(&parent, child, weight.clone());
            }
            for (child, _) in kids.iter().rev() {
                stack.push(child.clone());
            }
        }
    }

    Ok(RearrangeResult {
        tree: builder.build()?,
        epsilon: epsilon.clone(),
        moved_edges,
        subdivision_nodes,
    })
}

fn min_edge_weight(instance: &Instance) -> Weight {
    instance
        .node_ids()
        .filter(|v| *v != instance.root())
        .map(|v| instance.parent_edge_weight(v).clone())
        .min()
        .unwrap_or_else(Weight::one)
}

/// Largest budget excess among the translated routes of an infeasible
/// potential strategy (the first route judged against `first_budget` when
/// given). Errors when the strategy is feasible or fails only coverage.
pub fn deficiency(
    instance: &Instance,
    ps: &PotentialStrategy,
    first_budget: Option<&Weight>,
) -> Result<Weight> {
    let mut worst: Option<Weight> = None;
    for (i, pr) in ps.routes.iter().enumerate() {
        let route = translate_potential_route(instance, pr)?;
        let len = route_length(instance, &route)?;
        let bound = match (first_budget, i) {
            (Some(b), 0) => b.clone(),
            _ => instance.budget().clone(),
        };
        if len > bound {
            let excess = len - bound;
            if worst.as_ref().map_or(true, |w| excess > *w) {
                worst = Some(excess);
            }
        }
    }
    worst.ok_or_else(|| {
        Error::NoDeficiency(
            "every route fits its budget (feasible or coverage-only failure)".into(),
        )
    })
}

/// The perturbation magnitude: `min(minimum edge weight, least positive
/// budget excess any encoded route realizes at any relevant first-route
/// threshold or at the budget) / (2 n (m + 1))`. Routes shrink by less than
/// this under the construction, so infeasible strategies stay infeasible.
pub fn compute_epsilon(instance: &Instance) -> Result<Weight> {
    let leaves = instance.leaves();
    if leaves.len() > REARRANGE_ENUM_CAP {
        return Err(Error::CapExceeded {
            leaves: leaves.len(),
            cap: REARRANGE_ENUM_CAP,
        });
    }

    let tour = dfs_tour(instance, &ChildOrder::FileOrder)?;
    let mut bounds = thresholds(instance, &tour).values;
    if !bounds.contains(instance.budget()) {
        bounds.push(instance.budget().clone());
    }
    bounds.sort();

    let mut min_excess: Option<Weight> = None;
    for pr in potential_routes_by_name(instance, leaves.len()) {
        let route = translate_by_name(instance, &pr)?;
        let len = route_length(instance, &route)?;
        // The tightest positive excess for this length is against the
        // largest bound strictly below it.
        if let Some(bound) = bounds.iter().filter(|b| **b < len).max() {
            let excess = &len - bound;
            if min_excess.as_ref().map_or(true, |m| excess < *m) {
                min_excess = Some(excess);
            }
        }
    }

    let min_edge = min_edge_weight(instance);
    let base = match min_excess {
        Some(e) => e.min(min_edge),
        None => min_edge,
    };
    let n = instance.node_count() as i64;
    let m = instance.edge_count() as i64;
    let eps = base / Weight::from_int(2 * n * (m + 1));
    debug_assert!(eps.is_positive());
    Ok(eps)
}

/// A potential route keyed by names, usable against related trees.
#[derive(Clone, Debug)]
pub struct NamedRoute {
    pub leaves: Vec<String>,
    pub anchor: String,
}

fn potential_routes_by_name(instance: &Instance, max_len: usize) -> Vec<NamedRoute> {
    use itertools::Itertools;
    let leaves: Vec<String> = instance
        .leaves()
        .into_iter()
        .map(|v| instance.name(v).to_string())
        .collect();
    let anchors: Vec<String> = instance
        .node_ids()
        .map(|v| instance.name(v).to_string())
        .collect();
    let mut out = Vec::new();
    for k in 1..=max_len.min(leaves.len()) {
        for seq in leaves.iter().cloned().permutations(k) {
            for anchor in &anchors {
                out.push(NamedRoute {
                    leaves: seq.clone(),
                    anchor: anchor.clone(),
                });
            }
        }
    }
    out
}

fn translate_by_name(instance: &Instance, named: &NamedRoute) -> Result<crate::route::Route> {
    let pr = PotentialRoute {
        leaves: named
            .leaves
            .iter()
            .map(|n| instance.node(n))
            .collect::<Result<Vec<NodeId>>>()?,
        anchor: instance.node(&named.anchor)?,
    };
    translate_potential_route(instance, &pr)
}

/// Verdicts for the three construction conditions.
#[derive(Clone, Debug)]
pub struct ConditionReport {
    pub p1: CheckItem,
    pub p2: CheckItem,
    pub p3: CheckItem,
}

impl ConditionReport {
    pub fn all_passed(&self) -> bool {
        self.p1.passed() && self.p2.passed() && self.p3.passed()
    }

    pub fn items(&self) -> [&CheckItem; 3] {
        [&self.p1, &self.p2, &self.p3]
    }
}

/// Checks, on a rearrangement result:
///
/// 1. every perturbed-tree vertex with heavy degree one has at most two
///    downward edges;
/// 2. the perturbed tree's default traversal visits the original nodes in
///    the original default order;
/// 3. an encoded route fits a budget in the original tree exactly when it
///    fits it in the perturbed tree, for every relevant first-route
///    threshold and the budget itself. Feasibility of any encoded strategy
///    is the conjunction of such per-route verdicts (coverage is shared
///    between the trees), so this is equivalent to comparing strategy
///    feasibility over the whole collection.
pub fn verify_conditions(original: &Instance, result: &RearrangeResult) -> ConditionReport {
    let tprime = &result.tree;

    // P1: structural.
    let cl = tprime.classify();
    let mut p1_witness = None;
    for v in tprime.node_ids() {
        if cl.heavydeg(v) == 1 && tprime.children(v).len() > 2 {
            p1_witness = Some(tprime.name(v).to_string());
            break;
        }
    }
    let p1 = check(
        "at-most-two-downward-at-heavydeg-one",
        p1_witness.is_none(),
        match &p1_witness {
            Some(w) => format!("violated at `{w}`"),
            None => "every heavy-degree-one vertex has <= 2 downward edges".into(),
        },
    );

    // P2: the default traversal of the perturbed tree, restricted to
    // original nodes, discovers them in the original default order.
    let original_order: Vec<&str> = original
        .preorder()
        .into_iter()
        .map(|v| original.name(v))
        .collect();
    let projected: Vec<&str> = tprime
        .preorder()
        .into_iter()
        .map(|v| tprime.name(v))
        .filter(|n| original.contains(n))
        .collect();
    let p2 = check(
        "original-visit-order-preserved",
        original_order == projected,
        if original_order == projected {
            "default traversal projects onto the original order".into()
        } else {
            format!("projected order {projected:?} != original {original_order:?}")
        },
    );

    // P3: per-route budget equivalence across both trees.
    let p3 = match p3_route_equivalence(original, result) {
        Ok(None) => check(
            "feasibility-preserved",
            true,
            "no route flips any budget".into(),
        ),
        Ok(Some(witness)) => check("feasibility-preserved", false, witness),
        Err(Error::CapExceeded { leaves, cap }) => CheckItem {
            name: "feasibility-preserved",
            status: CheckStatus::Skipped(format!("leaf count {leaves} exceeds cap {cap}")),
            lhs: String::new(),
            rhs: String::new(),
            note: String::new(),
        },
        Err(e) => check("feasibility-preserved", false, format!("error: {e}")),
    };

    ConditionReport { p1, p2, p3 }
}

fn p3_route_equivalence(original: &Instance, result: &RearrangeResult) -> Result<Option<String>> {
    let tprime = &result.tree;
    let leaves = original.leaves();
    if leaves.len() > REARRANGE_ENUM_CAP {
        return Err(Error::CapExceeded {
            leaves: leaves.len(),
            cap: REARRANGE_ENUM_CAP,
        });
    }

    // Budgets come from the original tree's threshold set (plus the budget
    // itself): those are the first-route caps an adversary can realize.
    // Thresholds of the perturbed tree are tight for some of its own routes
    // by construction and are not comparison points.
    let tour = dfs_tour(original, &ChildOrder::FileOrder)?;
    let mut bounds = thresholds(original, &tour).values;
    bounds.push(original.budget().clone());
    bounds.sort();
    bounds.dedup();

    // Anchors range over the perturbed tree; translating into the original
    // substitutes the closest surviving ancestor.
    for pr in potential_routes_by_name(tprime, leaves.len()) {
        let len_prime = {
            let r = translate_by_name(tprime, &pr)?;
            route_length(tprime, &r)?
        };
        let len_orig = {
            let anchor_prime = tprime.node(&pr.anchor)?;
            let anchor = result.closest_original_ancestor(original, anchor_prime);
            let named = NamedRoute {
                leaves: pr.leaves.clone(),
                anchor: original.name(anchor).to_string(),
            };
            let r = translate_by_name(original, &named)?;
            route_length(original, &r)?
        };
        for b in &bounds {
            let ok_orig = len_orig <= *b;
            let ok_prime = len_prime <= *b;
            if ok_orig != ok_prime {
                return Ok(Some(format!(
                    "route through [{}] anchored at `{}` flips at budget {}: length {} vs {}",
                    pr.leaves.join(", "),
                    pr.anchor,
                    b,
                    len_orig,
                    len_prime
                )));
            }
        }
    }
    Ok(None)
}

fn check(name: &'static str, ok: bool, note: String) -> CheckItem {
    CheckItem {
        name,
        status: if ok {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        },
        lhs: String::new(),
        rhs: String::new(),
        note,
    }
}
