//! Piecemeal depth-first search and its adversarial variants.
//!
//! A fixed Euler tour is decomposed greedily into budget-bounded routes.
//! Route `i` walks from the root straight to where route `i-1` stopped
//! making progress, continues along the tour as far as the budget allows,
//! and returns to the root. The stop test for tour position `p` compares
//!
//! ```text
//! d(r, v_j) + len(v_j ... v_p) + d(v_p, r) <= bound
//! ```
//!
//! where `v_j` is the resume point. Writing `f(p)` for the prefix length up
//! to `p` plus the return distance `d(v_p, r)`, the test is `f(p) <= bound +
//! prefix(j) - d(r, v_j)`. `f` grows by twice the edge weight on every
//! downward step and is flat on upward steps, so it is non-decreasing and
//! each route's stop index is the last position within a closed-form limit.

use crate::error::{Error, Result};
use crate::route::{Route, Strategy};
use crate::traversal::EulerTour;
use crate::tree::Instance;
use crate::weight::Weight;

/// The decomposition of one tour into budget-bounded routes, with the tour
/// indices where consecutive routes stopped making progress.
#[derive(Clone, Debug)]
pub struct PdfsTrace {
    pub strategy: Strategy,
    /// `stop_indices[0] = 0`; `stop_indices[i]` is where route `i` stopped.
    /// The final entry equals the last tour index.
    pub stop_indices: Vec<usize>,
    pub per_route_lengths: Vec<Weight>,
}

impl PdfsTrace {
    pub fn cost(&self) -> Weight {
        self.per_route_lengths.iter().sum()
    }

    pub fn route_count(&self) -> usize {
        self.strategy.routes.len()
    }
}

/// Plain piecemeal DFS: every route bounded by the instance budget.
pub fn pdfs(instance: &Instance, tour: &EulerTour) -> PdfsTrace {
    decompose(instance, tour, None).expect("budget bound cannot fail without a first budget")
}

/// First route bounded by `first_budget`, later routes by the budget. The
/// first route may make zero progress, in which case it is the one-vertex
/// route at the root.
pub fn adversarial_pdfs(
    instance: &Instance,
    tour: &EulerTour,
    first_budget: &Weight,
) -> Result<PdfsTrace> {
    if first_budget.is_negative() || first_budget > instance.budget() {
        return Err(Error::BadFirstBudget {
            got: first_budget.to_string(),
            budget: instance.budget().to_string(),
        });
    }
    decompose(instance, tour, Some(first_budget.clone()))
}

fn decompose(
    instance: &Instance,
    tour: &EulerTour,
    first_budget: Option<Weight>,
) -> Result<PdfsTrace> {
    let verts = &tour.vertices;
    let last = verts.len() - 1;
    let root = instance.root();
    debug_assert_eq!(verts[0], root);

    if last == 0 {
        // Degenerate single-vertex tour: one trivial route covers the root.
        return Ok(PdfsTrace {
            strategy: Strategy {
                routes: vec![Route::trivial(root)],
                first_budget,
            },
            stop_indices: vec![0, 0],
            per_route_lengths: vec![Weight::zero()],
        });
    }

    let prefix = tour.prefix_lengths(instance);
    // f(p) = prefix(p) + d(v_p, r); non-decreasing along the tour.
    let f: Vec<Weight> = (0..=last)
        .map(|p| &prefix[p] + instance.depth(verts[p]))
        .collect();

    let mut stop_indices = vec![0usize];
    let mut routes = Vec::new();
    let mut lengths = Vec::new();
    let mut j = 0usize;
    let mut first = true;

    while j < last || routes.is_empty() {
        let bound = match (&first_budget, first) {
            (Some(b), true) => b.clone(),
            _ => instance.budget().clone(),
        };
        // Stop test in f-space: f(p) <= bound + prefix(j) - d(r, v_j).
        let limit = bound + &prefix[j] - instance.depth(verts[j]);
        let mut next = j;
        while next < last && f[next + 1] <= limit {
            next += 1;
        }
        if !first {
            // Any non-first route can always afford one more tour step:
            // moving down to depth <= B/2 costs at most B, moving up costs
            // 2 d(r, v) <= B.
            assert!(next > j, "piecemeal route made no progress");
        }

        let mut vertices = instance.root_path(verts[j]);
        vertices.extend_from_slice(&verts[j + 1..=next]);
        let mut back = instance.root_path(verts[next]);
        back.reverse();
        vertices.extend_from_slice(&back[1..]);

        let len =
            instance.depth(verts[j]) + (&prefix[next] - &prefix[j]) + instance.depth(verts[next]);
        debug_assert!(len <= *instance.budget() || (first && first_budget.is_some()));

        routes.push(Route::new(vertices));
        lengths.push(len);
        stop_indices.push(next);
        j = next;
        first = false;
    }

    Ok(PdfsTrace {
        strategy: Strategy {
            routes,
            first_budget,
        },
        stop_indices,
        per_route_lengths: lengths,
    })
}

/// The finite set of first-route budgets that realizes every distinct
/// adversarial outcome: all distinct `f(p)` values up to `2*potential(root)`,
/// zero included.
#[derive(Clone, Debug)]
pub struct ThresholdSet {
    pub values: Vec<Weight>,
}

pub fn thresholds(instance: &Instance, tour: &EulerTour) -> ThresholdSet {
    let prefix = tour.prefix_lengths(instance);
    let cap = instance.potential(instance.root()).double();
    let mut values = vec![Weight::zero()];
    for (p, v) in tour.vertices.iter().enumerate() {
        let f = &prefix[p] + instance.depth(*v);
        if f <= cap && values.last() != Some(&f) {
            values.push(f);
        }
    }
    values.dedup();
    ThresholdSet { values }
}

/// The first-route budget (and its trace) maximizing total cost, ties broken
/// toward the smallest budget. The reported cost is at least the plain
/// piecemeal cost.
pub fn adversarial_dfs(instance: &Instance, tour: &EulerTour) -> (PdfsTrace, Weight) {
    let set = thresholds(instance, tour);
    let mut best: Option<(PdfsTrace, Weight, Weight)> = None;
    for b in &set.values {
        let trace = adversarial_pdfs(instance, tour, b).expect("thresholds are within range");
        let cost = trace.cost();
        let better = match &best {
            None => true,
            Some((_, _, best_cost)) => cost > *best_cost,
        };
        if better {
            best = Some((trace, b.clone(), cost));
        }
    }
    let (trace, argmax, _) = best.expect("threshold set is never empty");
    (trace, argmax)
}
