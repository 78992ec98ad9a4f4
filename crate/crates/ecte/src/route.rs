//! Routes (closed root walks) and exploration strategies.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::tree::{EdgeId, Instance, NodeId};
use crate::weight::Weight;

/// A walk `(v_0, ..., v_l)` with consecutive vertices adjacent and both
/// endpoints at the root. The one-vertex walk `(r)` is the empty route.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Route {
    pub vertices: Vec<NodeId>,
}

impl Route {
    pub fn new(vertices: Vec<NodeId>) -> Self {
        Route { vertices }
    }

    pub fn trivial(root: NodeId) -> Self {
        Route {
            vertices: vec![root],
        }
    }

    pub fn visited(&self) -> BTreeSet<NodeId> {
        self.vertices.iter().copied().collect()
    }

    pub fn visits(&self, v: NodeId) -> bool {
        self.vertices.contains(&v)
    }
}

/// An ordered sequence of routes; feasible when every route respects the
/// budget (the first route against `first_budget` when present) and every
/// tree vertex is visited.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Strategy {
    pub routes: Vec<Route>,
    pub first_budget: Option<Weight>,
}

impl Strategy {
    pub fn new(routes: Vec<Route>) -> Self {
        Strategy {
            routes,
            first_budget: None,
        }
    }

    pub fn with_first_budget(routes: Vec<Route>, first_budget: Weight) -> Self {
        Strategy {
            routes,
            first_budget: Some(first_budget),
        }
    }

    pub fn route_count(&self) -> usize {
        self.routes.len()
    }

    pub fn cost(&self, instance: &Instance) -> Result<Weight> {
        let mut total = Weight::zero();
        for r in &self.routes {
            total = total + route_length(instance, r)?;
        }
        Ok(total)
    }

    /// Node names in order of first visit, concatenating routes in order.
    /// Names make the sequence comparable across related trees.
    pub fn discovery_order<'a>(&self, instance: &'a Instance) -> Vec<&'a str> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for r in &self.routes {
            for &v in &r.vertices {
                if seen.insert(v) {
                    out.push(instance.name(v));
                }
            }
        }
        out
    }
}

/// Exact length of a route: the sum of traversed edge weights, with
/// multiplicity.
pub fn route_length(instance: &Instance, route: &Route) -> Result<Weight> {
    let vs = &route.vertices;
    if vs.is_empty() {
        return Err(Error::MalformedRoute("empty vertex sequence".into()));
    }
    let root = instance.root();
    if vs[0] != root || *vs.last().unwrap() != root {
        return Err(Error::MalformedRoute(format!(
            "route must start and end at the root `{}`",
            instance.name(root)
        )));
    }
    let mut total = Weight::zero();
    for pair in vs.windows(2) {
        let (u, v) = (pair[0], pair[1]);
        if instance.parent(v) == Some(u) {
            total = total + instance.parent_edge_weight(v);
        } else if instance.parent(u) == Some(v) {
            total = total + instance.parent_edge_weight(u);
        } else {
            return Err(Error::MalformedRoute(format!(
                "`{}` and `{}` are not adjacent",
                instance.name(u),
                instance.name(v)
            )));
        }
    }
    Ok(total)
}

/// Validation verdict for a strategy. Length violations are reported before
/// coverage gaps; the first overlong route wins.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Verdict {
    Feasible,
    Overlong { route: usize, excess: Weight },
    Uncovered { nodes: Vec<NodeId> },
}

impl Verdict {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Verdict::Feasible)
    }
}

pub fn validate_strategy(instance: &Instance, strategy: &Strategy) -> Result<Verdict> {
    for (i, route) in strategy.routes.iter().enumerate() {
        let len = route_length(instance, route)?;
        let bound = match (&strategy.first_budget, i) {
            (Some(b), 0) => b,
            _ => instance.budget(),
        };
        if &len > bound {
            return Ok(Verdict::Overlong {
                route: i,
                excess: len - bound,
            });
        }
    }
    let mut covered: BTreeSet<NodeId> = BTreeSet::new();
    for route in &strategy.routes {
        covered.extend(route.vertices.iter().copied());
    }
    let missing: Vec<NodeId> = instance
        .node_ids()
        .filter(|v| !covered.contains(v))
        .collect();
    if missing.is_empty() {
        Ok(Verdict::Feasible)
    } else {
        Ok(Verdict::Uncovered { nodes: missing })
    }
}

/// Total weight of traversals of edges in `edges` across all routes, each
/// traversal counted separately. Edges are identified by their lower
/// endpoint.
pub fn restricted_cost(
    instance: &Instance,
    strategy: &Strategy,
    edges: &BTreeSet<EdgeId>,
) -> Result<Weight> {
    let mut total = Weight::zero();
    for route in &strategy.routes {
        total = total + restricted_route_cost(instance, route, edges)?;
    }
    Ok(total)
}

pub(crate) fn restricted_route_cost(
    instance: &Instance,
    route: &Route,
    edges: &BTreeSet<EdgeId>,
) -> Result<Weight> {
    let mut total = Weight::zero();
    for pair in route.vertices.windows(2) {
        let (u, v) = (pair[0], pair[1]);
        let lower = if instance.parent(v) == Some(u) {
            v
        } else if instance.parent(u) == Some(v) {
            u
        } else {
            return Err(Error::MalformedRoute(format!(
                "`{}` and `{}` are not adjacent",
                instance.name(u),
                instance.name(v)
            )));
        };
        if edges.contains(&lower) {
            total = total + instance.parent_edge_weight(lower);
        }
    }
    Ok(total)
}
