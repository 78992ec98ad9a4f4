//! Online exploration of an initially unknown tree.
//!
//! The agent starts at the root knowing only the budget. Visiting a vertex
//! for the first time reveals its downward edges (with weights); every
//! query to the hidden tree goes through a [`RevealGate`] that refuses
//! questions about unvisited vertices, so clairvoyance is structurally
//! impossible. The stop rule needs the return distance of the current
//! vertex, which the agent knows because it walked the path.
//!
//! The produced strategy is bit-identical to offline piecemeal DFS on the
//! traversal induced by the child decisions actually taken.

use std::collections::{BTreeMap, BTreeSet};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::route::{Route, Strategy};
use crate::tree::{Instance, NodeId};
use crate::weight::Weight;

/// Mediates all access to the hidden instance, recording queries and
/// refusing any about vertices the agent has not visited.
pub struct RevealGate<'a> {
    hidden: &'a Instance,
    visited: BTreeSet<NodeId>,
    queries: usize,
    violations: usize,
}

impl<'a> RevealGate<'a> {
    pub fn new(hidden: &'a Instance) -> Self {
        RevealGate {
            hidden,
            visited: BTreeSet::new(),
            queries: 0,
            violations: 0,
        }
    }

    pub fn root(&self) -> NodeId {
        self.hidden.root()
    }

    pub fn budget(&self) -> &Weight {
        self.hidden.budget()
    }

    /// Marks `v` visited and reveals its downward edges. Legal only for the
    /// root or a child of an already-visited vertex.
    pub fn visit(&mut self, v: NodeId) -> Result<Vec<(NodeId, Weight)>> {
        self.queries += 1;
        let legal = v == self.hidden.root()
            || self
                .hidden
                .parent(v)
                .is_some_and(|p| self.visited.contains(&p));
        if !legal {
            self.violations += 1;
            return Err(Error::RevealViolation(format!(
                "queried `{}` before visiting its parent",
                self.hidden.name(v)
            )));
        }
        self.visited.insert(v);
        Ok(self
            .hidden
            .children(v)
            .iter()
            .map(|c| (*c, self.hidden.parent_edge_weight(*c).clone()))
            .collect())
    }

    pub fn queries(&self) -> usize {
        self.queries
    }

    pub fn violations(&self) -> usize {
        self.violations
    }
}

/// How the agent picks the next unexplored child.
pub enum ChildPolicy<'a> {
    /// Take revealed children in the order they were revealed.
    RevealOrder,
    /// Pick uniformly at random among the revealed unexplored children,
    /// reproducibly from the seed.
    SeededRandom(u64),
    /// An adversary picks, seeing only the current vertex and the revealed
    /// unexplored children there. Returning anything else is an error.
    Adversarial(Box<dyn FnMut(NodeId, &[NodeId]) -> NodeId + 'a>),
}

/// One first-visit event: the walk step at which `node` was first visited
/// and the downward edges revealed there.
#[derive(Clone, Debug)]
pub struct RevealEvent {
    pub step: usize,
    pub node: NodeId,
    pub edges: Vec<(NodeId, Weight)>,
}

#[derive(Clone, Debug, Default)]
pub struct RevealLog {
    pub events: Vec<RevealEvent>,
    pub recharges: usize,
    pub gate_queries: usize,
    pub gate_violations: usize,
}

pub struct SimulationOutcome {
    pub strategy: Strategy,
    pub log: RevealLog,
    /// Child order actually taken at each vertex; feeding it to
    /// [`crate::traversal::ChildOrder::Explicit`] reproduces the induced
    /// traversal.
    pub child_order: BTreeMap<NodeId, Vec<NodeId>>,
}

pub fn simulate(instance: &Instance, mut policy: ChildPolicy<'_>) -> Result<SimulationOutcome> {
    let mut gate = RevealGate::new(instance);
    let root = gate.root();
    let budget = instance.budget().clone();
    let mut rng = match &policy {
        ChildPolicy::SeededRandom(seed) => Some(ChaCha8Rng::seed_from_u64(*seed)),
        _ => None,
    };

    // Knowledge accumulated strictly from reveals.
    let mut depth: BTreeMap<NodeId, Weight> = BTreeMap::new();
    let mut parent: BTreeMap<NodeId, (NodeId, Weight)> = BTreeMap::new();
    let mut pending_children: BTreeMap<NodeId, Vec<NodeId>> = BTreeMap::new();
    let mut child_order: BTreeMap<NodeId, Vec<NodeId>> = BTreeMap::new();

    let mut log = RevealLog::default();
    let mut step = 0usize;

    let reveal = |v: NodeId,
                  gate: &mut RevealGate,
                  depth: &mut BTreeMap<NodeId, Weight>,
                  parent_map: &mut BTreeMap<NodeId, (NodeId, Weight)>,
                  pending: &mut BTreeMap<NodeId, Vec<NodeId>>,
                  log: &mut RevealLog,
                  step: usize|
     -> Result<()> {
        let edges = gate.visit(v)?;
        let dv = depth.get(&v).cloned().unwrap_or_else(Weight::zero);
        for (c, w) in &edges {
            depth.insert(*c, &dv + w);
            parent_map.insert(*c, (v, w.clone()));
        }
        pending.insert(v, edges.iter().map(|(c, _)| *c).collect());
        log.events.push(RevealEvent {
            step,
            node: v,
            edges,
        });
        Ok(())
    };

    depth.insert(root, Weight::zero());
    reveal(
        root,
        &mut gate,
        &mut depth,
        &mut parent,
        &mut pending_children,
        &mut log,
        step,
    )?;

    let mut routes: Vec<Route> = Vec::new();
    let mut cur = root;
    let mut route_vertices = vec![root];
    let mut start_depth = Weight::zero(); // depth of the route's resume vertex
    let mut progress = Weight::zero(); // length walked since the resume vertex
    let mut committed: Option<NodeId> = None; // tour step already chosen

    let known_root_path = |v: NodeId, parent: &BTreeMap<NodeId, (NodeId, Weight)>| -> Vec<NodeId> {
        let mut path = vec![v];
        let mut c = v;
        while let Some((p, _)) = parent.get(&c) {
            path.push(*p);
            c = *p;
        }
        path.reverse();
        path
    };

    loop {
        let next = committed.or_else(|| {
            let pend = pending_children.get_mut(&cur)?;
            if pend.is_empty() {
                return None;
            }
            let idx = match &mut policy {
                ChildPolicy::RevealOrder => 0,
                ChildPolicy::SeededRandom(_) => rng
                    .as_mut()
                    .expect("rng set for seeded policy")
                    .gen_range(0..pend.len()),
                ChildPolicy::Adversarial(pick) => {
                    let choice = pick(cur, pend);
                    match pend.iter().position(|c| *c == choice) {
                        Some(i) => i,
                        None => return Some(choice), // validated below
                    }
                }
            };
            Some(pend.remove(idx))
        });

        match next {
            Some(child) => {
                let Some((p, w)) = parent.get(&child).cloned() else {
                    return Err(Error::RevealViolation(
                        "policy returned an unrevealed child".into(),
                    ));
                };
                if p != cur {
                    return Err(Error::RevealViolation(
                        "policy returned a child of another vertex".into(),
                    ));
                }
                let child_depth = &depth[&cur] + &w;
                let needed = &start_depth + &progress + &w + &child_depth;
                if needed <= budget {
                    // Take the step; first visits reveal.
                    committed = None;
                    route_vertices.push(child);
                    progress = progress + &w;
                    step += 1;
                    child_order.entry(cur).or_default().push(child);
                    cur = child;
                    reveal(
                        cur,
                        &mut gate,
                        &mut depth,
                        &mut parent,
                        &mut pending_children,
                        &mut log,
                        step,
                    )?;
                } else {
                    // Stop making progress: return to the root, recharge,
                    // and resume from here with the same committed step.
                    committed = Some(child);
                    let back = known_root_path(cur, &parent);
                    for v in back.iter().rev().skip(1) {
                        route_vertices.push(*v);
                    }
                    let total = &start_depth + &progress + &depth[&cur];
                    assert!(total <= budget, "route exceeded budget at commitment");
                    routes.push(Route::new(std::mem::take(&mut route_vertices)));
                    route_vertices = known_root_path(cur, &parent);
                    start_depth = depth[&cur].clone();
                    progress = Weight::zero();
                }
            }
            None => {
                if cur == root {
                    break;
                }
                let (p, w) = parent[&cur].clone();
                route_vertices.push(p);
                progress = progress + &w;
                step += 1;
                cur = p;
            }
        }
    }

    let total = &start_depth + &progress + &depth[&cur];
    assert!(total <= budget, "final route exceeded budget");
    routes.push(Route::new(route_vertices));

    log.recharges = routes.len() - 1;
    log.gate_queries = gate.queries();
    log.gate_violations = gate.violations();

    Ok(SimulationOutcome {
        strategy: Strategy::new(routes),
        log,
        child_order,
    })
}
