//! Euler-tour DFS traversals under pluggable child orders, and minimum
//! closed walks covering a target set.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::route::Route;
use crate::tree::{Instance, NodeId};
use crate::weight::Weight;

/// How to order each node's children when fixing the DFS traversal.
#[derive(Clone, Debug)]
pub enum ChildOrder {
    /// The order stored in the instance (file order).
    FileOrder,
    /// Children sorted by name.
    Lexicographic,
    /// A reproducible shuffle per node, derived from the seed.
    Seeded(u64),
    /// An explicit permutation per node. Nodes absent from the map keep
    /// file order; listed nodes must permute exactly their children.
    Explicit(BTreeMap<NodeId, Vec<NodeId>>),
}

impl ChildOrder {
    pub fn describe(&self) -> String {
        match self {
            ChildOrder::FileOrder => "file-order".into(),
            ChildOrder::Lexicographic => "lexicographic".into(),
            ChildOrder::Seeded(seed) => format!("seeded-random(seed={seed})"),
            ChildOrder::Explicit(_) => "explicit".into(),
        }
    }
}

/// A depth-first closed walk visiting every vertex, traversing each edge
/// exactly twice; its length is twice the tree weight.
#[derive(Clone, Debug)]
pub struct EulerTour {
    pub vertices: Vec<NodeId>,
    pub policy: String,
}

impl EulerTour {
    pub fn last_index(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn length(&self, instance: &Instance) -> Weight {
        instance.total_weight().double()
    }

    /// Prefix lengths: `prefix[p]` is the length of `(v_0, ..., v_p)`.
    pub fn prefix_lengths(&self, instance: &Instance) -> Vec<Weight> {
        let mut out = Vec::with_capacity(self.vertices.len());
        let mut acc = Weight::zero();
        out.push(acc.clone());
        for pair in self.vertices.windows(2) {
            let (u, v) = (pair[0], pair[1]);
            let lower = if instance.parent(v) == Some(u) { v } else { u };
            acc = acc + instance.parent_edge_weight(lower);
            out.push(acc.clone());
        }
        out
    }
}

/// The DFS tour of the whole tree under the given child order.
pub fn dfs_tour(instance: &Instance, policy: &ChildOrder) -> Result<EulerTour> {
    let order = resolve_order(instance, policy)?;
    let mut vertices = Vec::with_capacity(2 * instance.node_count());
    walk(instance, instance.root(), &order, &mut vertices);
    Ok(EulerTour {
        vertices,
        policy: policy.describe(),
    })
}

fn resolve_order(
    instance: &Instance,
    policy: &ChildOrder,
) -> Result<BTreeMap<NodeId, Vec<NodeId>>> {
    let mut order = BTreeMap::new();
    match policy {
        ChildOrder::FileOrder => {
            for v in instance.node_ids() {
                order.insert(v, instance.children(v).to_vec());
            }
        }
        ChildOrder::Lexicographic => {
            for v in instance.node_ids() {
                let mut kids = instance.children(v).to_vec();
                kids.sort_by(|a, b| instance.name(*a).cmp(instance.name(*b)));
                order.insert(v, kids);
            }
        }
        ChildOrder::Seeded(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            // Visit nodes in preorder so the shuffle stream is reproducible.
            for v in instance.preorder() {
                let mut kids = instance.children(v).to_vec();
                kids.shuffle(&mut rng);
                order.insert(v, kids);
            }
        }
        ChildOrder::Explicit(map) => {
            for v in instance.node_ids() {
                match map.get(&v) {
                    None => {
                        order.insert(v, instance.children(v).to_vec());
                    }
                    Some(perm) => {
                        let expected: BTreeSet<NodeId> =
                            instance.children(v).iter().copied().collect();
                        let given: BTreeSet<NodeId> = perm.iter().copied().collect();
                        if expected != given || perm.len() != expected.len() {
                            return Err(Error::BadChildOrder(format!(
                                "permutation at `{}` does not match its children",
                                instance.name(v)
                            )));
                        }
                        order.insert(v, perm.clone());
                    }
                }
            }
        }
    }
    Ok(order)
}

fn walk(
    instance: &Instance,
    v: NodeId,
    order: &BTreeMap<NodeId, Vec<NodeId>>,
    out: &mut Vec<NodeId>,
) {
    out.push(v);
    for &c in &order[&v] {
        walk(instance, c, order, out);
        out.push(v);
    }
}

/// Minimum closed walk from the root covering `targets`: a DFS of the
/// subtree spanned by the root and the targets, of length exactly twice the
/// spanned subtree's weight.
pub fn steiner_route(instance: &Instance, targets: &BTreeSet<NodeId>) -> Route {
    let root = instance.root();
    if targets.is_empty() {
        return Route::trivial(root);
    }
    let mut marked: BTreeSet<NodeId> = BTreeSet::new();
    for &t in targets {
        for v in instance.ancestors_inclusive(t) {
            if !marked.insert(v) {
                break;
            }
        }
    }
    let mut vertices = Vec::new();
    walk_marked(instance, root, &marked, &mut vertices);
    Route::new(vertices)
}

fn walk_marked(instance: &Instance, v: NodeId, marked: &BTreeSet<NodeId>, out: &mut Vec<NodeId>) {
    out.push(v);
    for &c in instance.children(v) {
        if marked.contains(&c) {
            walk_marked(instance, c, marked, out);
            out.push(v);
        }
    }
}
