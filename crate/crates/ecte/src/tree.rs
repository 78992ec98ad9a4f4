//! Edge-weighted rooted trees paired with a route budget.
//!
//! An [`Instance`] is immutable after construction: node identifiers are
//! opaque string tokens interned into dense [`NodeId`]s, children keep an
//! explicit order (the default depth-first order), and every edge weight is a
//! strictly positive exact rational. Construction enforces that the tree is
//! connected, acyclic and no deeper than half the budget.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::weight::Weight;

/// Dense index of a node within one [`Instance`].
///
/// Ids are only meaningful relative to the instance that produced them;
/// correspondence across trees (e.g. after rearrangement) goes through names.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct NodeId(pub usize);

/// Identifies the edge between a non-root node and its parent.
pub type EdgeId = NodeId;

#[derive(Clone, Debug)]
struct Node {
    name: String,
    parent: Option<NodeId>,
    parent_weight: Weight, // zero for the root
    children: Vec<NodeId>,
    depth: Weight, // exact distance from the root
}

/// An edge-weighted rooted tree with budget `B`, height at most `B/2`.
#[derive(Clone, Debug)]
pub struct Instance {
    nodes: Vec<Node>,
    index: BTreeMap<String, NodeId>,
    root: NodeId,
    budget: Weight,
    subtree_weight: Vec<Weight>,
}

/// Collects edges in file order, then assembles and validates an [`Instance`].
pub struct InstanceBuilder {
    budget: Weight,
    edges: Vec<(String, String, Weight)>,
    require_budget_gt_one: bool,
}

impl InstanceBuilder {
    pub fn new(budget: Weight) -> Self {
        InstanceBuilder {
            budget,
            edges: Vec::new(),
            require_budget_gt_one: true,
        }
    }

    /// Internal constructor for derived sub-instances whose budget is
    /// `2*potential` of some node and may legitimately be small.
    pub(crate) fn new_internal(budget: Weight) -> Self {
        InstanceBuilder {
            budget,
            edges: Vec::new(),
            require_budget_gt_one: false,
        }
    }

    pub fn edge(mut self, parent: &str, child: &str, weight: Weight) -> Self {
        self.edges.push((parent.into(), child.into(), weight));
        self
    }

    pub fn build(self) -> Result<Instance> {
        if self.require_budget_gt_one && self.budget <= Weight::one() {
            return Err(Error::InvalidInstance(format!(
                "budget must exceed 1, got {}",
                self.budget
            )));
        }
        if !self.budget.is_positive() {
            return Err(Error::InvalidInstance("budget must be positive".into()));
        }
        if self.edges.is_empty() {
            return Err(Error::InvalidInstance("empty tree: no edges".into()));
        }
        for (p, c, w) in &self.edges {
            if !w.is_positive() {
                return Err(Error::InvalidInstance(format!(
                    "edge {p}-{c} has non-positive weight {w}"
                )));
            }
            if p == c {
                return Err(Error::InvalidInstance(format!("self-loop at `{p}`")));
            }
        }

        // Intern names in first-appearance order; detect duplicate children.
        let mut index: BTreeMap<String, NodeId> = BTreeMap::new();
        let mut names: Vec<String> = Vec::new();
        let intern = |name: &str, names: &mut Vec<String>, index: &mut BTreeMap<String, NodeId>| {
            *index.entry(name.to_string()).or_insert_with(|| {
                names.push(name.to_string());
                NodeId(names.len() - 1)
            })
        };
        let mut parent: Vec<Option<(NodeId, Weight)>> = Vec::new();
        let mut children: Vec<Vec<NodeId>> = Vec::new();
        for (p, c, w) in &self.edges {
            let pid = intern(p, &mut names, &mut index);
            let cid = intern(c, &mut names, &mut index);
            for v in [pid, cid] {
                if v.0 >= parent.len() {
                    parent.resize(v.0 + 1, None);
                    children.resize(v.0 + 1, Vec::new());
                }
            }
            if parent[cid.0].is_some() {
                return Err(Error::InvalidInstance(format!(
                    "duplicate child `{c}`: already attached"
                )));
            }
            parent[cid.0] = Some((pid, w.clone()));
            children[pid.0].push(cid);
        }

        let roots: Vec<NodeId> = (0..names.len())
            .map(NodeId)
            .filter(|v| parent[v.0].is_none())
            .collect();
        let root = match roots.as_slice() {
            [r] => *r,
            [] => {
                return Err(Error::InvalidInstance(
                    "no root: every node appears as a child (cycle)".into(),
                ))
            }
            many => {
                let list: Vec<&str> = many.iter().map(|v| names[v.0].as_str()).collect();
                return Err(Error::InvalidInstance(format!(
                    "multiple roots: {}",
                    list.join(", ")
                )));
            }
        };

        // Depths by preorder walk; also proves connectivity from the root.
        let mut depth: Vec<Option<Weight>> = vec![None; names.len()];
        depth[root.0] = Some(Weight::zero());
        let mut stack = vec![root];
        let mut seen = 1usize;
        while let Some(v) = stack.pop() {
            let dv = depth[v.0].clone().unwrap();
            for &c in &children[v.0] {
                let w = &parent[c.0].as_ref().unwrap().1;
                if depth[c.0].is_some() {
                    return Err(Error::InvalidInstance(format!(
                        "cycle through `{}`",
                        names[c.0]
                    )));
                }
                depth[c.0] = Some(&dv + w);
                seen += 1;
                stack.push(c);
            }
        }
        if seen != names.len() {
            let missing: Vec<&str> = (0..names.len())
                .filter(|i| depth[*i].is_none())
                .map(|i| names[i].as_str())
                .collect();
            return Err(Error::InvalidInstance(format!(
                "unreachable from root: {}",
                missing.join(", ")
            )));
        }

        let half = self.budget.half();
        for (i, d) in depth.iter().enumerate() {
            let d = d.as_ref().unwrap();
            if *d > half {
                return Err(Error::InvalidInstance(format!(
                    "node `{}` at depth {} exceeds half the budget {}",
                    names[i], d, half
                )));
            }
        }

        let nodes: Vec<Node> = (0..names.len())
            .map(|i| Node {
                name: names[i].clone(),
                parent: parent[i].as_ref().map(|(p, _)| *p),
                parent_weight: parent[i]
                    .as_ref()
                    .map(|(_, w)| w.clone())
                    .unwrap_or_else(Weight::zero),
                children: children[i].clone(),
                depth: depth[i].clone().unwrap(),
            })
            .collect();

        let mut instance = Instance {
            nodes,
            index,
            root,
            budget: self.budget,
            subtree_weight: Vec::new(),
        };
        instance.subtree_weight = instance.compute_subtree_weights();
        Ok(instance)
    }
}

impl Instance {
    pub fn builder(budget: Weight) -> InstanceBuilder {
        InstanceBuilder::new(budget)
    }

    /// Single-node tree (no edges); only reachable through this constructor,
    /// since the file format cannot express it.
    pub fn single(root: &str, budget: Weight) -> Result<Self> {
        if budget <= Weight::one() {
            return Err(Error::InvalidInstance("budget must exceed 1".into()));
        }
        let mut index = BTreeMap::new();
        index.insert(root.to_string(), NodeId(0));
        Ok(Instance {
            nodes: vec![Node {
                name: root.to_string(),
                parent: None,
                parent_weight: Weight::zero(),
                children: Vec::new(),
                depth: Weight::zero(),
            }],
            index,
            root: NodeId(0),
            budget,
            subtree_weight: vec![Weight::zero()],
        })
    }

    fn compute_subtree_weights(&self) -> Vec<Weight> {
        let mut w = vec![Weight::zero(); self.nodes.len()];
        // Children have larger preorder ranks than parents is not guaranteed
        // by id order, so accumulate bottom-up over an explicit postorder.
        for v in self.postorder() {
            let total: Weight = self.nodes[v.0]
                .children
                .iter()
                .map(|c| &w[c.0] + &self.nodes[c.0].parent_weight)
                .sum();
            w[v.0] = total;
        }
        w
    }

    pub fn root(&self) -> NodeId {
        self.root
    }

    pub fn budget(&self) -> &Weight {
        &self.budget
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn node_ids(&self) -> impl Iterator<Item = NodeId> {
        (0..self.nodes.len()).map(NodeId)
    }

    pub fn name(&self, v: NodeId) -> &str {
        &self.nodes[v.0].name
    }

    pub fn node(&self, name: &str) -> Result<NodeId> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownNode(name.to_string()))
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }

    pub fn parent(&self, v: NodeId) -> Option<NodeId> {
        self.nodes[v.0].parent
    }

    /// Weight of the edge between `v` and its parent. Zero for the root.
    pub fn parent_edge_weight(&self, v: NodeId) -> &Weight {
        &self.nodes[v.0].parent_weight
    }

    pub fn children(&self, v: NodeId) -> &[NodeId] {
        &self.nodes[v.0].children
    }

    pub fn is_leaf(&self, v: NodeId) -> bool {
        self.nodes[v.0].children.is_empty()
    }

    pub fn leaves(&self) -> Vec<NodeId> {
        self.node_ids().filter(|v| self.is_leaf(*v)).collect()
    }

    pub fn adjacent(&self, u: NodeId, v: NodeId) -> bool {
        self.parent(u) == Some(v) || self.parent(v) == Some(u)
    }

    /// Exact distance from the root.
    pub fn depth(&self, v: NodeId) -> &Weight {
        &self.nodes[v.0].depth
    }

    pub fn height(&self) -> Weight {
        self.node_ids()
            .map(|v| self.depth(v).clone())
            .max()
            .unwrap_or_else(Weight::zero)
    }

    /// Total edge weight of the subtree rooted at `v`.
    pub fn subtree_weight(&self, v: NodeId) -> &Weight {
        &self.subtree_weight[v.0]
    }

    pub fn total_weight(&self) -> &Weight {
        &self.subtree_weight[self.root.0]
    }

    /// `B/2 - d(root, v)`; non-negative by the height invariant.
    pub fn potential(&self, v: NodeId) -> Weight {
        self.budget.half() - self.depth(v)
    }

    /// Potential of the subtree hanging on the parent edge of `child`,
    /// i.e. the potential of the edge's higher endpoint.
    pub fn edge_potential(&self, child: NodeId) -> Weight {
        match self.parent(child) {
            Some(p) => self.potential(p),
            None => self.potential(child),
        }
    }

    /// Weight of the edge-subtree: the parent edge of `child` plus the
    /// subtree below `child`.
    pub fn edge_subtree_weight(&self, child: NodeId) -> Weight {
        self.parent_edge_weight(child) + self.subtree_weight(child)
    }

    pub fn ancestors_inclusive(&self, v: NodeId) -> Vec<NodeId> {
        let mut path = vec![v];
        let mut cur = v;
        while let Some(p) = self.parent(cur) {
            path.push(p);
            cur = p;
        }
        path
    }

    /// Path from the root to `v`, inclusive.
    pub fn root_path(&self, v: NodeId) -> Vec<NodeId> {
        let mut path = self.ancestors_inclusive(v);
        path.reverse();
        path
    }

    pub fn lca(&self, u: NodeId, v: NodeId) -> NodeId {
        let pu = self.root_path(u);
        let pv = self.root_path(v);
        let mut last = self.root;
        for (a, b) in pu.iter().zip(pv.iter()) {
            if a == b {
                last = *a;
            } else {
                break;
            }
        }
        last
    }

    /// Sum of edge weights along the unique `u`-`v` path.
    pub fn distance(&self, u: NodeId, v: NodeId) -> Weight {
        let l = self.lca(u, v);
        self.depth(u) + self.depth(v) - self.depth(l).double()
    }

    /// Vertex sequence of the unique path from `u` to `v`, inclusive.
    pub fn path_between(&self, u: NodeId, v: NodeId) -> Vec<NodeId> {
        let l = self.lca(u, v);
        let mut up = Vec::new();
        let mut cur = u;
        while cur != l {
            up.push(cur);
            cur = self.parent(cur).expect("lca is an ancestor");
        }
        up.push(l);
        let mut down = Vec::new();
        cur = v;
        while cur != l {
            down.push(cur);
            cur = self.parent(cur).expect("lca is an ancestor");
        }
        down.reverse();
        up.extend(down);
        up
    }

    pub fn preorder(&self) -> Vec<NodeId> {
        let mut out = Vec::with_capacity(self.nodes.len());
        let mut stack = vec![self.root];
        while let Some(v) = stack.pop() {
            out.push(v);
            for &c in self.nodes[v.0].children.iter().rev() {
                stack.push(c);
            }
        }
        out
    }

    pub fn postorder(&self) -> Vec<NodeId> {
        let mut order = self.preorder();
        order.reverse();
        order
    }

    /// Heaviness classification of every node and edge.
    pub fn classify(&self) -> Classification {
        let node_heavy: Vec<bool> = self
            .node_ids()
            .map(|v| *self.subtree_weight(v) > self.potential(v))
            .collect();
        let edge_heavy: Vec<bool> = self
            .node_ids()
            .map(|v| {
                if self.parent(v).is_none() {
                    false
                } else {
                    self.edge_subtree_weight(v) > self.edge_potential(v)
                }
            })
            .collect();
        let heavydeg: Vec<usize> = self
            .node_ids()
            .map(|v| self.children(v).iter().filter(|c| edge_heavy[c.0]).count())
            .collect();
        Classification {
            node_heavy,
            edge_heavy,
            heavydeg,
        }
    }

    /// Standalone instance for the subtree rooted at `v`, with the given
    /// budget (typically `2*potential(v)`). Child order is preserved.
    pub fn subtree_instance(&self, v: NodeId, budget: Weight) -> Result<Instance> {
        if self.is_leaf(v) {
            return Instance::single_internal(self.name(v), budget);
        }
        let mut b = InstanceBuilder::new_internal(budget);
        for u in self.preorder_from(v) {
            for &c in self.children(u) {
                b = b.edge(
                    self.name(u),
                    self.name(c),
                    self.parent_edge_weight(c).clone(),
                );
            }
        }
        b.build()
    }

    /// Standalone instance for one downward edge of `v` plus everything
    /// below it, rooted at `v` itself.
    pub fn edge_subtree_instance(&self, child: NodeId, budget: Weight) -> Result<Instance> {
        let parent = self
            .parent(child)
            .ok_or_else(|| Error::InvalidInstance("root has no parent edge".into()))?;
        let mut b = InstanceBuilder::new_internal(budget).edge(
            self.name(parent),
            self.name(child),
            self.parent_edge_weight(child).clone(),
        );
        for u in self.preorder_from(child) {
            for &c in self.children(u) {
                b = b.edge(
                    self.name(u),
                    self.name(c),
                    self.parent_edge_weight(c).clone(),
                );
            }
        }
        b.build()
    }

    fn preorder_from(&self, v: NodeId) -> Vec<NodeId> {
        let mut out = Vec::new();
        let mut stack = vec![v];
        while let Some(u) = stack.pop() {
            out.push(u);
            for &c in self.nodes[u.0].children.iter().rev() {
                stack.push(c);
            }
        }
        out
    }

    fn single_internal(root: &str, budget: Weight) -> Result<Instance> {
        let mut index = BTreeMap::new();
        index.insert(root.to_string(), NodeId(0));
        Ok(Instance {
            nodes: vec![Node {
                name: root.to_string(),
                parent: None,
                parent_weight: Weight::zero(),
                children: Vec::new(),
                depth: Weight::zero(),
            }],
            index,
            root: NodeId(0),
            budget,
            subtree_weight: vec![Weight::zero()],
        })
    }
}

/// Per-node and per-edge heaviness, plus heavy degrees.
///
/// A subtree is heavy when its total weight strictly exceeds the potential of
/// its root; an edge-subtree is judged against the potential of the edge's
/// higher endpoint.
#[derive(Clone, Debug)]
pub struct Classification {
    node_heavy: Vec<bool>,
    edge_heavy: Vec<bool>,
    heavydeg: Vec<usize>,
}

impl Classification {
    pub fn node_heavy(&self, v: NodeId) -> bool {
        self.node_heavy[v.0]
    }

    /// Heaviness of the parent edge of `child` together with its subtree.
    pub fn edge_heavy(&self, child: NodeId) -> bool {
        self.edge_heavy[child.0]
    }

    pub fn heavydeg(&self, v: NodeId) -> usize {
        self.heavydeg[v.0]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn distance_examples() {
        let t = fixtures::two_fork();
        let a = t.node("a").unwrap();
        let f = t.node("f").unwrap();
        assert_eq!(t.distance(a, f), Weight::from_int(6));
        assert_eq!(t.distance(a, a), Weight::zero());

        let hp = fixtures::heavy_path();
        let r = hp.node("r").unwrap();
        let x = hp.node("x").unwrap();
        assert_eq!(hp.distance(r, x), Weight::from_int(4));
    }

    #[test]
    fn distance_between_siblings() {
        let t = fixtures::two_fork();
        let c = t.node("c").unwrap();
        let d = t.node("d").unwrap();
        assert_eq!(t.distance(c, d), Weight::from_int(6));
        let f = t.node("f").unwrap();
        assert_eq!(t.distance(c, f), Weight::from_int(13));
    }

    #[test]
    fn potential_examples() {
        let t = fixtures::two_fork();
        assert_eq!(t.potential(t.node("a").unwrap()), Weight::from_int(10));
        assert_eq!(t.potential(t.node("b").unwrap()), Weight::from_int(7));

        let hp = fixtures::heavy_path();
        assert_eq!(hp.potential(hp.node("rp").unwrap()), Weight::from_int(8));
    }

    #[test]
    fn potential_telescopes_along_parent_edges() {
        let t = fixtures::heavy_path_ties();
        for v in t.node_ids() {
            if let Some(p) = t.parent(v) {
                assert_eq!(t.potential(v), t.potential(p) - t.parent_edge_weight(v));
            }
        }
        assert_eq!(t.potential(t.root()), t.budget().half());
    }

    #[test]
    fn classify_two_fork() {
        let t = fixtures::two_fork();
        let cl = t.classify();
        let a = t.node("a").unwrap();
        assert_eq!(*t.subtree_weight(a), Weight::from_int(17));
        assert!(cl.node_heavy(a));
        for v in t.node_ids() {
            if v != a {
                assert!(
                    !cl.edge_heavy(v),
                    "edge above {} should be light",
                    t.name(v)
                );
            }
        }
        assert_eq!(cl.heavydeg(a), 0);
    }

    #[test]
    fn classify_heavy_path() {
        let t = fixtures::heavy_path();
        let cl = t.classify();
        assert_eq!(cl.heavydeg(t.node("r").unwrap()), 1);
        assert_eq!(cl.heavydeg(t.node("p1").unwrap()), 1);
        assert_eq!(cl.heavydeg(t.node("rp").unwrap()), 0);
        assert_eq!(
            t.edge_subtree_weight(t.node("p1").unwrap()),
            Weight::from_int(15)
        );
        assert_eq!(
            t.edge_subtree_weight(t.node("rp").unwrap()),
            Weight::from_int(11)
        );
        assert_eq!(
            *t.subtree_weight(t.node("rp").unwrap()),
            Weight::from_int(10)
        );
    }

    #[test]
    fn single_edge_is_light() {
        let t = Instance::builder(Weight::from_int(10))
            .edge("r", "u", Weight::from_int(2))
            .build()
            .unwrap();
        let cl = t.classify();
        assert!(!cl.node_heavy(t.root()));
        assert_eq!(cl.heavydeg(t.root()), 0);
    }

    #[test]
    fn heavy_edge_endpoints_are_heavy() {
        let t = fixtures::heavy_path();
        let cl = t.classify();
        for v in t.node_ids() {
            if cl.edge_heavy(v) {
                assert!(cl.node_heavy(v));
                assert!(cl.node_heavy(t.parent(v).unwrap()));
            }
        }
    }

    #[test]
    fn builder_rejects_bad_trees() {
        let dup = Instance::builder(Weight::from_int(10))
            .edge("r", "a", Weight::one())
            .edge("r", "a", Weight::one())
            .build();
        assert!(dup.is_err());

        let two_roots = Instance::builder(Weight::from_int(10))
            .edge("r", "a", Weight::one())
            .edge("s", "b", Weight::one())
            .build();
        assert!(two_roots.is_err());

        let cycle = Instance::builder(Weight::from_int(10))
            .edge("a", "b", Weight::one())
            .edge("b", "a", Weight::one())
            .build();
        assert!(cycle.is_err());

        let too_deep = Instance::builder(Weight::from_int(4))
            .edge("r", "a", Weight::from_int(3))
            .build();
        assert!(too_deep.is_err());

        let zero_w = Instance::builder(Weight::from_int(4))
            .edge("r", "a", Weight::zero())
            .build();
        assert!(zero_w.is_err());
    }

    #[test]
    fn subtree_instance_keeps_order_and_weights() {
        let t = fixtures::heavy_path();
        let rp = t.node("rp").unwrap();
        let sub = t.subtree_instance(rp, t.potential(rp).double()).unwrap();
        assert_eq!(sub.node_count(), 5);
        assert_eq!(*sub.budget(), Weight::from_int(16));
        assert_eq!(*sub.total_weight(), Weight::from_int(10));
        let names: Vec<&str> = sub
            .children(sub.root())
            .iter()
            .map(|c| sub.name(*c))
            .collect();
        assert_eq!(names, vec!["c1", "c2", "c3", "c4"]);
    }
}
