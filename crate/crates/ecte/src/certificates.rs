//! Heavy-path certificates: executable forms of the quantities behind the
//! constant-factor cost bound.
//!
//! When the root has heavy degree one, the tree decomposes into the heavy
//! path `P` from the root down to the first vertex `r'` whose heavy degree
//! differs from one, the subtree below `r'`, and light subtrees hanging off
//! `P`. The report extracts that decomposition; the sequences and cost
//! splits derived from it are checked as exact inequalities on concrete
//! strategies, never re-derived symbolically. A failed check is a bug
//! signal and prints both exact sides.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::oracle;
use crate::piecemeal::{adversarial_dfs, pdfs, PdfsTrace};
use crate::route::{restricted_cost, Strategy};
use crate::traversal::{dfs_tour, ChildOrder};
use crate::tree::{Instance, NodeId};
use crate::weight::Weight;

/// A light edge hanging off the heavy path.
#[derive(Clone, Debug)]
pub struct LightEdge {
    /// Lower endpoint (also the edge id).
    pub child: NodeId,
    /// Higher endpoint, a vertex of the heavy path.
    pub attach: NodeId,
    /// Potential of the higher endpoint.
    pub potential: Weight,
    /// Weight of the edge plus the whole subtree below it.
    pub weight: Weight,
}

/// The heavy path from the root, its light edges sorted by non-decreasing
/// potential, and the half-cost of optimally exploring the deep subtree.
#[derive(Clone, Debug)]
pub struct HeavyPathReport {
    pub r_prime: NodeId,
    /// Vertices from the root down to `r_prime`, inclusive.
    pub path: Vec<NodeId>,
    /// Total weight of the heavy path.
    pub path_weight: Weight,
    pub light_edges: Vec<LightEdge>,
    /// Half the optimal exploration cost of the subtree below `r_prime`,
    /// with budget twice its potential.
    pub w0: Weight,
    /// True when two light edges share a potential (rearrange first).
    pub potential_ties: bool,
    pub root_potential: Weight,
    pub r_prime_potential: Weight,
    path_potentials: BTreeMap<NodeId, Weight>,
}

impl HeavyPathReport {
    pub fn on_path(&self, v: NodeId) -> bool {
        self.path_potentials.contains_key(&v)
    }

    /// Lowest potential the route reaches among heavy-path vertices,
    /// ignoring whatever it reaches inside subtrees. Every route visits the
    /// root, so this is at most the root potential.
    pub fn lowest_path_potential(&self, route: &crate::route::Route) -> Weight {
        route
            .vertices
            .iter()
            .filter_map(|v| self.path_potentials.get(v))
            .min()
            .cloned()
            .expect("routes visit the root, which is on the path")
    }
}

/// Extracts the heavy path. Fails when the root is not heavy of degree one;
/// callers should use the base or multi-branch margin checks instead.
pub fn heavy_path(instance: &Instance) -> Result<HeavyPathReport> {
    let cl = instance.classify();
    let root = instance.root();
    if cl.heavydeg(root) != 1 {
        return Err(Error::NotApplicable(format!(
            "heavydeg(root) = {}, need exactly 1",
            cl.heavydeg(root)
        )));
    }

    let mut path = vec![root];
    let mut cur = root;
    while cl.heavydeg(cur) == 1 {
        let next = instance
            .children(cur)
            .iter()
            .copied()
            .find(|c| cl.edge_heavy(*c))
            .expect("heavydeg 1 means one heavy downward edge");
        path.push(next);
        cur = next;
    }
    let r_prime = cur;

    let mut light_edges = Vec::new();
    for &v in path.iter().take(path.len() - 1) {
        for &c in instance.children(v) {
            if !cl.edge_heavy(c) {
                light_edges.push(LightEdge {
                    child: c,
                    attach: v,
                    potential: instance.potential(v),
                    weight: instance.edge_subtree_weight(c),
                });
            }
        }
    }
    light_edges.sort_by(|a, b| a.potential.cmp(&b.potential));
    let potential_ties = light_edges
        .windows(2)
        .any(|w| w[0].potential == w[1].potential);

    let r_prime_potential = instance.potential(r_prime);
    let deep = instance.subtree_instance(r_prime, r_prime_potential.double())?;
    let (deep_opt, _) = oracle::opt_cost(&deep)?;

    let path_potentials: BTreeMap<NodeId, Weight> =
        path.iter().map(|&v| (v, instance.potential(v))).collect();

    Ok(HeavyPathReport {
        r_prime,
        path_weight: instance.depth(r_prime).clone(),
        light_edges,
        w0: deep_opt.half(),
        potential_ties,
        root_potential: instance.potential(root),
        r_prime_potential,
        path_potentials,
        path,
    })
}

/// The greedy potential sequence `y_1, ..., y_d`: each `y_j` is the smallest
/// candidate potential whose cumulative hanging weight (the deep half-cost
/// counts at the bottom potential) exceeds the sum of the previous terms;
/// `d` is reached once the running sum covers the total. Requires distinct
/// light-edge potentials.
pub fn y_sequence(report: &HeavyPathReport) -> Result<(Vec<Weight>, usize)> {
    if report.potential_ties {
        return Err(Error::PotentialTies(
            "light edges share a potential; rearrange first".into(),
        ));
    }
    let mut candidates = vec![report.r_prime_potential.clone()];
    candidates.extend(report.light_edges.iter().map(|e| e.potential.clone()));

    let cumulative = |y: &Weight| -> Weight {
        let mut s = report.w0.clone();
        for e in &report.light_edges {
            if &e.potential <= y {
                s = s + &e.weight;
            }
        }
        s
    };
    let total = cumulative(candidates.last().unwrap());

    let mut ys: Vec<Weight> = Vec::new();
    let mut sum = Weight::zero();
    loop {
        let y = candidates
            .iter()
            .find(|y| cumulative(y) > sum)
            .cloned()
            .expect("total always exceeds a partial sum below it");
        sum = sum + &y;
        ys.push(y);
        if sum >= total {
            let d = ys.len();
            return Ok((ys, d));
        }
    }
}

/// Lowest heavy-path potentials reached by each route, sorted ascending.
pub fn x_sequence(report: &HeavyPathReport, strategy: &Strategy) -> Vec<Weight> {
    let mut xs: Vec<Weight> = strategy
        .routes
        .iter()
        .map(|r| report.lowest_path_potential(r))
        .collect();
    xs.sort();
    xs
}

/// Lowest heavy-path potentials of the routes preceding the first route
/// that contains `r'`, in reverse route order (deepest first). Empty when
/// the first route already reaches `r'`.
pub fn z_sequence(report: &HeavyPathReport, trace: &PdfsTrace) -> Vec<Weight> {
    let mut zs = Vec::new();
    for route in &trace.strategy.routes {
        if route.visits(report.r_prime) {
            break;
        }
        zs.push(report.lowest_path_potential(route));
    }
    zs.reverse();
    zs
}

#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum DecompMode {
    Opt,
    Adfs,
}

/// A strategy's cost split along the heavy-path decomposition. Parts sum to
/// the total cost exactly.
#[derive(Clone, Debug)]
pub enum CostDecomposition {
    Opt {
        light: Weight,
        deep: Weight,
        /// Heavy-path cost of routes that avoid the bottom vertex.
        path: Weight,
        /// Heavy-path cost of routes that contain the bottom vertex.
        flat: Weight,
        total: Weight,
    },
    Adfs {
        light: Weight,
        deep: Weight,
        /// Heavy-path cost before the first route reaching the bottom.
        desc: Weight,
        /// Heavy-path cost of the routes reaching the bottom.
        flat: Weight,
        /// Heavy-path cost after the last route reaching the bottom.
        asc: Weight,
        total: Weight,
    },
}

impl CostDecomposition {
    pub fn total(&self) -> &Weight {
        match self {
            CostDecomposition::Opt { total, .. } => total,
            CostDecomposition::Adfs { total, .. } => total,
        }
    }

    pub fn parts(&self) -> Vec<(&'static str, &Weight)> {
        match self {
            CostDecomposition::Opt {
                light,
                deep,
                path,
                flat,
                ..
            } => vec![
                ("light", light),
                ("deep", deep),
                ("path", path),
                ("flat", flat),
            ],
            CostDecomposition::Adfs {
                light,
                deep,
                desc,
                flat,
                asc,
                ..
            } => vec![
                ("light", light),
                ("deep", deep),
                ("desc", desc),
                ("flat", flat),
                ("asc", asc),
            ],
        }
    }

    pub fn parts_sum(&self) -> Weight {
        self.parts().iter().map(|(_, w)| (*w).clone()).sum()
    }
}

pub fn decompose_costs(
    instance: &Instance,
    strategy: &Strategy,
    report: &HeavyPathReport,
    mode: DecompMode,
) -> Result<CostDecomposition> {
    let mut light_set: BTreeSet<NodeId> = BTreeSet::new();
    for e in &report.light_edges {
        collect_subtree_edges(instance, e.child, &mut light_set);
    }
    let mut deep_set: BTreeSet<NodeId> = BTreeSet::new();
    for &c in instance.children(report.r_prime) {
        collect_subtree_edges(instance, c, &mut deep_set);
    }
    let path_set: BTreeSet<NodeId> = report.path.iter().skip(1).copied().collect();

    let light = restricted_cost(instance, strategy, &light_set)?;
    let deep = restricted_cost(instance, strategy, &deep_set)?;
    let total = strategy.cost(instance)?;

    let contains: Vec<bool> = strategy
        .routes
        .iter()
        .map(|r| r.visits(report.r_prime))
        .collect();
    let path_cost_of = |indices: &mut dyn Iterator<Item = usize>| -> Result<Weight> {
        let routes: Vec<_> = indices.map(|i| strategy.routes[i].clone()).collect();
        restricted_cost(instance, &Strategy::new(routes), &path_set)
    };

    match mode {
        DecompMode::Opt => {
            let flat = path_cost_of(&mut (0..strategy.routes.len()).filter(|i| contains[*i]))?;
            let path = path_cost_of(&mut (0..strategy.routes.len()).filter(|i| !contains[*i]))?;
            Ok(CostDecomposition::Opt {
                light,
                deep,
                path,
                flat,
                total,
            })
        }
        DecompMode::Adfs => {
            let first = contains.iter().position(|c| *c);
            let last = contains.iter().rposition(|c| *c);
            let (first, last) = match (first, last) {
                (Some(f), Some(l)) => (f, l),
                _ => {
                    return Err(Error::NotApplicable(
                        "no route contains the heavy-path bottom".into(),
                    ))
                }
            };
            let desc = path_cost_of(&mut (0..first))?;
            let flat = path_cost_of(&mut (first..=last))?;
            let asc = path_cost_of(&mut (last + 1..strategy.routes.len()))?;
            Ok(CostDecomposition::Adfs {
                light,
                deep,
                desc,
                flat,
                asc,
                total,
            })
        }
    }
}

fn collect_subtree_edges(instance: &Instance, top: NodeId, out: &mut BTreeSet<NodeId>) {
    let mut stack = vec![top];
    while let Some(v) = stack.pop() {
        out.insert(v);
        stack.extend(instance.children(v).iter().copied());
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped(String),
}

/// One named verdict with the two exact compared values.
#[derive(Clone, Debug)]
pub struct CheckItem {
    pub name: &'static str,
    pub status: CheckStatus,
    pub lhs: String,
    pub rhs: String,
    pub note: String,
}

impl CheckItem {
    fn pass_fail(name: &'static str, ok: bool, lhs: String, rhs: String, note: String) -> Self {
        CheckItem {
            name,
            status: if ok {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail
            },
            lhs,
            rhs,
            note,
        }
    }

    fn skipped(name: &'static str, reason: &str) -> Self {
        CheckItem {
            name,
            status: CheckStatus::Skipped(reason.to_string()),
            lhs: String::new(),
            rhs: String::new(),
            note: String::new(),
        }
    }

    pub fn passed(&self) -> bool {
        !matches!(self.status, CheckStatus::Fail)
    }
}

#[derive(Clone, Debug, Default)]
pub struct CheckReport {
    pub items: Vec<CheckItem>,
}

impl CheckReport {
    pub fn all_passed(&self) -> bool {
        self.items.iter().all(|i| i.passed())
    }

    pub fn failures(&self) -> Vec<&CheckItem> {
        self.items.iter().filter(|i| !i.passed()).collect()
    }
}

/// Runs every applicable certificate check on one instance: cost and route
/// competitiveness, root additivity, the light-tree bound, and, when the
/// root has heavy degree one, the heavy-path sequence and decomposition
/// inequalities. Inapplicable checks are reported as skipped with a reason.
pub fn check_inequalities(instance: &Instance) -> Result<CheckReport> {
    let tour = dfs_tour(instance, &ChildOrder::FileOrder)?;
    let pdfs_trace = pdfs(instance, &tour);
    let (adfs_trace, _) = adversarial_dfs(instance, &tour);
    let pdfs_cost = pdfs_trace.cost();
    let adfs_cost = adfs_trace.cost();
    let (opt, opt_witness) = oracle::opt_cost(instance)?;
    let (opt_count, _) = oracle::opt_routes(instance)?;
    let cl = instance.classify();
    let root = instance.root();
    let heavy = cl.node_heavy(root);
    let heavydeg = cl.heavydeg(root);
    let phi_root = instance.potential(root);

    let mut items = Vec::new();

    items.push(CheckItem::pass_fail(
        "pdfs-le-adfs",
        pdfs_cost <= adfs_cost,
        pdfs_cost.to_string(),
        adfs_cost.to_string(),
        "piecemeal cost vs adversarial cost".into(),
    ));
    items.push(CheckItem::pass_fail(
        "adfs-cost-10x-opt",
        adfs_cost <= opt.scale_int(10),
        adfs_cost.to_string(),
        opt.scale_int(10).to_string(),
        "adversarial cost vs 10x optimal cost".into(),
    ));
    items.push(CheckItem::pass_fail(
        "pdfs-routes-10x-opt",
        pdfs_trace.route_count() <= 10 * opt_count,
        pdfs_trace.route_count().to_string(),
        (10 * opt_count).to_string(),
        "piecemeal route count vs 10x optimal count".into(),
    ));
    let count_bound = (&opt / instance.budget()).ceil();
    items.push(CheckItem::pass_fail(
        "routes-lower-bound",
        Weight::from_int(opt_count as i64) >= count_bound,
        opt_count.to_string(),
        count_bound.to_string(),
        "optimal route count vs ceil(optimal cost / budget)".into(),
    ));

    // Root additivity: optimal cost is additive over the root's downward
    // edge-subtrees; adversarial cost is subadditive.
    {
        let mut opt_sum = Weight::zero();
        let mut adfs_sum = Weight::zero();
        for &c in instance.children(root) {
            let sub = instance.edge_subtree_instance(c, instance.budget().clone())?;
            let (sub_opt, _) = oracle::opt_cost(&sub)?;
            opt_sum = opt_sum + sub_opt;
            let sub_tour = dfs_tour(&sub, &ChildOrder::FileOrder)?;
            let (sub_adfs, _) = adversarial_dfs(&sub, &sub_tour);
            adfs_sum = adfs_sum + sub_adfs.cost();
        }
        items.push(CheckItem::pass_fail(
            "opt-cost-additive-at-root",
            opt == opt_sum,
            opt.to_string(),
            opt_sum.to_string(),
            "optimal cost vs sum over root edge-subtrees".into(),
        ));
        items.push(CheckItem::pass_fail(
            "adfs-cost-subadditive-at-root",
            adfs_cost <= adfs_sum,
            adfs_cost.to_string(),
            adfs_sum.to_string(),
            "adversarial cost vs sum over root edge-subtrees".into(),
        ));
    }

    if !heavy {
        if instance.edge_count() == 0 {
            items.push(CheckItem::skipped(
                "light-tree-adfs-lt-2x-opt",
                "edgeless tree",
            ));
        } else {
            items.push(CheckItem::pass_fail(
                "light-tree-adfs-lt-2x-opt",
                adfs_cost < opt.scale_int(2),
                adfs_cost.to_string(),
                opt.scale_int(2).to_string(),
                "light tree: adversarial cost strictly below twice optimal".into(),
            ));
        }
    } else {
        items.push(CheckItem::skipped(
            "light-tree-adfs-lt-2x-opt",
            "tree is heavy",
        ));
    }

    if heavy && heavydeg != 1 {
        let rhs = opt.scale_int(10) - phi_root.scale_int(16);
        items.push(CheckItem::pass_fail(
            "heavy-multi-margin",
            adfs_cost < rhs,
            adfs_cost.to_string(),
            rhs.to_string(),
            format!("heavydeg(root) = {heavydeg}: 10x opt minus 16x root potential"),
        ));
    } else {
        items.push(CheckItem::skipped(
            "heavy-multi-margin",
            if heavy {
                "heavydeg(root) = 1"
            } else {
                "tree is light"
            },
        ));
    }

    if heavy && heavydeg == 1 {
        let rhs = opt.scale_int(10) - phi_root.scale_int(8);
        items.push(CheckItem::pass_fail(
            "heavy-deg1-margin",
            adfs_cost < rhs,
            adfs_cost.to_string(),
            rhs.to_string(),
            "heavydeg(root) = 1: 10x opt minus 8x root potential".into(),
        ));

        let report = heavy_path(instance)?;
        items.extend(heavy_path_items(
            instance,
            &report,
            &opt_witness,
            &pdfs_trace,
            &adfs_trace,
        )?);
    } else {
        items.push(CheckItem::skipped(
            "heavy-deg1-margin",
            if heavy {
                "heavydeg(root) != 1"
            } else {
                "tree is light"
            },
        ));
        for name in [
            "greedy-count-le-opt-routes",
            "greedy-y-dominates-x",
            "prefix-load-bound",
            "two-step-chain",
            "opt-decomposition-sums",
            "adfs-decomposition-sums",
            "opt-flat-floor",
            "pdfs-flat-ceiling",
        ] {
            items.push(CheckItem::skipped(name, "no heavy path at the root"));
        }
    }

    Ok(CheckReport { items })
}

fn heavy_path_items(
    instance: &Instance,
    report: &HeavyPathReport,
    opt_witness: &Strategy,
    plain_trace: &PdfsTrace,
    adfs_trace: &PdfsTrace,
) -> Result<Vec<CheckItem>> {
    let mut items = Vec::new();

    if report.potential_ties {
        for name in [
            "greedy-count-le-opt-routes",
            "greedy-y-dominates-x",
            "prefix-load-bound",
            "two-step-chain",
        ] {
            items.push(CheckItem::skipped(name, "light-edge potential ties"));
        }
    } else {
        let (ys, d) = y_sequence(report)?;
        let xs = x_sequence(report, opt_witness);
        let c = xs.len();

        items.push(CheckItem::pass_fail(
            "greedy-count-le-opt-routes",
            d <= c,
            d.to_string(),
            c.to_string(),
            "greedy sequence length vs optimal witness route count".into(),
        ));

        let dominated = (0..d.min(c)).all(|j| ys[j] >= xs[j]);
        items.push(CheckItem::pass_fail(
            "greedy-y-dominates-x",
            dominated && d <= c,
            format!("y = {}", seq(&ys)),
            format!("x = {}", seq(&xs)),
            "componentwise y_j >= x_j (x sorted ascending, not in route order)".into(),
        ));

        // Load bound: subtrees hanging strictly below the j-th lowest route
        // potential must fit in the earlier routes' off-path capacity.
        let mut load_ok = true;
        let mut load_note = String::new();
        for j in 0..=c {
            let hanging: Weight = report
                .light_edges
                .iter()
                .filter(|e| j == c || e.potential < xs[j])
                .map(|e| e.weight.clone())
                .sum();
            let capacity: Weight = xs.iter().take(j).sum();
            if hanging > capacity {
                load_ok = false;
                load_note = format!("violated at j = {}: {} > {}", j + 1, hanging, capacity);
                break;
            }
        }
        items.push(CheckItem::pass_fail(
            "prefix-load-bound",
            load_ok,
            format!("x = {}", seq(&xs)),
            format!(
                "hanging weights = [{}]",
                report
                    .light_edges
                    .iter()
                    .map(|e| format!("{}@{}", e.weight, e.potential))
                    .collect::<Vec<_>>()
                    .join(", ")
            ),
            load_note,
        ));

        let zs = z_sequence(report, adfs_trace);
        let mut chain_ok = true;
        let mut chain_note = String::new();
        for i in 0..zs.len().saturating_sub(1) {
            for j in 0..d.saturating_sub(1) {
                if zs[i] > ys[j] && zs[i + 1] < ys[j + 1] {
                    chain_ok = false;
                    chain_note = format!(
                        "z_{} = {} > y_{} = {} but z_{} = {} < y_{} = {}",
                        i + 1,
                        zs[i],
                        j + 1,
                        ys[j],
                        i + 2,
                        zs[i + 1],
                        j + 2,
                        ys[j + 1]
                    );
                }
            }
        }
        items.push(CheckItem::pass_fail(
            "two-step-chain",
            chain_ok,
            format!("z = {}", seq(&zs)),
            format!("y = {}", seq(&ys)),
            chain_note,
        ));
    }

    let opt_decomp = decompose_costs(instance, opt_witness, report, DecompMode::Opt)?;
    items.push(CheckItem::pass_fail(
        "opt-decomposition-sums",
        opt_decomp.parts_sum() == *opt_decomp.total(),
        opt_decomp.parts_sum().to_string(),
        opt_decomp.total().to_string(),
        "optimal witness: parts vs total".into(),
    ));

    let adfs_decomp = decompose_costs(instance, &adfs_trace.strategy, report, DecompMode::Adfs)?;
    items.push(CheckItem::pass_fail(
        "adfs-decomposition-sums",
        adfs_decomp.parts_sum() == *adfs_decomp.total(),
        adfs_decomp.parts_sum().to_string(),
        adfs_decomp.total().to_string(),
        "adversarial trace: parts vs total".into(),
    ));

    if let CostDecomposition::Opt { deep, flat, .. } = &opt_decomp {
        let rhs = &report.path_weight * deep / &report.r_prime_potential;
        items.push(CheckItem::pass_fail(
            "opt-flat-floor",
            *flat >= rhs,
            flat.to_string(),
            rhs.to_string(),
            "optimal flat cost vs path-weight share of deep cost".into(),
        ));
    }

    // The per-crossing ceiling binds the plain piecemeal trace: at most
    // ceil(deep / 2 phi(r')) + 1 of its routes reach the bottom, each
    // crossing the path twice. Worst-case traces escape it: a short probe
    // route capped at the first budget can touch the bottom while adding a
    // crossing and nothing below it.
    let plain_decomp = decompose_costs(instance, &plain_trace.strategy, report, DecompMode::Adfs)?;
    if let CostDecomposition::Adfs { deep, flat, .. } = &plain_decomp {
        let inner = deep / report.r_prime_potential.double() + Weight::one();
        let rhs = report.path_weight.double() * inner.ceil();
        items.push(CheckItem::pass_fail(
            "pdfs-flat-ceiling",
            *flat <= rhs,
            flat.to_string(),
            rhs.to_string(),
            "plain-trace flat cost vs per-crossing ceiling".into(),
        ));
    }

    Ok(items)
}

fn seq(ws: &[Weight]) -> String {
    let parts: Vec<String> = ws.iter().map(|w| w.to_string()).collect();
    format!("({})", parts.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::piecemeal::adversarial_pdfs;
    use crate::route::Route;

    fn hp_report() -> (Instance, HeavyPathReport) {
        let t = fixtures::heavy_path();
        let report = heavy_path(&t).unwrap();
        (t, report)
    }

    #[test]
    fn heavy_path_report_fields() {
        let (t, report) = hp_report();
        assert_eq!(t.name(report.r_prime), "rp");
        assert_eq!(report.path.len(), 3);
        assert_eq!(report.path_weight, Weight::from_int(2));
        assert_eq!(report.light_edges.len(), 1);
        let e = &report.light_edges[0];
        assert_eq!(t.name(e.child), "x");
        assert_eq!(e.potential, Weight::from_int(9));
        assert_eq!(e.weight, Weight::from_int(3));
        assert_eq!(report.w0, Weight::from_int(10));
        assert!(!report.potential_ties);
    }

    #[test]
    fn heavy_path_rejects_wrong_branch() {
        let t = fixtures::two_fork();
        assert!(matches!(heavy_path(&t), Err(Error::NotApplicable(_))));
    }

    #[test]
    fn ties_are_flagged() {
        let t = fixtures::heavy_path_ties();
        let report = heavy_path(&t).unwrap();
        assert!(report.potential_ties);
        assert_eq!(report.light_edges.len(), 2);
        assert_eq!(report.light_edges[0].potential, Weight::from_int(9));
        assert_eq!(report.light_edges[1].potential, Weight::from_int(9));
        assert!(y_sequence(&report).is_err());
    }

    #[test]
    fn y_sequence_heavy_path() {
        let (_, report) = hp_report();
        let (ys, d) = y_sequence(&report).unwrap();
        assert_eq!(ys, vec![Weight::from_int(8), Weight::from_int(8)]);
        assert_eq!(d, 2);
        assert_eq!(ys[0], report.r_prime_potential);
    }

    #[test]
    fn y_sequence_small_deep_cost_stops_at_one() {
        // Synthetic report: no light edges and a deep half-cost below the
        // bottom potential, so one term suffices.
        let (_, mut report) = hp_report();
        report.light_edges.clear();
        report.w0 = Weight::from_int(5);
        let (ys, d) = y_sequence(&report).unwrap();
        assert_eq!(d, 1);
        assert_eq!(ys, vec![Weight::from_int(8)]);
    }

    #[test]
    fn x_sequence_of_opt_witness() {
        let (t, report) = hp_report();
        let (_, witness) = oracle::opt_cost(&t).unwrap();
        assert_eq!(
            x_sequence(&report, &witness),
            vec![Weight::from_int(8), Weight::from_int(8)]
        );
    }

    #[test]
    fn x_sequence_of_trivial_route_is_root_potential() {
        let (t, report) = hp_report();
        let s = Strategy::new(vec![Route::trivial(t.root())]);
        assert_eq!(x_sequence(&report, &s), vec![Weight::from_int(10)]);
    }

    #[test]
    fn z_sequence_examples() {
        let (t, report) = hp_report();
        let tour = dfs_tour(&t, &ChildOrder::FileOrder).unwrap();

        let adfs8 = adversarial_pdfs(&t, &tour, &Weight::from_int(8)).unwrap();
        assert_eq!(z_sequence(&report, &adfs8), vec![Weight::from_int(9)]);

        let plain = pdfs(&t, &tour);
        assert!(z_sequence(&report, &plain).is_empty());
    }

    #[test]
    fn decompositions_on_heavy_path() {
        let (t, report) = hp_report();
        let (_, witness) = oracle::opt_cost(&t).unwrap();
        let opt_decomp = decompose_costs(&t, &witness, &report, DecompMode::Opt).unwrap();
        match &opt_decomp {
            CostDecomposition::Opt {
                light,
                deep,
                path,
                flat,
                total,
            } => {
                assert_eq!(*light, Weight::from_int(6));
                assert_eq!(*deep, Weight::from_int(20));
                assert_eq!(*path, Weight::zero());
                assert_eq!(*flat, Weight::from_int(8));
                assert_eq!(*total, Weight::from_int(34));
            }
            _ => unreachable!(),
        }
        assert_eq!(opt_decomp.parts_sum(), *opt_decomp.total());

        let tour = dfs_tour(&t, &ChildOrder::FileOrder).unwrap();
        let adfs8 = adversarial_pdfs(&t, &tour, &Weight::from_int(8)).unwrap();
        let adfs_decomp = decompose_costs(&t, &adfs8.strategy, &report, DecompMode::Adfs).unwrap();
        match &adfs_decomp {
            CostDecomposition::Adfs {
                light,
                deep,
                desc,
                flat,
                asc,
                total,
            } => {
                assert_eq!(*light, Weight::from_int(6));
                assert_eq!(*deep, Weight::from_int(20));
                assert_eq!(*desc, Weight::from_int(2));
                assert_eq!(*flat, Weight::from_int(8));
                assert_eq!(*asc, Weight::zero());
                assert_eq!(*total, Weight::from_int(36));
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn check_suite_passes_on_fixtures() {
        for t in [
            fixtures::two_fork(),
            fixtures::heavy_path(),
            fixtures::heavy_path_ties(),
        ] {
            let report = check_inequalities(&t).unwrap();
            assert!(report.all_passed(), "failures: {:?}", report.failures());
        }
    }

    #[test]
    fn check_suite_margins_two_fork() {
        let t = fixtures::two_fork();
        let report = check_inequalities(&t).unwrap();
        let margin = report
            .items
            .iter()
            .find(|i| i.name == "heavy-multi-margin")
            .unwrap();
        assert_eq!(margin.status, CheckStatus::Pass);
        assert_eq!(margin.lhs, "48");
        assert_eq!(margin.rhs, "180");
    }

    #[test]
    fn check_suite_star_bound_is_tight() {
        let t = Instance::builder(Weight::from_int(10))
            .edge("r", "l1", Weight::from_int(5))
            .edge("r", "l2", Weight::from_int(5))
            .edge("r", "l3", Weight::from_int(5))
            .build()
            .unwrap();
        let report = check_inequalities(&t).unwrap();
        assert!(report.all_passed());
        let lb = report
            .items
            .iter()
            .find(|i| i.name == "routes-lower-bound")
            .unwrap();
        assert_eq!(lb.lhs, "3");
        assert_eq!(lb.rhs, "3");
    }
}
