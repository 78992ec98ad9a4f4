//! Textual reports for the command-line front end and the examples.
//!
//! Every rational is rendered exactly (`p/q`), with a decimal approximation
//! in parentheses when it is not an integer. Reports are deterministic:
//! identical inputs produce byte-identical text (timing, when wanted,
//! belongs on stderr).

use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::certificates::{check_inequalities, CheckReport, CheckStatus};
use crate::error::Result;
use crate::format;
use crate::generator::{generate, GeneratorSpec};
use crate::online::{simulate, ChildPolicy};
use crate::oracle;
use crate::piecemeal::{adversarial_dfs, adversarial_pdfs, pdfs, thresholds, PdfsTrace};
use crate::rearrange::{build_t_prime, compute_epsilon, satisfies_st, verify_conditions};
use crate::route::{restricted_cost, validate_strategy};
use crate::traversal::{dfs_tour, ChildOrder};
use crate::tree::Instance;
use crate::weight::Weight;

/// Exact rendering with a decimal hint for non-integers.
pub fn fmt_weight(w: &Weight) -> String {
    if w.is_integer() {
        w.to_string()
    } else {
        format!("{} (~{:.3})", w, w.to_f64())
    }
}

/// Short content digest of the canonical serialization.
pub fn digest(instance: &Instance) -> String {
    let mut hasher = Sha256::new();
    hasher.update(format::serialize(instance).as_bytes());
    let out = hasher.finalize();
    let hex: String = out.iter().map(|b| format!("{b:02x}")).collect();
    hex[..12].to_string()
}

fn header(command: &str, instance: &Instance) -> String {
    format!(
        "command: {command}\ninstance: {} ({} nodes, {} leaves, budget {})\n",
        digest(instance),
        instance.node_count(),
        instance.leaves().len(),
        fmt_weight(instance.budget())
    )
}

fn route_lines(instance: &Instance, trace: &PdfsTrace) -> String {
    let mut out = String::new();
    for (i, (route, len)) in trace
        .strategy
        .routes
        .iter()
        .zip(&trace.per_route_lengths)
        .enumerate()
    {
        let verts: Vec<&str> = route.vertices.iter().map(|v| instance.name(*v)).collect();
        out.push_str(&format!(
            "route {}: length {}  ({})\n",
            i + 1,
            fmt_weight(len),
            verts.join(",")
        ));
    }
    out
}

pub fn explore_report(instance: &Instance, order: &ChildOrder) -> Result<String> {
    let tour = dfs_tour(instance, order)?;
    let trace = pdfs(instance, &tour);
    let mut out = header("explore", instance);
    out.push_str(&format!("order: {}\n", tour.policy));
    out.push_str(&route_lines(instance, &trace));
    out.push_str(&format!(
        "routes: {}\ncost: {}\n",
        trace.route_count(),
        fmt_weight(&trace.cost())
    ));
    Ok(out)
}

pub fn adversarial_report(
    instance: &Instance,
    order: &ChildOrder,
    first_budget: Option<&Weight>,
) -> Result<String> {
    let tour = dfs_tour(instance, order)?;
    let mut out = header("adversarial", instance);
    out.push_str(&format!("order: {}\n", tour.policy));
    match first_budget {
        Some(b) => {
            let trace = adversarial_pdfs(instance, &tour, b)?;
            out.push_str(&format!("first budget: {}\n", fmt_weight(b)));
            out.push_str(&route_lines(instance, &trace));
            out.push_str(&format!("cost: {}\n", fmt_weight(&trace.cost())));
        }
        None => {
            let set = thresholds(instance, &tour);
            let rendered: Vec<String> = set.values.iter().map(fmt_weight).collect();
            out.push_str(&format!("thresholds: {{{}}}\n", rendered.join(", ")));
            let (trace, argmax) = adversarial_dfs(instance, &tour);
            out.push_str(&route_lines(instance, &trace));
            out.push_str(&format!(
                "worst-case cost: {} at first budget {}\n",
                fmt_weight(&trace.cost()),
                fmt_weight(&argmax)
            ));
        }
    }
    Ok(out)
}

#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Objective {
    Cost,
    Routes,
}

pub fn optimal_report(instance: &Instance, objective: Objective, cap: usize) -> Result<String> {
    let mut out = header("optimal", instance);
    match objective {
        Objective::Cost => {
            let (cost, witness) = oracle::opt_cost_with_cap(instance, cap)?;
            out.push_str(&format!(
                "objective: cost\noptimal cost: {}\n",
                fmt_weight(&cost)
            ));
            for (i, route) in witness.routes.iter().enumerate() {
                let verts: Vec<&str> = route.vertices.iter().map(|v| instance.name(*v)).collect();
                out.push_str(&format!("route {}: ({})\n", i + 1, verts.join(",")));
            }
        }
        Objective::Routes => {
            let (count, witness) = oracle::opt_routes_with_cap(instance, cap)?;
            out.push_str(&format!(
                "objective: routes\noptimal route count: {count}\n"
            ));
            out.push_str(&format!(
                "witness cost: {}\n",
                fmt_weight(&witness.cost(instance)?)
            ));
        }
    }
    Ok(out)
}

pub fn render_check_report(report: &CheckReport) -> String {
    let mut out = String::new();
    for item in &report.items {
        let status = match &item.status {
            CheckStatus::Pass => "pass".to_string(),
            CheckStatus::Fail => "FAIL".to_string(),
            CheckStatus::Skipped(reason) => format!("skip ({reason})"),
        };
        if item.lhs.is_empty() && item.rhs.is_empty() {
            out.push_str(&format!("{:<34} {}", item.name, status));
        } else {
            out.push_str(&format!(
                "{:<34} {}  [{} vs {}]",
                item.name, status, item.lhs, item.rhs
            ));
        }
        if !item.note.is_empty() {
            out.push_str(&format!("  {}", item.note));
        }
        out.push('\n');
    }
    out
}

pub fn certify_report(instance: &Instance) -> Result<(String, bool)> {
    let report = check_inequalities(instance)?;
    let mut out = header("certify", instance);
    out.push_str(&render_check_report(&report));
    out.push_str(if report.all_passed() {
        "verdict: all checks passed\n"
    } else {
        "verdict: CHECK FAILED\n"
    });
    Ok((out, report.all_passed()))
}

pub fn rearrange_report(instance: &Instance, epsilon: Option<&Weight>) -> Result<String> {
    let mut out = header("rearrange", instance);
    let (st, witness) = satisfies_st(instance);
    match witness {
        Some(v) => out.push_str(&format!(
            "skinny: no (vertex `{}` carries several light edges)\n",
            instance.name(v)
        )),
        None => out.push_str(&format!("skinny: {}\n", if st { "yes" } else { "no" })),
    }
    let eps = match epsilon {
        Some(e) => e.clone(),
        None => {
            let e = compute_epsilon(instance)?;
            out.push_str(&format!("epsilon (auto): {}\n", fmt_weight(&e)));
            e
        }
    };
    if epsilon.is_some() {
        out.push_str(&format!("epsilon: {}\n", fmt_weight(&eps)));
    }
    let result = build_t_prime(instance, &eps)?;
    if !result.changed() {
        out.push_str("no qualifying vertex: tree returned unchanged\n");
    } else {
        for m in &result.moved_edges {
            out.push_str(&format!(
                "moved: `{}` now under `{}` with weight {}\n",
                m.child,
                m.new_parent,
                fmt_weight(&m.new_weight)
            ));
        }
    }
    let conditions = verify_conditions(instance, &result);
    for item in conditions.items() {
        let status = match &item.status {
            CheckStatus::Pass => "pass".to_string(),
            CheckStatus::Fail => "FAIL".to_string(),
            CheckStatus::Skipped(r) => format!("skip ({r})"),
        };
        out.push_str(&format!("{:<40} {}  {}\n", item.name, status, item.note));
    }
    out.push_str("result tree:\n");
    out.push_str(&format::serialize(&result.tree));
    Ok(out)
}

pub fn simulate_report(instance: &Instance, policy_name: &str, seed: u64) -> Result<String> {
    let policy = match policy_name {
        "random" => ChildPolicy::SeededRandom(seed),
        _ => ChildPolicy::RevealOrder,
    };
    let outcome = simulate(instance, policy)?;
    let mut out = header("simulate", instance);
    out.push_str(&format!("policy: {policy_name} (seed {seed})\n"));
    for (i, route) in outcome.strategy.routes.iter().enumerate() {
        let verts: Vec<&str> = route.vertices.iter().map(|v| instance.name(*v)).collect();
        out.push_str(&format!("route {}: ({})\n", i + 1, verts.join(",")));
    }
    out.push_str(&format!(
        "routes: {}\nrecharges: {}\nreveal events: {}\ngate queries: {} (violations {})\ncost: {}\n",
        outcome.strategy.route_count(),
        outcome.log.recharges,
        outcome.log.events.len(),
        outcome.log.gate_queries,
        outcome.log.gate_violations,
        fmt_weight(&outcome.strategy.cost(instance)?)
    ));
    Ok(out)
}

/// Structural-invariant suite for one instance: traversal shape, potential
/// telescoping, cost-restriction additivity, piecemeal progress and the
/// threshold sweep's agreement with a dense grid.
pub fn verify_instance(instance: &Instance) -> Result<CheckReport> {
    use crate::certificates::CheckItem;
    let mut items = Vec::new();
    let mut push = |name: &'static str, ok: bool, lhs: String, rhs: String| {
        items.push(CheckItem {
            name,
            status: if ok {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail
            },
            lhs,
            rhs,
            note: String::new(),
        });
    };

    // Potentials telescope along parent edges.
    let telescoped = instance.node_ids().all(|v| match instance.parent(v) {
        Some(p) => instance.potential(v) == instance.potential(p) - instance.parent_edge_weight(v),
        None => instance.potential(v) == instance.budget().half(),
    });
    push(
        "potential-telescoping",
        telescoped,
        "per-node".into(),
        "parent minus edge".into(),
    );

    let cl = instance.classify();
    let monotone = instance.node_ids().all(|v| {
        !cl.edge_heavy(v)
            || (cl.node_heavy(v) && instance.parent(v).map(|p| cl.node_heavy(p)).unwrap_or(true))
    });
    push(
        "heavy-edges-have-heavy-endpoints",
        monotone,
        "edges".into(),
        "endpoints".into(),
    );

    let tour = dfs_tour(instance, &ChildOrder::FileOrder)?;
    let tour_ok = tour.vertices.len() == 2 * instance.node_count() - 1
        && *tour.prefix_lengths(instance).last().unwrap() == instance.total_weight().double();
    push(
        "tour-covers-each-edge-twice",
        tour_ok,
        format!("{}", tour.vertices.len()),
        format!("{}", 2 * instance.node_count() - 1),
    );

    let trace = pdfs(instance, &tour);
    let feasible = validate_strategy(instance, &trace.strategy)?.is_feasible();
    let mut rebuilt = vec![tour.vertices[0]];
    for w in trace.stop_indices.windows(2) {
        rebuilt.extend_from_slice(&tour.vertices[w[0] + 1..=w[1]]);
    }
    push(
        "pdfs-feasible-and-covers-tour",
        feasible && rebuilt == tour.vertices,
        format!("{} routes", trace.route_count()),
        "tour".into(),
    );

    // Cost restricted to a bipartition of the edges sums to the total.
    let all: std::collections::BTreeSet<crate::tree::NodeId> = instance
        .node_ids()
        .filter(|v| *v != instance.root())
        .collect();
    let (evens, odds): (
        std::collections::BTreeSet<crate::tree::NodeId>,
        std::collections::BTreeSet<crate::tree::NodeId>,
    ) = all.iter().partition(|v| v.0 % 2 == 0);
    let total = trace.strategy.cost(instance)?;
    let split = restricted_cost(instance, &trace.strategy, &evens)?
        + restricted_cost(instance, &trace.strategy, &odds)?;
    push(
        "restricted-cost-partitions",
        split == total,
        fmt_weight(&split),
        fmt_weight(&total),
    );

    // Adversarial sweep against a coarse dense grid.
    let (best, _) = adversarial_dfs(instance, &tour);
    let cap = instance.potential(instance.root()).double();
    let mut grid_max = Weight::zero();
    for i in 0..=100 {
        let b = &cap * &Weight::ratio(i, 100);
        let c = adversarial_pdfs(instance, &tour, &b)?.cost();
        if c > grid_max {
            grid_max = c;
        }
    }
    push(
        "threshold-sweep-dominates-grid",
        best.cost() >= grid_max && best.cost() >= trace.cost(),
        fmt_weight(&best.cost()),
        fmt_weight(&grid_max),
    );

    Ok(CheckReport { items })
}

pub fn verify_report(instance: &Instance) -> Result<(String, bool)> {
    let report = verify_instance(instance)?;
    let mut out = header("verify", instance);
    out.push_str(&render_check_report(&report));
    out.push_str(if report.all_passed() {
        "verdict: all checks passed\n"
    } else {
        "verdict: CHECK FAILED\n"
    });
    Ok((out, report.all_passed()))
}

/// Batch competitive-ratio study over seeded random instances; one CSV row
/// per instance, computed in parallel, assembled in seed order.
pub fn ratio_csv(count: usize, seed: u64, max_leaves: usize, nodes: usize) -> Result<String> {
    let rows: Vec<Result<String>> = (0..count)
        .into_par_iter()
        .map(|i| {
            let spec = GeneratorSpec::Random {
                nodes,
                min_weight: 1,
                max_weight: 3,
                budget: None,
                max_leaves: Some(max_leaves),
                seed: seed.wrapping_add(i as u64),
            };
            let t = generate(&spec)?;
            let tour = dfs_tour(&t, &ChildOrder::FileOrder)?;
            let p = pdfs(&t, &tour);
            let (a, _) = adversarial_dfs(&t, &tour);
            let (opt, _) = oracle::opt_cost(&t)?;
            let (opt_count, _) = oracle::opt_routes(&t)?;
            let cost_ratio = &a.cost() / &opt;
            let route_ratio =
                Weight::from_int(p.route_count() as i64) / Weight::from_int(opt_count as i64);
            Ok(format!(
                "{},{},{},{},{},{},{},{},{},{},{}",
                digest(&t),
                t.node_count(),
                t.leaves().len(),
                t.budget(),
                p.cost(),
                a.cost(),
                opt,
                p.route_count(),
                opt_count,
                cost_ratio,
                route_ratio
            ))
        })
        .collect();

    let mut out = String::from(
        "digest,n,leaves,B,pdfs_cost,adfs_cost,opt_cost,pdfs_routes,opt_routes,cost_ratio,route_ratio\n",
    );
    for row in rows {
        out.push_str(&row?);
        out.push('\n');
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn weight_rendering() {
        assert_eq!(fmt_weight(&Weight::from_int(34)), "34");
        assert_eq!(fmt_weight(&Weight::ratio(17, 2)), "17/2 (~8.500)");
    }

    #[test]
    fn digest_is_stable_across_identical_instances() {
        let a = fixtures::two_fork();
        let b = fixtures::two_fork();
        assert_eq!(digest(&a), digest(&b));
        assert_eq!(digest(&a).len(), 12);
        assert_ne!(digest(&a), digest(&fixtures::heavy_path()));
    }

    #[test]
    fn explore_report_mentions_cost() {
        let t = fixtures::two_fork();
        let text = explore_report(&t, &ChildOrder::FileOrder).unwrap();
        assert!(text.contains("cost: 34"));
        assert!(text.contains("route 1: length 18"));
    }

    #[test]
    fn adversarial_max_report() {
        let t = fixtures::two_fork();
        let text = adversarial_report(&t, &ChildOrder::FileOrder, None).unwrap();
        assert!(text.contains("worst-case cost: 48 at first budget 14"));
    }

    #[test]
    fn verify_passes_on_fixtures() {
        for t in [
            fixtures::two_fork(),
            fixtures::heavy_path(),
            fixtures::heavy_path_ties(),
        ] {
            let (text, ok) = verify_report(&t).unwrap();
            assert!(ok, "{text}");
        }
    }

    #[test]
    fn reports_are_deterministic() {
        let t = fixtures::heavy_path();
        let a = certify_report(&t).unwrap();
        let b = certify_report(&t).unwrap();
        assert_eq!(a.0, b.0);
        let r1 = ratio_csv(4, 7, 6, 8).unwrap();
        let r2 = ratio_csv(4, 7, 6, 8).unwrap();
        assert_eq!(r1, r2);
    }

    #[test]
    fn ratio_csv_has_expected_columns() {
        let csv = ratio_csv(3, 1, 6, 7).unwrap();
        let mut lines = csv.lines();
        assert_eq!(
            lines.next().unwrap(),
            "digest,n,leaves,B,pdfs_cost,adfs_cost,opt_cost,pdfs_routes,opt_routes,cost_ratio,route_ratio"
        );
        assert_eq!(lines.count(), 3);
        for line in csv.lines().skip(1) {
            assert_eq!(line.split(',').count(), 11);
        }
    }

    #[test]
    fn failing_checks_render_and_flag() {
        use crate::certificates::{CheckItem, CheckReport, CheckStatus};
        let report = CheckReport {
            items: vec![CheckItem {
                name: "example-check",
                status: CheckStatus::Fail,
                lhs: "5".into(),
                rhs: "4".into(),
                note: "five exceeds four".into(),
            }],
        };
        assert!(!report.all_passed());
        assert_eq!(report.failures().len(), 1);
        let text = render_check_report(&report);
        assert!(text.contains("FAIL"));
        assert!(text.contains("[5 vs 4]"));
    }
}
