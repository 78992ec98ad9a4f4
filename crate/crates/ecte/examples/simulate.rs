//! Explore an initially unknown tree online and compare against offline
//! piecemeal DFS on the induced traversal.
//!
//! ```bash
//! cargo run -p ecte --example simulate
//! ```

use ecte::online::{simulate, ChildPolicy};
use ecte::traversal::{dfs_tour, ChildOrder};
use ecte::{fixtures, pdfs};

fn main() {
    let tree = fixtures::two_fork();
    let outcome = simulate(&tree, ChildPolicy::SeededRandom(7)).expect("simulation");

    println!("reveal log:");
    for e in &outcome.log.events {
        let edges: Vec<String> = e
            .edges
            .iter()
            .map(|(c, w)| format!("{}:{w}", tree.name(*c)))
            .collect();
        println!(
            "  step {:>2}: discovered `{}` -> [{}]",
            e.step,
            tree.name(e.node),
            edges.join(", ")
        );
    }
    println!(
        "routes {}, recharges {}, gate queries {} (violations {})",
        outcome.strategy.route_count(),
        outcome.log.recharges,
        outcome.log.gate_queries,
        outcome.log.gate_violations
    );

    // Offline equivalence on the induced child order.
    let tour = dfs_tour(&tree, &ChildOrder::Explicit(outcome.child_order.clone())).unwrap();
    let offline = pdfs(&tree, &tour);
    println!(
        "matches offline piecemeal DFS: {}",
        offline.strategy == outcome.strategy
    );
}
