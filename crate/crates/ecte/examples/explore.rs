//! Decompose a depth-first traversal into budget-bounded routes.
//!
//! ```bash
//! cargo run -p ecte --example explore
//! ```

use ecte::traversal::{dfs_tour, ChildOrder};
use ecte::{fixtures, pdfs};

fn main() {
    let tree = fixtures::two_fork();
    println!(
        "tree: {} nodes, total weight {}, budget {}",
        tree.node_count(),
        tree.total_weight(),
        tree.budget()
    );

    for policy in [
        ChildOrder::FileOrder,
        ChildOrder::Lexicographic,
        ChildOrder::Seeded(42),
    ] {
        let tour = dfs_tour(&tree, &policy).expect("tour");
        let trace = pdfs(&tree, &tour);
        println!("\norder {}:", tour.policy);
        for (i, (route, len)) in trace
            .strategy
            .routes
            .iter()
            .zip(&trace.per_route_lengths)
            .enumerate()
        {
            let names: Vec<&str> = route.vertices.iter().map(|v| tree.name(*v)).collect();
            println!(
                "  route {}: length {:>2}  ({})",
                i + 1,
                len,
                names.join(",")
            );
        }
        println!("  cost {}", trace.cost());
    }
}
