//! Exact optima by exhaustive leaf-set partition, cross-checked against the
//! encoded-route enumeration.
//!
//! ```bash
//! cargo run -p ecte --example optimal
//! ```

use ecte::oracle::{min_cost_over_potential_strategies, opt_cost, opt_routes};
use ecte::{fixtures, validate_strategy};

fn main() {
    for tree in [fixtures::two_fork(), fixtures::heavy_path()] {
        println!("instance with {} leaves:", tree.leaves().len());

        let (cost, witness) = opt_cost(&tree).expect("within leaf cap");
        println!(
            "  optimal cost {cost} with {} routes:",
            witness.route_count()
        );
        for route in &witness.routes {
            let names: Vec<&str> = route.vertices.iter().map(|v| tree.name(*v)).collect();
            println!("    ({})", names.join(","));
        }
        assert!(validate_strategy(&tree, &witness).unwrap().is_feasible());

        let (count, _) = opt_routes(&tree).expect("within leaf cap");
        println!("  optimal route count {count}");

        let via_routes = min_cost_over_potential_strategies(&tree, 6).expect("within cap");
        println!(
            "  encoded-route minimum {via_routes} (matches: {})\n",
            via_routes == cost
        );
    }
}
