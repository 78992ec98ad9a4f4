//! Sweep the first-route cap over its effective thresholds and report the
//! worst case.
//!
//! ```bash
//! cargo run -p ecte --example adversarial
//! ```

use ecte::traversal::{dfs_tour, ChildOrder};
use ecte::{adversarial_dfs, adversarial_pdfs, fixtures, thresholds};

fn main() {
    let tree = fixtures::heavy_path();
    let tour = dfs_tour(&tree, &ChildOrder::FileOrder).expect("tour");

    let set = thresholds(&tree, &tour);
    println!("effective first-route caps:");
    for b in &set.values {
        let trace = adversarial_pdfs(&tree, &tour, b).expect("cap in range");
        let lens: Vec<String> = trace
            .per_route_lengths
            .iter()
            .map(|w| w.to_string())
            .collect();
        println!(
            "  cap {:>2}: cost {:>2}  routes [{}]",
            b,
            trace.cost(),
            lens.join(", ")
        );
    }

    let (worst, cap) = adversarial_dfs(&tree, &tour);
    println!("\nworst case: cost {} at cap {}", worst.cost(), cap);
}
