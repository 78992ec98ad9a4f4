//! Split bunched light edges down a subdivided heavy edge and verify the
//! construction conditions.
//!
//! ```bash
//! cargo run -p ecte --example rearrange
//! ```

use ecte::fixtures;
use ecte::format::serialize;
use ecte::rearrange::{build_t_prime, compute_epsilon, satisfies_st, verify_conditions};

fn main() {
    let tree = fixtures::heavy_path_ties();
    let (skinny, witness) = satisfies_st(&tree);
    println!(
        "skinny: {skinny}{}",
        witness
            .map(|v| format!(" (bunched at `{}`)", tree.name(v)))
            .unwrap_or_default()
    );

    let eps = compute_epsilon(&tree).expect("within enumeration cap");
    println!("epsilon: {eps}");

    let result = build_t_prime(&tree, &eps).expect("epsilon in range");
    for m in &result.moved_edges {
        println!(
            "light edge to `{}` now hangs at `{}` with weight {}",
            m.child, m.new_parent, m.new_weight
        );
    }

    let conditions = verify_conditions(&tree, &result);
    for item in conditions.items() {
        println!("{}: {:?}", item.name, item.status);
    }

    println!("\nperturbed tree:\n{}", serialize(&result.tree));
}
