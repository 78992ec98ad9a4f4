//! Generate instances from each family.
//!
//! ```bash
//! cargo run -p ecte --example generate
//! ```

use ecte::format::serialize;
use ecte::generator::{generate, GeneratorSpec};
use ecte::weight::Weight;

fn main() {
    let specs = [
        (
            "star",
            GeneratorSpec::Star {
                arms: 3,
                arm_length: Weight::from_int(5),
                budget: Weight::from_int(10),
            },
        ),
        (
            "lower-bound branches",
            GeneratorSpec::LowerBoundBranches {
                budget: Weight::from_int(20),
            },
        ),
        (
            "caterpillar",
            GeneratorSpec::Caterpillar {
                spine: 3,
                max_weight: 2,
                budget: None,
                seed: 1,
            },
        ),
        ("bunched heavy chain", GeneratorSpec::HeavyPath { seed: 2 }),
        (
            "random",
            GeneratorSpec::Random {
                nodes: 8,
                min_weight: 1,
                max_weight: 3,
                budget: None,
                max_leaves: Some(5),
                seed: 42,
            },
        ),
        (
            "subdivided",
            GeneratorSpec::Subdivided { nodes: 8, seed: 42 },
        ),
    ];

    for (name, spec) in specs {
        let t = generate(&spec).expect("generation succeeds");
        println!("== {name} ==");
        print!("{}", serialize(&t));
        println!();
    }
}
