//! Run the inequality-certificate suite on the committed fixtures.
//!
//! ```bash
//! cargo run -p ecte --example certify
//! ```

use ecte::certificates::check_inequalities;
use ecte::fixtures;
use ecte::report::render_check_report;

fn main() {
    let trees = [
        ("two_fork", fixtures::two_fork()),
        ("heavy_path", fixtures::heavy_path()),
        ("heavy_path_ties", fixtures::heavy_path_ties()),
    ];
    for (name, tree) in trees {
        println!("== {name} ==");
        let report = check_inequalities(&tree).expect("oracle caps respected");
        print!("{}", render_check_report(&report));
        println!(
            "{}\n",
            if report.all_passed() {
                "all checks passed"
            } else {
                "CHECK FAILED"
            }
        );
    }
}
