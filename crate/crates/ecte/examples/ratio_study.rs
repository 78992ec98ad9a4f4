//! Small competitive-ratio study over seeded random instances, as CSV.
//!
//! ```bash
//! cargo run -p ecte --example ratio_study
//! ```

use ecte::report::ratio_csv;

fn main() {
    let csv = ratio_csv(12, 2024, 6, 8).expect("batch");
    print!("{csv}");

    let worst = csv
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(9).unwrap().to_string())
        .max_by(|a, b| {
            let pa: f64 = parse_ratio(a);
            let pb: f64 = parse_ratio(b);
            pa.partial_cmp(&pb).unwrap()
        })
        .unwrap();
    eprintln!("worst adversarial/optimal cost ratio: {worst}");
}

fn parse_ratio(s: &str) -> f64 {
    match s.split_once('/') {
        Some((p, q)) => p.parse::<f64>().unwrap() / q.parse::<f64>().unwrap(),
        None => s.parse().unwrap(),
    }
}
