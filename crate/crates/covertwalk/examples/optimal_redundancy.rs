//! Closed-form optimal redundancy for Model 2: n* is the floor or ceiling
//! of sqrt(rk + k) - 1. Prints the choice for a few (r, k) pairs and then
//! checks the formula against exhaustive search for every r up to 60.
//!
//! Run with: `cargo run --release --example optimal_redundancy`

use covertwalk::{analytic, optimizer};

fn main() {
    println!("{:>4} {:>4} {:>14} {:>6}", "r", "k", "sqrt(rk+k)-1", "n*");
    for (r, k) in [(10, 3), (10, 1), (20, 5), (40, 10), (3, 1), (7, 7)] {
        let root = ((r * k + k) as f64).sqrt() - 1.0;
        let n = analytic::optimal_n_m2(r, k).unwrap();
        println!("{r:>4} {k:>4} {root:>14.4} {n:>6}");
    }

    let report = optimizer::verify_optimal_n(60);
    println!(
        "\nexhaustive check over all 1 <= k <= r <= 60: {} cases, {} mismatches",
        report.checked,
        report.mismatches.len()
    );
    for m in &report.mismatches {
        println!("  mismatch at r={} k={}: closed form {} vs exhaustive {}", m.r, m.k, m.closed_form, m.exhaustive);
    }
}
