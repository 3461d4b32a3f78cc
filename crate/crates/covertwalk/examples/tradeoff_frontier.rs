//! Covertness-delay tradeoff over a (k, n) grid: evaluates every
//! configuration and prints the Pareto frontier (no point on it is beaten
//! in both covertness and expected delay at once).
//!
//! Run with: `cargo run --release --example tradeoff_frontier`

use covertwalk::params::DelayModel::Model1;
use covertwalk::{optimizer, SystemParams};

fn main() {
    let base = SystemParams::new(50, 10, 10.0, 1, 1, 1.0, 50.0).unwrap();

    let mut points = Vec::new();
    for k in 1..=5 {
        points.extend(optimizer::grid_evaluate(&base, [k], k..=10, Model1).unwrap());
    }
    println!("{} configurations on the grid k in [1,5], n in [k,10]", points.len());

    let frontier = optimizer::pareto_frontier(&points).unwrap();
    println!("\nPareto frontier ({} points, cheapest first):", frontier.len());
    println!("{:>4} {:>4} {:>12} {:>12}", "k", "n", "P_c", "E[T_tot]");
    for p in &frontier {
        println!("{:>4} {:>4} {:>12.6} {:>12.4}", p.k, p.n, p.covertness, p.expected_total);
    }

    let fastest = frontier.first().unwrap();
    let safest = frontier.last().unwrap();
    println!(
        "\nfastest transfer: (k={}, n={}) at {:.2} time units, covertness {:.4}",
        fastest.k, fastest.n, fastest.expected_total, fastest.covertness
    );
    println!(
        "most covert:      (k={}, n={}) at {:.2} time units, covertness {:.4}",
        safest.k, safest.n, safest.expected_total, safest.covertness
    );
}
