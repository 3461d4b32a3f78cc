//! Validates the closed forms by simulation: runs a seeded Monte Carlo
//! batch for both delay models and prints simulated means next to the
//! theoretical expectations, plus the empirical vs. analytic covertness.
//!
//! Run with: `cargo run --release --example monte_carlo_validation`

use covertwalk::params::DelayModel::{Model1, Model2};
use covertwalk::params::WalkModel;
use covertwalk::{analytic, sim, SystemParams};

fn main() {
    let params = SystemParams::new(50, 10, 10.0, 3, 5, 1.0, 50.0).unwrap();
    let trials = 100_000;
    let seed = 42;

    for model in [Model1, Model2] {
        let summary =
            sim::run_monte_carlo(&params, model, WalkModel::IidUniform, trials, seed).unwrap();
        println!("model {model:?}, {trials} trials, seed {seed}:");
        for (name, mean, se, theory) in [
            (
                "T_dis",
                summary.mean_dissemination,
                summary.stderr_dissemination,
                analytic::expected_dissemination(&params, model),
            ),
            (
                "T_col",
                summary.mean_collection,
                summary.stderr_collection,
                analytic::expected_collection(&params, model),
            ),
            (
                "T_tot",
                summary.mean_total,
                summary.stderr_total,
                analytic::expected_total(&params, model),
            ),
        ] {
            let sigmas = (mean - theory).abs() / se;
            println!(
                "  {name}: simulated {mean:>9.4} +- {se:.4}  theory {theory:>9.4}  ({sigmas:.2} sigma)"
            );
        }
        println!(
            "  covertness: empirical {:.4} +- {:.4}  theory {:.4}\n",
            summary.covertness,
            summary.covertness_half_width,
            analytic::covertness_probability(&params)
        );
    }

    // The no-self-loop walk has no closed form; its means sit slightly
    // below the iid predictions.
    let nsl =
        sim::run_monte_carlo(&params, Model1, WalkModel::NoSelfLoop, trials, seed).unwrap();
    println!(
        "no-self-loop sensitivity: simulated T_tot {:.4} vs iid closed form {:.4}",
        nsl.mean_total,
        analytic::expected_total(&params, Model1)
    );
}
