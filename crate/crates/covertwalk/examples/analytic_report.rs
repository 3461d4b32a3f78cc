//! Closed-form report for one configuration: detection and covertness
//! probabilities plus the expected dissemination, collection, and total
//! times under both delay models.
//!
//! Run with: `cargo run --release --example analytic_report`

use covertwalk::params::DelayModel::{Model1, Model2};
use covertwalk::{analytic, SystemParams};

fn main() {
    let params = SystemParams::new(50, 10, 10.0, 3, 5, 1.0, 50.0).unwrap();

    println!(
        "s={} r={} m={} k={} n={} lambda={} W={} (chunk length {})",
        params.s,
        params.r,
        params.m,
        params.k,
        params.n,
        params.lambda,
        params.w,
        params.chunk_len()
    );

    let p_d = analytic::detection_probability(&params);
    println!("\nper-transmission detection probability P_d = {p_d:.6}");
    println!(
        "covertness over all {} transmissions   P_c = {:.6}",
        params.n + params.k,
        analytic::covertness_probability(&params)
    );

    for model in [Model1, Model2] {
        println!("\ndelay model {model:?}:");
        println!("  E[T_dis] = {:>10.4}", analytic::expected_dissemination(&params, model));
        println!("  E[T_col] = {:>10.4}", analytic::expected_collection(&params, model));
        println!("  E[T_tot] = {:>10.4}", analytic::expected_total(&params, model));
    }

    println!("\nper-chunk Model 1 dissemination expectations:");
    for i in 1..=params.n {
        println!("  chunk {i}: {:>8.4}", analytic::expected_chunk_time_m1(&params, i).unwrap());
    }
}
