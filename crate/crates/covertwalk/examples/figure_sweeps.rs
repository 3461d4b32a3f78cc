//! Reproduces the four reference experiment grids and writes one CSV per
//! figure into ./sweeps/: covertness vs. k (fig1), delay vs. n under
//! varying r (fig2), delay vs. n under varying k for Model 1 (fig3) and
//! Model 2 (fig4).
//!
//! Run with: `cargo run --release --example figure_sweeps`

use std::fs;

use covertwalk::sweep;

fn main() {
    let trials = 20_000;
    let seed = 0;
    fs::create_dir_all("sweeps").unwrap();

    for name in ["fig1", "fig2", "fig3", "fig4"] {
        let spec = sweep::preset(name, trials, seed).unwrap();
        let rows = spec.run().unwrap();
        let path = format!("sweeps/{name}.csv");
        let mut file = fs::File::create(&path).unwrap();
        sweep::write_csv(&mut file, &rows).unwrap();

        let min = rows
            .iter()
            .min_by(|a, b| {
                let ta = a.sim_tot_mean.unwrap_or(a.theory_tot);
                let tb = b.sim_tot_mean.unwrap_or(b.theory_tot);
                ta.partial_cmp(&tb).unwrap()
            })
            .unwrap();
        println!(
            "{name}: {} rows -> {path}; lowest total at (k={}, n={}, r={})",
            rows.len(),
            min.k,
            min.n,
            min.r
        );
    }
}
