//! End-to-end acceptance gate. One test per criterion; each prints a
//! pass line (visible with `cargo test --test acceptance -- --nocapture`).

use std::process::Command;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use covertwalk::params::DelayModel::{self, Model1, Model2};
use covertwalk::params::{SystemParams, WalkModel};
use covertwalk::{analytic, codec, optimizer, sim};

fn pass(id: u32, what: &str) {
    println!("criterion {id:2} ({what}): PASS");
}

/// Random valid parameter set with bounded sizes.
fn random_params(rng: &mut ChaCha8Rng) -> SystemParams {
    let s = rng.random_range(4..=60);
    let r = rng.random_range(2..=s);
    let n = rng.random_range(1..=r);
    let k = rng.random_range(1..=n);
    let m = rng.random_range(1.0..40.0);
    let lambda = rng.random_range(0.2..4.0);
    let w = rng.random_range(5.0..120.0);
    SystemParams::new(s, r, m, k, n, lambda, w).unwrap()
}

// Criterion 1: the closed-form single-transmission detection probability
// matches a 1e7-sample Monte Carlo estimate of P(t_tr >= t_ar) within 3
// standard errors for 20 random parameter sets, and equals 1 exactly
// whenever W < l.
#[test]
fn c01_detection_probability_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let mut checked = 0;
    while checked < 20 {
        let p = random_params(&mut rng);
        let ell = p.chunk_len();
        let theory = analytic::detection_probability(&p);
        if p.w < ell {
            assert_eq!(theory, 1.0, "W < l must give P_d = 1 exactly");
        } else {
            let (est, se) =
                sim::estimate_detection_probability(ell, p.lambda, p.w, 10_000_000, checked);
            assert!(
                (est - theory).abs() <= 3.0 * se.max(1e-9),
                "set {checked}: closed form {theory} vs estimate {est} (se {se})"
            );
        }
        checked += 1;
    }
    // Force a few W < l sets in case the random draw produced none.
    for k in [1u64, 2] {
        let p = SystemParams::new(50, 10, 30.0, k, 5.max(k), 1.0, 10.0).unwrap();
        assert!(p.w < p.chunk_len());
        assert_eq!(analytic::detection_probability(&p), 1.0);
    }
    pass(1, "Theorem-style detection probability vs Monte Carlo oracle");
}

// Criterion 2: lambda = 1, m = 10, k = 1, W = 8 gives P_c = 0 exactly for
// any n.
#[test]
fn c02_degenerate_covertness() {
    for n in 1..=10u64 {
        let p = SystemParams::new(50, 10, 10.0, 1, n, 1.0, 8.0).unwrap();
        assert_eq!(analytic::covertness_probability(&p), 0.0, "n = {n}");
    }
    pass(2, "P_c = 0 exactly when the window is shorter than the chunk");
}

// Criterion 3: with lambda = 1, m = 10, W = 50, n = 15, the covertness
// argmax over k in [1, 20] is exactly k = 12.
#[test]
fn c03_covertness_peak() {
    let base = SystemParams::new(50, 20, 10.0, 1, 15, 1.0, 50.0).unwrap();
    let (k, _) = optimizer::argmax_covertness(&base, 1..=20, 15).unwrap();
    assert_eq!(k, 12);
    pass(3, "covertness peak at k = 12");
}

fn argmin_by<T: Copy>(items: &[(T, f64)]) -> T {
    items
        .iter()
        .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
        .unwrap()
        .0
}

fn delay_minimum_over_n(model: DelayModel, id: u32, what: &str) {
    let mut theory = Vec::new();
    let mut simulated = Vec::new();
    for n in 3..=10u64 {
        let p = SystemParams::new(50, 10, 10.0, 3, n, 1.0, 50.0).unwrap();
        let t = analytic::expected_total(&p, model);
        let s = sim::run_monte_carlo(&p, model, WalkModel::IidUniform, 100_000, 400 + n)
            .unwrap()
            .mean_total;
        assert!((s - t).abs() <= 0.02 * t, "n = {n}: sim {s} vs theory {t}");
        theory.push((n, t));
        simulated.push((n, s));
    }
    assert_eq!(argmin_by(&theory), 5, "analytic minimum");
    assert_eq!(argmin_by(&simulated), 5, "simulated minimum");
    pass(id, what);
}

// Criterion 4: Model 1 with s = 50, r = 10, k = 3: both the closed form and
// a 1e5-trial simulation attain their minimum over n in [3, 10] at n = 5,
// with simulated means within 2% of theory.
#[test]
fn c04_model1_optimal_redundancy() {
    delay_minimum_over_n(Model1, 4, "Model 1 delay minimum at n = 5");
}

// Criterion 5: Model 1 grid k in [1, 5], n in [k, 10]: analytic and
// simulated global minimum at (k, n) = (1, 2), simulated mean within 2% of
// the 68.56 closed form.
#[test]
fn c05_model1_global_minimum() {
    let mut theory = Vec::new();
    let mut simulated = Vec::new();
    for k in 1..=5u64 {
        for n in k..=10 {
            let p = SystemParams::new(50, 10, 10.0, k, n, 1.0, 50.0).unwrap();
            let t = analytic::expected_total(&p, Model1);
            let s = sim::run_monte_carlo(&p, Model1, WalkModel::IidUniform, 100_000, 500 + 16 * k + n)
                .unwrap()
                .mean_total;
            theory.push(((k, n), t));
            simulated.push(((k, n), s));
        }
    }
    assert_eq!(argmin_by(&theory), (1, 2));
    assert_eq!(argmin_by(&simulated), (1, 2));
    let best = simulated.iter().find(|(kn, _)| *kn == (1, 2)).unwrap().1;
    let closed = analytic::expected_total(
        &SystemParams::new(50, 10, 10.0, 1, 2, 1.0, 50.0).unwrap(),
        Model1,
    );
    assert!((closed - 68.5556).abs() < 1e-3);
    assert!((best - closed).abs() <= 0.02 * closed, "sim {best} vs {closed}");
    pass(5, "Model 1 global minimum at (k, n) = (1, 2)");
}

// Criterion 6: Model 2 with k = 3: analytic and simulated minimum over
// n in [3, 10] at n = 5, and the closed-form optimal n agrees.
#[test]
fn c06_model2_optimal_redundancy() {
    delay_minimum_over_n(Model2, 6, "Model 2 delay minimum at n = 5");
    assert_eq!(analytic::optimal_n_m2(10, 3).unwrap(), 5);
}

// Criterion 7: the closed-form optimal n agrees with exhaustive search for
// every 1 <= k <= r <= 60 (zero mismatches up to exact ties).
#[test]
fn c07_optimal_n_closed_form_equivalence() {
    let report = optimizer::verify_optimal_n(60);
    assert_eq!(report.checked, 60 * 61 / 2);
    assert!(report.mismatches.is_empty(), "{:?}", report.mismatches);
    pass(7, "closed-form optimal n == exhaustive search up to r = 60");
}

// Criterion 8: for 30 random parameter sets per model at 1e5 trials, the
// simulated dissemination, collection, and total means each fall within 3
// standard errors of the closed forms in at least 28 of 30 cases.
#[test]
fn c08_simulation_theory_statistical_suite() {
    let mut rng = ChaCha8Rng::seed_from_u64(808);
    for model in [Model1, Model2] {
        let mut hits = [0u32; 3];
        for case in 0..30u64 {
            let p = random_params(&mut rng);
            let s = sim::run_monte_carlo(&p, model, WalkModel::IidUniform, 100_000, 800 + case)
                .unwrap();
            let checks = [
                (s.mean_dissemination, s.stderr_dissemination, analytic::expected_dissemination(&p, model)),
                (s.mean_collection, s.stderr_collection, analytic::expected_collection(&p, model)),
                (s.mean_total, s.stderr_total, analytic::expected_total(&p, model)),
            ];
            for (i, (mean, se, theory)) in checks.into_iter().enumerate() {
                if (mean - theory).abs() <= 3.0 * se.max(1e-12) {
                    hits[i] += 1;
                }
            }
        }
        for (name, h) in ["dissemination", "collection", "total"].iter().zip(hits) {
            assert!(h >= 28, "{model:?} {name}: only {h}/30 within 3 standard errors");
        }
    }
    pass(8, "simulated means match closed forms in >= 28/30 random cases");
}

// Criterion 9: empirical trial covertness matches (1 - P_d)^(n+k) within 3
// binomial standard errors at 1e5 trials for 10 random parameter sets.
#[test]
fn c09_covertness_conjunction() {
    let mut rng = ChaCha8Rng::seed_from_u64(909);
    for case in 0..10u64 {
        let p = random_params(&mut rng);
        let theory = analytic::covertness_probability(&p);
        let s = sim::run_monte_carlo(&p, Model1, WalkModel::IidUniform, 100_000, 900 + case)
            .unwrap();
        let se = (theory * (1.0 - theory) / 100_000.0).sqrt();
        assert!(
            (s.covertness - theory).abs() <= 3.0 * se.max(1e-9),
            "case {case}: empirical {} vs theory {theory}",
            s.covertness
        );
    }
    pass(9, "empirical covertness matches the per-transmission conjunction");
}

// Criterion 10: MDS property — for all k <= n <= 8 and 100 random messages,
// every k-subset of encoded chunks decodes to the original message.
#[test]
fn c10_codec_mds_property() {
    let mut rng = ChaCha8Rng::seed_from_u64(1010);
    for n in 1..=8usize {
        for k in 1..=n {
            for _ in 0..100 {
                let len = rng.random_range(1..=64);
                let msg: Vec<u8> = (0..len).map(|_| rng.random()).collect();
                let set = codec::encode(&msg, k, n).unwrap();
                for mask in 0u32..1 << n {
                    if mask.count_ones() as usize != k {
                        continue;
                    }
                    let subset: Vec<(u8, Vec<u8>)> = set
                        .chunks
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| mask >> i & 1 == 1)
                        .map(|(_, c)| c.clone())
                        .collect();
                    assert_eq!(
                        codec::decode(&subset, k, n, len).unwrap(),
                        msg,
                        "k={k} n={n} mask={mask:b}"
                    );
                }
            }
        }
    }
    pass(10, "every k-subset decodes, all k <= n <= 8");
}

// Criterion 11: `sweep --preset fig2 --seed 7` produces byte-identical CSV
// across runs, including runs with different worker-thread counts.
#[test]
fn c11_sweep_reproducibility() {
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for (run, threads) in ["2", "8", "2"].iter().enumerate() {
        let out = dir.path().join(format!("fig2_{run}.csv"));
        let status = Command::new(env!("CARGO_BIN_EXE_covertwalk"))
            .args([
                "sweep",
                "--preset",
                "fig2",
                "--seed",
                "7",
                "--trials",
                "20000",
                "--threads",
                threads,
                "--out",
            ])
            .arg(&out)
            .status()
            .unwrap();
        assert!(status.success());
        outputs.push(std::fs::read(&out).unwrap());
    }
    assert_eq!(outputs[0], outputs[1], "different thread counts must agree");
    assert_eq!(outputs[0], outputs[2], "repeat run must agree");
    assert!(!outputs[0].is_empty());
    pass(11, "fig2 sweep CSV is byte-identical across runs and thread counts");
}
