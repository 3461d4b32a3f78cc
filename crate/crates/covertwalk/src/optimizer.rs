//! Exploration of the covertness-delay tradeoff over `(k, n)` grids:
//! exhaustive evaluation, argmins/argmaxes, Pareto frontiers, and a check
//! of the closed-form optimal redundancy against exhaustive search.

use serde::{Deserialize, Serialize};

use crate::analytic;
use crate::params::{DelayModel, SystemParams};
use crate::Error;

/// One `(k, n)` configuration with its analytic covertness and delay, and
/// optionally a simulated mean total time.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TradeoffPoint {
    pub k: u64,
    pub n: u64,
    pub covertness: f64,
    pub expected_total: f64,
    pub simulated_total: Option<f64>,
}

/// Evaluates every valid `(k, n)` pair in the ranges (k-major order,
/// pairs with `k > n` skipped).
pub fn grid_evaluate(
    base: &SystemParams,
    k_range: impl IntoIterator<Item = u64>,
    n_range: impl IntoIterator<Item = u64> + Clone,
    model: DelayModel,
) -> Result<Vec<TradeoffPoint>, Error> {
    let mut points = Vec::new();
    for k in k_range {
        for n in n_range.clone() {
            if k > n {
                continue;
            }
            let p = base.with_kn(k, n)?;
            points.push(TradeoffPoint {
                k,
                n,
                covertness: analytic::covertness_probability(&p),
                expected_total: analytic::expected_total(&p, model),
                simulated_total: None,
            });
        }
    }
    if points.is_empty() {
        return Err(Error::InvalidParams("grid contains no valid (k, n) pair".into()));
    }
    Ok(points)
}

/// The `k` maximizing the covertness probability at fixed `n`; ties go to
/// the smaller `k`.
pub fn argmax_covertness(
    base: &SystemParams,
    k_range: impl IntoIterator<Item = u64>,
    n: u64,
) -> Result<(u64, f64), Error> {
    let mut best: Option<(u64, f64)> = None;
    for k in k_range {
        if k > n {
            continue;
        }
        let p = base.with_kn(k, n)?;
        let c = analytic::covertness_probability(&p);
        match best {
            Some((_, bc)) if c <= bc => {}
            _ => best = Some((k, c)),
        }
    }
    best.ok_or_else(|| Error::InvalidParams("empty k range".into()))
}

/// Non-dominated points under (maximize covertness, minimize expected
/// total), sorted by ascending expected total. Along the frontier both
/// coordinates increase: paying more delay is only kept when it buys more
/// covertness. Points equal in both objectives are deduplicated keeping
/// the lexicographically smaller `(k, n)`.
pub fn pareto_frontier(points: &[TradeoffPoint]) -> Result<Vec<TradeoffPoint>, Error> {
    if points.is_empty() {
        return Err(Error::InvalidParams("empty point list".into()));
    }
    let mut sorted: Vec<TradeoffPoint> = points.to_vec();
    sorted.sort_by(|a, b| {
        a.expected_total
            .partial_cmp(&b.expected_total)
            .unwrap()
            .then(b.covertness.partial_cmp(&a.covertness).unwrap())
            .then((a.k, a.n).cmp(&(b.k, b.n)))
    });
    let mut frontier: Vec<TradeoffPoint> = Vec::new();
    for p in sorted {
        match frontier.last() {
            // After the sort, a point is dominated exactly when it does not
            // improve covertness over the frontier tail; objective-equal
            // duplicates arrive after the lexicographically smaller point
            // and are dropped here too.
            Some(last) if p.covertness <= last.covertness => continue,
            _ => frontier.push(p),
        }
    }
    Ok(frontier)
}

/// Result of checking the closed-form optimal redundancy against
/// exhaustive search over all `1 <= k <= r <= r_max`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OptimalNReport {
    pub checked: u64,
    pub mismatches: Vec<OptimalNMismatch>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OptimalNMismatch {
    pub r: u64,
    pub k: u64,
    pub closed_form: u64,
    pub exhaustive: u64,
}

/// Compares `analytic::optimal_n_m2` to exhaustive Model 2 argmin over
/// `n in [k, r]` for every `(r, k)` up to `r_max`. A disagreement only
/// counts as a mismatch when the two totals differ by more than 1e-9
/// relative (exact ties may resolve either way).
pub fn verify_optimal_n(r_max: u64) -> OptimalNReport {
    let mut report = OptimalNReport { checked: 0, mismatches: Vec::new() };
    for r in 1..=r_max {
        for k in 1..=r {
            report.checked += 1;
            let closed = analytic::optimal_n_m2(r, k).expect("k <= r by construction");
            let shape = |n: u64| {
                analytic::harmonic(n) - analytic::harmonic(r - n) - analytic::harmonic(n - k)
            };
            let exhaustive = (k..=r)
                .min_by(|&a, &b| shape(a).partial_cmp(&shape(b)).unwrap())
                .unwrap();
            let diff = (shape(closed) - shape(exhaustive)).abs();
            if diff > 1e-9 * shape(exhaustive).abs().max(1.0) {
                report.mismatches.push(OptimalNMismatch { r, k, closed_form: closed, exhaustive });
            }
        }
    }
    report
}
