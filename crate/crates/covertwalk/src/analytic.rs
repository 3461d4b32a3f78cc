//! Closed-form expressions for covertness and delay.
//!
//! All formulas are pure functions of a validated [`SystemParams`]; nothing
//! here samples randomness. The delay expectations come from treating the
//! dissemination and collection walks as coupon-collector processes on the
//! complete graph, with harmonic-number sums counting the expected visits.

use crate::params::{DelayModel, SystemParams};
use crate::Error;

/// `H_j = sum_{i=1..j} 1/i`, with `H_0 = 0`.
pub fn harmonic(j: u64) -> f64 {
    (1..=j).map(|i| 1.0 / i as f64).sum()
}

/// Probability that the warden's uniform `U(0,W)` monitoring arrival falls
/// inside one shifted-exponential chunk transmission.
///
/// For `W < m/k` the transmission always outlasts the window and detection
/// is certain. Otherwise
/// `P_d = 1/(lambda W) + m/(k W) - exp(-lambda (W - m/k)) / (lambda W)`.
pub fn detection_probability(params: &SystemParams) -> f64 {
    let ell = params.chunk_len();
    let (lambda, w) = (params.lambda, params.w);
    if w < ell {
        return 1.0;
    }
    let p = 1.0 / (lambda * w) + ell / w - (-lambda * (w - ell)).exp() / (lambda * w);
    p.clamp(0.0, 1.0)
}

/// Probability that none of the `n + k` real chunk transmissions is
/// detected: `(1 - P_d)^(n + k)`.
pub fn covertness_probability(params: &SystemParams) -> f64 {
    let p_d = detection_probability(params);
    (1.0 - p_d).powi((params.n + params.k) as i32)
}

/// Expected Model 1 time to place the `i`-th chunk (1-based): one
/// transmission plus a geometric number of steps with success probability
/// `(r - i + 1)/s`.
pub fn expected_chunk_time_m1(params: &SystemParams, i: u64) -> Result<f64, Error> {
    if i < 1 || i > params.n {
        return Err(Error::InvalidParams(format!(
            "chunk index {i} out of range [1, {}]",
            params.n
        )));
    }
    let p = (params.r - i + 1) as f64 / params.s as f64;
    Ok(1.0 / params.lambda + params.chunk_len() + 1.0 / p)
}

/// Per-vertex time budget of Model 2: `1/lambda + m/k + 1`.
fn m2_budget(params: &SystemParams) -> f64 {
    1.0 / params.lambda + params.chunk_len() + 1.0
}

/// Expected time for the source to deposit all `n` chunks on distinct relays.
pub fn expected_dissemination(params: &SystemParams, model: DelayModel) -> f64 {
    let visits = params.s as f64 * (harmonic(params.r) - harmonic(params.r - params.n));
    match model {
        DelayModel::Model1 => {
            let n = params.n as f64;
            n / params.lambda + n * params.chunk_len() + visits
        }
        DelayModel::Model2 => m2_budget(params) * visits,
    }
}

/// Expected time for the collector to retrieve any `k` of the `n` deposited
/// chunks.
pub fn expected_collection(params: &SystemParams, model: DelayModel) -> f64 {
    let visits = params.s as f64 * (harmonic(params.n) - harmonic(params.n - params.k));
    match model {
        DelayModel::Model1 => {
            let k = params.k as f64;
            k / params.lambda + params.m + visits
        }
        DelayModel::Model2 => m2_budget(params) * visits,
    }
}

/// Expected end-to-end transfer time, dissemination plus collection.
pub fn expected_total(params: &SystemParams, model: DelayModel) -> f64 {
    expected_dissemination(params, model) + expected_collection(params, model)
}

/// Model 2 total time at redundancy `n` is proportional to
/// `H_r + H_n - H_{r-n} - H_{n-k}`; only the `n`-dependent part matters for
/// the argmin.
fn m2_shape(r: u64, k: u64, n: u64) -> f64 {
    harmonic(n) - harmonic(r - n) - harmonic(n - k)
}

/// Redundancy `n` minimizing the Model 2 expected total time.
///
/// The unconstrained minimizer lies at `sqrt(rk + k) - 1`; both the floor
/// and the ceiling are evaluated, clamped into the feasible range `[k, r]`.
/// If clamping collapses both candidates onto the same boundary the whole
/// range is searched instead. Ties go to the smaller `n`.
pub fn optimal_n_m2(r: u64, k: u64) -> Result<u64, Error> {
    if k < 1 || k > r {
        return Err(Error::InvalidParams(format!("require 1 <= k = {k} <= r = {r}")));
    }
    let root = ((r * k + k) as f64).sqrt() - 1.0;
    let lo = (root.floor().max(0.0) as u64).clamp(k, r);
    let hi = (root.ceil().max(0.0) as u64).clamp(k, r);
    let candidates: Vec<u64> = if lo == hi && (lo == k || lo == r) && (root < k as f64 || root > r as f64)
    {
        // Both candidates clamped to the same endpoint; the closed form is
        // unreliable at the boundary, fall back to exhaustive search.
        (k..=r).collect()
    } else {
        vec![lo, hi]
    };
    let best = candidates
        .into_iter()
        .map(|n| (n, m2_shape(r, k, n)))
        .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap().then(a.0.cmp(&b.0)))
        .map(|(n, _)| n)
        .unwrap();
    // min_by keeps the first minimum; make the smaller-n tie-break explicit.
    let best_shape = m2_shape(r, k, best);
    for n in k..best {
        if (m2_shape(r, k, n) - best_shape).abs() <= 1e-12 * best_shape.abs().max(1.0) {
            return Ok(n);
        }
    }
    Ok(best)
}
