//! Seeded Monte Carlo simulation of the full protocol: the source's
//! dissemination walk, the collector's walk, and per-transmission warden
//! detection, under both delay models.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[cfg(test)]
use crate::analytic;
use crate::params::{DelayModel, SystemParams, WalkModel};
use crate::Error;

/// Deterministic per-trial random stream. Streams for different trial
/// indices are independent, so trials can run on any number of worker
/// threads and still reproduce bit-exactly.
pub fn trial_rng(seed: u64, trial_index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial_index);
    rng
}

/// Shifted-exponential chunk transmission time: `ell + Exp(lambda)`.
pub fn sample_transmission_time<R: Rng + ?Sized>(rng: &mut R, ell: f64, lambda: f64) -> f64 {
    ell + Exp::new(lambda).expect("lambda validated positive").sample(rng)
}

/// Warden monitoring arrival, uniform on `[0, w)`.
pub fn sample_warden_arrival<R: Rng + ?Sized>(rng: &mut R, w: f64) -> f64 {
    rng.random_range(0.0..w)
}

/// One line of the optional per-trial transcript.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Event {
    pub trial_index: u64,
    pub event_type: EventType,
    pub time: f64,
    pub vertex: u64,
    pub chunk_index: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EventType {
    Visit,
    Transmit,
    Detect,
}

/// Collects transcript events for one trial; serialize with
/// [`write_transcript`] as line-delimited JSON.
#[derive(Debug, Default)]
pub struct TrialLog {
    pub trial_index: u64,
    pub events: Vec<Event>,
}

impl TrialLog {
    pub fn new(trial_index: u64) -> Self {
        Self { trial_index, events: Vec::new() }
    }

    fn push(&mut self, event_type: EventType, time: f64, vertex: u64, chunk_index: Option<u64>) {
        self.events.push(Event {
            trial_index: self.trial_index,
            event_type,
            time,
            vertex,
            chunk_index,
        });
    }
}

/// Writes one JSON object per line.
pub fn write_transcript<W: std::io::Write>(mut w: W, events: &[Event]) -> std::io::Result<()> {
    for event in events {
        serde_json::to_writer(&mut w, event)?;
        writeln!(w)?;
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Cell {
    Plain,
    EmptyRelay,
    Holds(u64),
    Harvested,
}

/// Relay occupancy carried from dissemination into collection.
#[derive(Debug, Clone)]
pub struct RelayGrid {
    cells: Vec<Cell>,
}

impl RelayGrid {
    /// Places `r` relays on distinct vertices, chosen uniformly at random
    /// once per trial.
    pub fn place<R: Rng + ?Sized>(rng: &mut R, params: &SystemParams) -> Self {
        let s = params.s as usize;
        let mut cells = vec![Cell::Plain; s];
        // Partial Fisher-Yates over vertex ids.
        let mut ids: Vec<u64> = (0..params.s).collect();
        for i in 0..params.r as usize {
            let j = rng.random_range(i..s);
            ids.swap(i, j);
            cells[ids[i] as usize] = Cell::EmptyRelay;
        }
        Self { cells }
    }

    /// Vertices currently holding a chunk, with the chunk index.
    pub fn holders(&self) -> Vec<(u64, u64)> {
        self.cells
            .iter()
            .enumerate()
            .filter_map(|(v, c)| match c {
                Cell::Holds(i) => Some((v as u64, *i)),
                _ => None,
            })
            .collect()
    }
}

/// Elapsed time, vertices visited, and warden detections for one walk phase.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseResult {
    pub time: f64,
    pub steps: u64,
    pub detections: u64,
}

struct Walk<'a, R: Rng + ?Sized> {
    rng: &'a mut R,
    s: u64,
    model: WalkModel,
    current: Option<u64>,
}

impl<'a, R: Rng + ?Sized> Walk<'a, R> {
    fn new(rng: &'a mut R, s: u64, model: WalkModel) -> Self {
        Self { rng, s, model, current: None }
    }

    fn step(&mut self) -> u64 {
        let next = match (self.model, self.current) {
            // The starting vertex is itself a uniform draw.
            (WalkModel::IidUniform, _) | (WalkModel::NoSelfLoop, None) => {
                self.rng.random_range(0..self.s)
            }
            (WalkModel::NoSelfLoop, Some(cur)) => {
                let v = self.rng.random_range(0..self.s - 1);
                if v >= cur {
                    v + 1
                } else {
                    v
                }
            }
        };
        self.current = Some(next);
        next
    }
}

/// Per-visit cost and the detection draw for one real chunk transmission.
///
/// Model 1 charges 1 per visited vertex plus the sampled transmission time
/// at deposit/retrieval vertices. Model 2 charges the deterministic budget
/// `1/lambda + m/k + 1` at every vertex so dwell time leaks nothing; the
/// transmission time is still sampled at real transmissions, but only to
/// decide detection.
fn visit_cost(model: DelayModel, params: &SystemParams) -> f64 {
    match model {
        DelayModel::Model1 => 1.0,
        DelayModel::Model2 => 1.0 / params.lambda + params.chunk_len() + 1.0,
    }
}

struct Transmission {
    duration: f64,
    clock_charge: f64,
    detected: bool,
}

fn transmit<R: Rng + ?Sized>(rng: &mut R, params: &SystemParams, model: DelayModel) -> Transmission {
    let t_tr = sample_transmission_time(rng, params.chunk_len(), params.lambda);
    let arrival = sample_warden_arrival(rng, params.w);
    Transmission {
        duration: t_tr,
        // Model 2 already charged the full per-vertex budget in visit_cost.
        clock_charge: match model {
            DelayModel::Model1 => t_tr,
            DelayModel::Model2 => 0.0,
        },
        detected: arrival <= t_tr,
    }
}

/// Walks the source until `n` chunks sit on `n` distinct relays. Chunk `i`
/// (0-based) is deposited on the `i`-th fresh relay encountered.
pub fn simulate_dissemination<R: Rng + ?Sized>(
    rng: &mut R,
    params: &SystemParams,
    model: DelayModel,
    walk: WalkModel,
    grid: &mut RelayGrid,
    mut log: Option<&mut TrialLog>,
) -> PhaseResult {
    let mut result = PhaseResult { time: 0.0, steps: 0, detections: 0 };
    let mut deposited = 0u64;
    let mut walker = Walk::new(rng, params.s, walk);
    while deposited < params.n {
        let vertex = walker.step();
        result.steps += 1;
        result.time += visit_cost(model, params);
        if let Some(log) = log.as_deref_mut() {
            log.push(EventType::Visit, result.time, vertex, None);
        }
        if grid.cells[vertex as usize] == Cell::EmptyRelay {
            let chunk = deposited;
            let tx = transmit(walker.rng, params, model);
            result.time += tx.clock_charge;
            grid.cells[vertex as usize] = Cell::Holds(chunk);
            deposited += 1;
            if let Some(log) = log.as_deref_mut() {
                log.push(EventType::Transmit, result.time, vertex, Some(chunk));
                if tx.detected {
                    log.push(EventType::Detect, result.time, vertex, Some(chunk));
                }
            }
            if tx.detected {
                result.detections += 1;
            }
            let _ = tx.duration;
        }
    }
    result
}

/// Walks the collector until `k` distinct chunk-holding relays have been
/// visited and harvested. Returns the collected chunk indices in harvest
/// order.
pub fn simulate_collection<R: Rng + ?Sized>(
    rng: &mut R,
    params: &SystemParams,
    model: DelayModel,
    walk: WalkModel,
    grid: &mut RelayGrid,
    mut log: Option<&mut TrialLog>,
) -> (PhaseResult, Vec<u64>) {
    let mut result = PhaseResult { time: 0.0, steps: 0, detections: 0 };
    let mut collected = Vec::with_capacity(params.k as usize);
    let mut walker = Walk::new(rng, params.s, walk);
    while (collected.len() as u64) < params.k {
        let vertex = walker.step();
        result.steps += 1;
        result.time += visit_cost(model, params);
        if let Some(log) = log.as_deref_mut() {
            log.push(EventType::Visit, result.time, vertex, None);
        }
        if let Cell::Holds(chunk) = grid.cells[vertex as usize] {
            let tx = transmit(walker.rng, params, model);
            result.time += tx.clock_charge;
            grid.cells[vertex as usize] = Cell::Harvested;
            collected.push(chunk);
            if let Some(log) = log.as_deref_mut() {
                log.push(EventType::Transmit, result.time, vertex, Some(chunk));
                if tx.detected {
                    log.push(EventType::Detect, result.time, vertex, Some(chunk));
                }
            }
            if tx.detected {
                result.detections += 1;
            }
        }
    }
    (result, collected)
}

/// One simulated end-to-end transfer.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrialOutcome {
    pub dissemination_time: f64,
    pub collection_time: f64,
    pub total_time: f64,
    pub dissemination_steps: u64,
    pub collection_steps: u64,
    pub transmissions: u64,
    pub detected: bool,
}

/// Runs dissemination then collection sequentially; the collector starts
/// only after the source has deposited all `n` chunks.
pub fn run_trial<R: Rng + ?Sized>(
    rng: &mut R,
    params: &SystemParams,
    model: DelayModel,
    walk: WalkModel,
) -> TrialOutcome {
    let (outcome, _) = run_trial_detailed(rng, params, model, walk, None);
    outcome
}

/// As [`run_trial`], also returning the chunk indices the collector
/// harvested (used by the end-to-end codec demo) and optionally logging a
/// transcript.
pub fn run_trial_detailed<R: Rng + ?Sized>(
    rng: &mut R,
    params: &SystemParams,
    model: DelayModel,
    walk: WalkModel,
    mut log: Option<&mut TrialLog>,
) -> (TrialOutcome, Vec<u64>) {
    let mut grid = RelayGrid::place(rng, params);
    let dis = simulate_dissemination(rng, params, model, walk, &mut grid, log.as_deref_mut());
    let (col, collected) = simulate_collection(rng, params, model, walk, &mut grid, log);
    let outcome = TrialOutcome {
        dissemination_time: dis.time,
        collection_time: col.time,
        total_time: dis.time + col.time,
        dissemination_steps: dis.steps,
        collection_steps: col.steps,
        transmissions: params.n + params.k,
        detected: dis.detections + col.detections >= 1,
    };
    (outcome, collected)
}

/// Aggregate statistics over a batch of independent trials.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloSummary {
    pub trials: u64,
    pub seed: u64,
    pub mean_dissemination: f64,
    pub stderr_dissemination: f64,
    pub mean_collection: f64,
    pub stderr_collection: f64,
    pub mean_total: f64,
    pub stderr_total: f64,
    /// Fraction of trials with no detection anywhere.
    pub covertness: f64,
    /// 95% binomial half-width for `covertness`.
    pub covertness_half_width: f64,
}

fn mean_stderr(values: impl Iterator<Item = f64> + Clone, count: u64) -> (f64, f64) {
    let n = count as f64;
    let mean = values.clone().sum::<f64>() / n;
    if count < 2 {
        return (mean, 0.0);
    }
    let var = values.map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// Runs `trials` independent trials with per-trial streams derived from
/// `(seed, trial_index)`. The result is bit-exact for fixed inputs no
/// matter how many worker threads rayon uses, because trials are keyed by
/// index and aggregated in index order.
pub fn run_monte_carlo(
    params: &SystemParams,
    model: DelayModel,
    walk: WalkModel,
    trials: u64,
    seed: u64,
) -> Result<MonteCarloSummary, Error> {
    if trials == 0 {
        return Err(Error::InvalidParams("trials must be at least 1".into()));
    }
    let outcomes: Vec<TrialOutcome> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = trial_rng(seed, i);
            run_trial(&mut rng, params, model, walk)
        })
        .collect();
    Ok(summarize(&outcomes, seed))
}

/// Sequential aggregation of an index-ordered outcome slice.
pub fn summarize(outcomes: &[TrialOutcome], seed: u64) -> MonteCarloSummary {
    let trials = outcomes.len() as u64;
    let (mean_dissemination, stderr_dissemination) =
        mean_stderr(outcomes.iter().map(|o| o.dissemination_time), trials);
    let (mean_collection, stderr_collection) =
        mean_stderr(outcomes.iter().map(|o| o.collection_time), trials);
    let (mean_total, stderr_total) = mean_stderr(outcomes.iter().map(|o| o.total_time), trials);
    let covert = outcomes.iter().filter(|o| !o.detected).count() as f64;
    let p = covert / trials as f64;
    MonteCarloSummary {
        trials,
        seed,
        mean_dissemination,
        stderr_dissemination,
        mean_collection,
        stderr_collection,
        mean_total,
        stderr_total,
        covertness: p,
        covertness_half_width: 1.96 * (p * (1.0 - p) / trials as f64).sqrt(),
    }
}

/// Monte Carlo estimate of the single-transmission detection probability
/// `P(t_tr >= t_ar)`. This is the independent oracle for the closed form in
/// [`crate::analytic::detection_probability`]; it must stay a plain rejection
/// sampler.
pub fn estimate_detection_probability(
    ell: f64,
    lambda: f64,
    w: f64,
    samples: u64,
    seed: u64,
) -> (f64, f64) {
    let chunk = 1 << 16;
    let hits: u64 = (0..samples.div_ceil(chunk))
        .into_par_iter()
        .map(|block| {
            let mut rng = trial_rng(seed, block);
            let lo = block * chunk;
            let hi = (lo + chunk).min(samples);
            let mut h = 0u64;
            for _ in lo..hi {
                let t_tr = sample_transmission_time(&mut rng, ell, lambda);
                let t_ar = sample_warden_arrival(&mut rng, w);
                if t_tr >= t_ar {
                    h += 1;
                }
            }
            h
        })
        .sum();
    let p = hits as f64 / samples as f64;
    (p, (p * (1.0 - p) / samples as f64).sqrt())
}
