//! Protocol parameters and their validity constraints.

use serde::{Deserialize, Serialize};

use crate::Error;

/// Full parameter set for one protocol configuration.
///
/// A message of `m` bits is split into `k` data chunks of length `m/k`,
/// encoded into `n` coded chunks, deposited on `n` of the `r` relays placed
/// on a complete graph of `s` vertices, and later collected. Chunk
/// transmissions take a shifted-exponential time (shift `m/k`, rate
/// `lambda`) and the warden's monitoring arrival is uniform on `[0, w)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SystemParams {
    pub s: u64,
    pub r: u64,
    pub m: f64,
    pub k: u64,
    pub n: u64,
    pub lambda: f64,
    pub w: f64,
}

impl SystemParams {
    /// Validates `1 <= k <= n <= r <= s` and positivity of the real-valued
    /// parameters. All downstream operations assume a validated set.
    pub fn new(s: u64, r: u64, m: f64, k: u64, n: u64, lambda: f64, w: f64) -> Result<Self, Error> {
        if k < 1 {
            return Err(Error::InvalidParams("k must be at least 1".into()));
        }
        if k > n {
            return Err(Error::InvalidParams(format!("k = {k} must not exceed n = {n}")));
        }
        if n > r {
            return Err(Error::InvalidParams(format!("n = {n} must not exceed r = {r}")));
        }
        if r > s {
            return Err(Error::InvalidParams(format!("r = {r} must not exceed s = {s}")));
        }
        if m <= 0.0 || !m.is_finite() {
            return Err(Error::InvalidParams(format!("m must be positive and finite, got {m}")));
        }
        if lambda <= 0.0 || !lambda.is_finite() {
            return Err(Error::InvalidParams(format!(
                "lambda must be positive and finite, got {lambda}"
            )));
        }
        if w <= 0.0 || !w.is_finite() {
            return Err(Error::InvalidParams(format!("w must be positive and finite, got {w}")));
        }
        Ok(Self { s, r, m, k, n, lambda, w })
    }

    /// Chunk length `m/k` in bits. Real-valued; no rounding.
    pub fn chunk_len(&self) -> f64 {
        self.m / self.k as f64
    }

    /// Returns a copy with different `(k, n)`, re-validated.
    pub fn with_kn(&self, k: u64, n: u64) -> Result<Self, Error> {
        Self::new(self.s, self.r, self.m, k, n, self.lambda, self.w)
    }
}

/// Timing model for the walks.
///
/// `Model1`: the warden cannot observe agent movements; a visited vertex
/// costs 1 step, plus a sampled transmission time when a chunk actually
/// changes hands. `Model2`: the warden can observe movements, so agents
/// equalize dwell time at every vertex; each visit carries the full
/// per-vertex budget `1/lambda + m/k + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DelayModel {
    Model1,
    Model2,
}

impl std::str::FromStr for DelayModel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "1" | "model1" => Ok(DelayModel::Model1),
            "2" | "model2" => Ok(DelayModel::Model2),
            other => Err(Error::InvalidParams(format!("unknown delay model '{other}'"))),
        }
    }
}

impl std::fmt::Display for DelayModel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DelayModel::Model1 => write!(f, "1"),
            DelayModel::Model2 => write!(f, "2"),
        }
    }
}

/// Step distribution of the random walk on the complete graph.
///
/// `IidUniform` draws each step uniformly from all `s` vertices,
/// independent across steps; this is the regime the closed forms assume.
/// `NoSelfLoop` excludes the current vertex and has no matching closed
/// form; it exists for sensitivity checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum WalkModel {
    #[default]
    IidUniform,
    NoSelfLoop,
}

impl std::str::FromStr for WalkModel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "iid" => Ok(WalkModel::IidUniform),
            "noselfloop" => Ok(WalkModel::NoSelfLoop),
            other => Err(Error::InvalidParams(format!("unknown walk model '{other}'"))),
        }
    }
}

impl std::fmt::Display for WalkModel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            WalkModel::IidUniform => write!(f, "iid"),
            WalkModel::NoSelfLoop => write!(f, "noselfloop"),
        }
    }
}
