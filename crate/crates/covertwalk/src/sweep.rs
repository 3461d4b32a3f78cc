//! Parameter-sweep harness: declarative grids over `(r, k, n)`, joined
//! theory/simulation rows, figure presets, CSV emission, and the flat
//! key-value config format mirrored by the CLI flags.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::analytic;
use crate::params::{DelayModel, SystemParams, WalkModel};
use crate::sim;
use crate::Error;

/// One CSV output row: a grid point with its closed-form predictions and,
/// when trials were requested, the simulated means. Column order is fixed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub model: DelayModel,
    pub s: u64,
    pub r: u64,
    pub m: f64,
    pub k: u64,
    pub n: u64,
    pub lambda: f64,
    pub w: f64,
    pub trials: u64,
    pub seed: u64,
    pub theory_dis: f64,
    pub theory_col: f64,
    pub theory_tot: f64,
    pub sim_dis_mean: Option<f64>,
    pub sim_col_mean: Option<f64>,
    pub sim_tot_mean: Option<f64>,
    pub sim_tot_stderr: Option<f64>,
    pub p_d: f64,
    pub p_c: f64,
    pub empirical_p_c: Option<f64>,
}

pub const CSV_COLUMNS: &[&str] = &[
    "model",
    "s",
    "r",
    "m",
    "k",
    "n",
    "lambda",
    "w",
    "trials",
    "seed",
    "theory_dis",
    "theory_col",
    "theory_tot",
    "sim_dis_mean",
    "sim_col_mean",
    "sim_tot_mean",
    "sim_tot_stderr",
    "p_d",
    "p_c",
    "empirical_p_c",
];

fn fmt_opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

impl SweepRow {
    /// Builds the row for one grid point, simulating iff `trials > 0`.
    pub fn evaluate(
        params: &SystemParams,
        model: DelayModel,
        walk: WalkModel,
        trials: u64,
        seed: u64,
    ) -> Result<Self, Error> {
        let mut row = SweepRow {
            model,
            s: params.s,
            r: params.r,
            m: params.m,
            k: params.k,
            n: params.n,
            lambda: params.lambda,
            w: params.w,
            trials,
            seed,
            theory_dis: analytic::expected_dissemination(params, model),
            theory_col: analytic::expected_collection(params, model),
            theory_tot: analytic::expected_total(params, model),
            sim_dis_mean: None,
            sim_col_mean: None,
            sim_tot_mean: None,
            sim_tot_stderr: None,
            p_d: analytic::detection_probability(params),
            p_c: analytic::covertness_probability(params),
            empirical_p_c: None,
        };
        if trials > 0 {
            let summary = sim::run_monte_carlo(params, model, walk, trials, seed)?;
            row.sim_dis_mean = Some(summary.mean_dissemination);
            row.sim_col_mean = Some(summary.mean_collection);
            row.sim_tot_mean = Some(summary.mean_total);
            row.sim_tot_stderr = Some(summary.stderr_total);
            row.empirical_p_c = Some(summary.covertness);
        }
        Ok(row)
    }

    /// Fixed-order CSV cells; floats use the shortest round-trip decimal
    /// form, absent simulation fields are empty.
    pub fn csv_cells(&self) -> Vec<String> {
        vec![
            self.model.to_string(),
            self.s.to_string(),
            self.r.to_string(),
            self.m.to_string(),
            self.k.to_string(),
            self.n.to_string(),
            self.lambda.to_string(),
            self.w.to_string(),
            self.trials.to_string(),
            self.seed.to_string(),
            self.theory_dis.to_string(),
            self.theory_col.to_string(),
            self.theory_tot.to_string(),
            fmt_opt(self.sim_dis_mean),
            fmt_opt(self.sim_col_mean),
            fmt_opt(self.sim_tot_mean),
            fmt_opt(self.sim_tot_stderr),
            self.p_d.to_string(),
            self.p_c.to_string(),
            fmt_opt(self.empirical_p_c),
        ]
    }
}

/// Writes the header plus one line per row.
pub fn write_csv<W: std::io::Write>(mut w: W, rows: &[SweepRow]) -> std::io::Result<()> {
    writeln!(w, "{}", CSV_COLUMNS.join(","))?;
    for row in rows {
        writeln!(w, "{}", row.csv_cells().join(","))?;
    }
    Ok(())
}

/// Declarative grid over `(r, k, n)` on top of a fixed `(s, m, lambda, w)`.
///
/// The cross product is filtered to points satisfying `k <= n <= r <= s`,
/// so ranges like `n in [k, 10]` are expressed by listing `n in [1, 10]`
/// and letting the filter drop the invalid pairs. `trials = 0` means
/// analytic-only rows.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub s: u64,
    pub m: f64,
    pub lambda: f64,
    pub w: f64,
    pub model: DelayModel,
    pub walk: WalkModel,
    pub r_values: Vec<u64>,
    pub k_values: Vec<u64>,
    pub n_values: Vec<u64>,
    pub trials: u64,
    pub seed: u64,
}

impl SweepSpec {
    /// Valid grid points in fixed (r-major, then k, then n) order.
    pub fn grid(&self) -> Result<Vec<SystemParams>, Error> {
        let mut points = Vec::new();
        for &r in &self.r_values {
            for &k in &self.k_values {
                for &n in &self.n_values {
                    if k <= n && n <= r && r <= self.s {
                        points.push(SystemParams::new(
                            self.s, r, self.m, k, n, self.lambda, self.w,
                        )?);
                    }
                }
            }
        }
        if points.is_empty() {
            return Err(Error::InvalidParams("sweep grid contains no valid point".into()));
        }
        Ok(points)
    }

    /// Evaluates every grid point. Fails before any simulation when the
    /// grid is empty.
    pub fn run(&self) -> Result<Vec<SweepRow>, Error> {
        self.grid()?
            .iter()
            .map(|p| SweepRow::evaluate(p, self.model, self.walk, self.trials, self.seed))
            .collect()
    }
}

/// Built-in sweeps matching the reference experiment setups
/// (`s = 50`, `lambda = 1`, `m = 10`, `W = 50` throughout).
///
/// * `fig1` - covertness vs. `k` for `n` in {1, 2, 3, 10, 15}, analytic only.
/// * `fig2` - Model 1 delay vs. `n` for `r` in {5, 10, 15, 20} at `k = 3`.
/// * `fig3` - Model 1 delay vs. `n` for `k` in {1..5} at `r = 10`.
/// * `fig4` - the `fig3` grid under Model 2.
pub fn preset(name: &str, trials: u64, seed: u64) -> Result<SweepSpec, Error> {
    let base = SweepSpec {
        s: 50,
        m: 10.0,
        lambda: 1.0,
        w: 50.0,
        model: DelayModel::Model1,
        walk: WalkModel::IidUniform,
        r_values: vec![],
        k_values: vec![],
        n_values: vec![],
        trials,
        seed,
    };
    match name {
        "fig1" => Ok(SweepSpec {
            r_values: vec![20],
            k_values: (1..=20).collect(),
            n_values: vec![1, 2, 3, 10, 15],
            trials: 0,
            ..base
        }),
        "fig2" => Ok(SweepSpec {
            r_values: vec![5, 10, 15, 20],
            k_values: vec![3],
            n_values: (3..=10).collect(),
            ..base
        }),
        "fig3" => Ok(SweepSpec {
            r_values: vec![10],
            k_values: (1..=5).collect(),
            n_values: (1..=10).collect(),
            ..base
        }),
        "fig4" => Ok(SweepSpec {
            model: DelayModel::Model2,
            r_values: vec![10],
            k_values: (1..=5).collect(),
            n_values: (1..=10).collect(),
            ..base
        }),
        other => Err(Error::InvalidParams(format!("unknown preset '{other}'"))),
    }
}

/// Parses the flat `key = value` config format (one pair per line, `#`
/// comments). Keys mirror the CLI flag names; the CLI lets explicit flags
/// override file values.
pub fn parse_config(text: &str) -> Result<BTreeMap<String, String>, Error> {
    let mut map = BTreeMap::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("line {}: expected key = value", idx + 1)))?;
        let key = key.trim();
        let value = value.trim();
        if key.is_empty() || value.is_empty() {
            return Err(Error::Config(format!("line {}: empty key or value", idx + 1)));
        }
        map.insert(key.to_string(), value.to_string());
    }
    Ok(map)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn row_analytic_only_leaves_sim_fields_empty() {
        let p = SystemParams::new(50, 10, 10.0, 3, 5, 1.0, 50.0).unwrap();
        let row =
            SweepRow::evaluate(&p, DelayModel::Model1, WalkModel::IidUniform, 0, 0).unwrap();
        assert!(row.sim_tot_mean.is_none());
        let cells = row.csv_cells();
        assert_eq!(cells.len(), CSV_COLUMNS.len());
        assert_eq!(cells[13], "");
        assert_eq!(cells[19], "");
    }

    #[test]
    fn row_with_trials_populates_sim_fields() {
        let p = SystemParams::new(50, 10, 10.0, 3, 5, 1.0, 50.0).unwrap();
        let row =
            SweepRow::evaluate(&p, DelayModel::Model1, WalkModel::IidUniform, 500, 1).unwrap();
        assert!(row.sim_tot_mean.is_some());
        assert!(row.empirical_p_c.is_some());
    }

    #[test]
    fn csv_is_deterministic() {
        let spec = preset("fig2", 200, 7).unwrap();
        let rows_a = spec.run().unwrap();
        let rows_b = spec.run().unwrap();
        let mut a = Vec::new();
        let mut b = Vec::new();
        write_csv(&mut a, &rows_a).unwrap();
        write_csv(&mut b, &rows_b).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn fig3_grid_respects_constraints() {
        let spec = preset("fig3", 0, 0).unwrap();
        let grid = spec.grid().unwrap();
        assert!(grid.iter().all(|p| p.k <= p.n && p.n <= p.r));
        // k in 1..=5, n in k..=10: sum over k of (10 - k + 1) points.
        assert_eq!(grid.len(), (1..=5).map(|k| 10 - k + 1).sum::<usize>());
    }

    #[test]
    fn empty_grid_rejected_before_running() {
        let mut spec = preset("fig2", 100, 0).unwrap();
        spec.n_values = vec![40]; // no r can accommodate n = 40
        assert!(spec.run().is_err());
    }

    #[test]
    fn unknown_preset_rejected() {
        assert!(preset("fig9", 0, 0).is_err());
    }

    #[test]
    fn config_parsing() {
        let map = parse_config("s = 50\nr=10 # relays\n\n# comment\nmodel = 2\n").unwrap();
        assert_eq!(map["s"], "50");
        assert_eq!(map["r"], "10");
        assert_eq!(map["model"], "2");
        assert!(parse_config("nonsense line").is_err());
        assert!(parse_config("key =").is_err());
    }
}
