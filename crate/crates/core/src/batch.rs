//! Monte Carlo batches: independent runs in parallel, then per-day mean and
//! standard deviation across runs.

use rayon::prelude::*;

use crate::error::Result;
use crate::model::ResponseRecord;
use crate::sim::{run_simulation, RunOutput, SimulationConfig};

/// Round to the six decimals written to the output files. Batch statistics
/// are computed from these published values, so they can be recomputed
/// exactly from the files.
pub fn publish(x: f64) -> f64 {
    format!("{x:.6}").parse().expect("formatted float parses")
}

#[derive(Debug, Clone, PartialEq)]
pub struct BatchResult {
    /// Name written in the `scenario` column of the outputs.
    pub label: String,
    pub config: SimulationConfig,
    pub runs: Vec<RunOutput>,
    /// Published daily records, `[run][day]`.
    pub daily: Vec<Vec<ResponseRecord>>,
    /// Per-day mean across runs.
    pub mean: Vec<ResponseRecord>,
    /// Per-day population standard deviation across runs.
    pub std: Vec<ResponseRecord>,
}

impl BatchResult {
    pub fn days(&self) -> usize {
        self.mean.len()
    }

    /// Per-day mean of one variable, by column index.
    pub fn mean_series(&self, var: usize) -> Vec<f64> {
        self.mean.iter().map(|r| r.values()[var]).collect()
    }
}

/// Mean and population standard deviation per day and variable.
pub fn aggregate(daily: &[Vec<ResponseRecord>]) -> (Vec<ResponseRecord>, Vec<ResponseRecord>) {
    let n = daily.len() as f64;
    let days = daily.first().map_or(0, Vec::len);
    let mut mean = Vec::with_capacity(days);
    let mut std = Vec::with_capacity(days);
    for d in 0..days {
        let mut m = [0.0; 10];
        for run in daily {
            for (acc, v) in m.iter_mut().zip(run[d].values()) {
                *acc += v;
            }
        }
        let m = m.map(|s| s / n);
        let mut var = [0.0; 10];
        for run in daily {
            for ((acc, v), mu) in var.iter_mut().zip(run[d].values()).zip(m) {
                *acc += (v - mu) * (v - mu);
            }
        }
        mean.push(ResponseRecord::from_values(m));
        std.push(ResponseRecord::from_values(var.map(|s| (s / n).sqrt())));
    }
    (mean, std)
}

/// Run every replication of `config` and aggregate.
pub fn run_batch(config: &SimulationConfig, label: impl Into<String>) -> Result<BatchResult> {
    config.validate()?;
    let runs: Vec<RunOutput> = (0..config.runs)
        .into_par_iter()
        .map(|r| run_simulation(config, r))
        .collect::<Result<_>>()?;
    let daily: Vec<Vec<ResponseRecord>> = runs
        .iter()
        .map(|r| {
            r.daily
                .iter()
                .map(|rec| ResponseRecord::from_values(rec.values().map(publish)))
                .collect()
        })
        .collect();
    let (mean, std) = aggregate(&daily);
    Ok(BatchResult {
        label: label.into(),
        config: config.clone(),
        runs,
        daily,
        mean,
        std,
    })
}
