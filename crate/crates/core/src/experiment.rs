//! Several scenario batches run with the same seed, plus the baseline batches
//! their wealth changes are measured against.

use std::collections::BTreeMap;

use crate::batch::{run_batch, BatchResult};
use crate::error::Result;
use crate::metrics::{scenario_metrics, ScenarioMetrics};
use crate::model::Parameters;
use crate::scenario::{make_scenario, ScenarioId, ScenarioPolicy};
use crate::sim::SimulationConfig;

/// One batch to run.
#[derive(Debug, Clone, PartialEq)]
pub struct Arm {
    pub label: String,
    pub params: Parameters,
    pub policy: ScenarioPolicy,
}

impl Arm {
    pub fn named(id: ScenarioId, params: &Parameters) -> Self {
        Self {
            label: id.to_string(),
            params: params.clone(),
            policy: make_scenario(id, params),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Experiment {
    /// Baselines first, then the arms in the order given.
    pub batches: Vec<BatchResult>,
    /// Keyed by arm label.
    pub metrics: BTreeMap<String, ScenarioMetrics>,
}

impl Experiment {
    pub fn batch(&self, label: &str) -> Option<&BatchResult> {
        self.batches.iter().find(|b| b.label == label)
    }
}

/// Run every arm for `hours` iterations and `runs` replications from `seed`.
/// Arms sharing the same parameters share one baseline batch.
pub fn run_experiment(arms: &[Arm], hours: u32, runs: usize, seed: u64) -> Result<Experiment> {
    let mut distinct: Vec<&Parameters> = Vec::new();
    for arm in arms {
        if !distinct.contains(&&arm.params) {
            distinct.push(&arm.params);
        }
    }
    let config = |params: &Parameters, policy: ScenarioPolicy| SimulationConfig {
        params: params.clone(),
        scenario: policy,
        hours,
        runs,
        seed,
    };

    let mut baselines = Vec::with_capacity(distinct.len());
    for (k, params) in distinct.iter().enumerate() {
        let label = if distinct.len() == 1 {
            ScenarioId::Baseline.to_string()
        } else {
            format!("{}#{}", ScenarioId::Baseline, k + 1)
        };
        let policy = make_scenario(ScenarioId::Baseline, params);
        baselines.push(run_batch(&config(params, policy), label)?);
    }

    let mut metrics = BTreeMap::new();
    let mut batches = Vec::with_capacity(arms.len());
    for arm in arms {
        let batch = run_batch(&config(&arm.params, arm.policy.clone()), arm.label.clone())?;
        let k = distinct.iter().position(|p| **p == arm.params).expect("collected above");
        metrics.insert(arm.label.clone(), scenario_metrics(&batch, &baselines[k])?);
        batches.push(batch);
    }
    baselines.extend(batches);
    Ok(Experiment {
        batches: baselines,
        metrics,
    })
}
