//! Summary metrics of a batch: infection peak, deaths and wealth change
//! against the no-epidemic baseline.

use serde::{Deserialize, Serialize};

use crate::batch::BatchResult;
use crate::error::{Error, Result};
use crate::model::ResponseRecord;

/// Highest value of a daily series and the 1-based day it first occurs.
pub fn infection_peak(series: &[f64]) -> Result<(f64, usize)> {
    let mut best: Option<(f64, usize)> = None;
    for (d, &v) in series.iter().enumerate() {
        if best.is_none_or(|(b, _)| v > b) {
            best = Some((v, d + 1));
        }
    }
    best.ok_or(Error::EmptySeries)
}

/// Relative change of a final wealth share against the baseline's.
pub fn wealth_delta(scenario: f64, baseline: f64, group: &'static str) -> Result<f64> {
    if baseline == 0.0 {
        return Err(Error::ZeroBaseline { group });
    }
    Ok((scenario - baseline) / baseline)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WealthDelta {
    pub a1: f64,
    pub a3: f64,
    pub a4: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScenarioMetrics {
    pub infection_peak: f64,
    pub day_of_peak: usize,
    pub final_deaths: f64,
    pub delta_w: WealthDelta,
}

fn last(batch: &BatchResult) -> Result<ResponseRecord> {
    batch.mean.last().copied().ok_or(Error::EmptySeries)
}

/// Metrics of `batch` from its per-day means, with wealth changes measured
/// against `baseline` on the final day.
pub fn scenario_metrics(batch: &BatchResult, baseline: &BatchResult) -> Result<ScenarioMetrics> {
    let infected: Vec<f64> = batch.mean.iter().map(|r| r.infected).collect();
    let (peak, day) = infection_peak(&infected)?;
    let end = last(batch)?;
    let base = last(baseline)?;
    Ok(ScenarioMetrics {
        infection_peak: peak,
        day_of_peak: day,
        final_deaths: end.dead,
        delta_w: WealthDelta {
            a1: wealth_delta(end.wealth_people, base.wealth_people, "A1")?,
            a3: wealth_delta(end.wealth_business, base.wealth_business, "A3")?,
            a4: wealth_delta(end.wealth_government, base.wealth_government, "A4")?,
        },
    })
}
