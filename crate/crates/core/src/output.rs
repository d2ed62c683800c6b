//! CSV and JSON result files.

use std::collections::BTreeMap;
use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::batch::BatchResult;
use crate::error::{Error, Result};
use crate::metrics::ScenarioMetrics;
use crate::model::{ResponseRecord, VARIABLES};

pub const RAW_FILE: &str = "raw.csv";
pub const AGGREGATE_FILE: &str = "aggregate.csv";
pub const METRICS_FILE: &str = "metrics.json";

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> Error + '_ {
    move |source| Error::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn csv_err(path: &Path) -> impl FnOnce(csv::Error) -> Error + '_ {
    move |source| Error::Csv {
        path: path.to_path_buf(),
        source,
    }
}

fn fmt(x: f64) -> String {
    format!("{x:.6}")
}

/// One row per scenario, run and (1-based) day.
pub fn write_raw(path: &Path, batches: &[BatchResult]) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(csv_err(path))?;
    let mut header = vec!["scenario", "run", "day"];
    header.extend(VARIABLES);
    w.write_record(&header).map_err(csv_err(path))?;
    for b in batches {
        for (run, days) in b.daily.iter().enumerate() {
            for (d, rec) in days.iter().enumerate() {
                let mut row = vec![b.label.clone(), run.to_string(), (d + 1).to_string()];
                row.extend(rec.values().map(fmt));
                w.write_record(&row).map_err(csv_err(path))?;
            }
        }
    }
    w.flush().map_err(io_err(path))
}

/// One row per scenario, day and variable with the mean and standard
/// deviation across runs.
pub fn write_aggregate(path: &Path, batches: &[BatchResult]) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(csv_err(path))?;
    w.write_record(["scenario", "day", "variable", "mean", "std"])
        .map_err(csv_err(path))?;
    for b in batches {
        for (d, (m, s)) in b.mean.iter().zip(&b.std).enumerate() {
            for (k, name) in VARIABLES.iter().enumerate() {
                let day = (d + 1).to_string();
                w.write_record([b.label.as_str(), &day, name, &fmt(m.values()[k]), &fmt(s.values()[k])])
                    .map_err(csv_err(path))?;
            }
        }
    }
    w.flush().map_err(io_err(path))
}

pub fn write_metrics(path: &Path, metrics: &BTreeMap<String, ScenarioMetrics>) -> Result<()> {
    let file = File::create(path).map_err(io_err(path))?;
    let mut out = BufWriter::new(file);
    serde_json::to_writer_pretty(&mut out, metrics).map_err(|source| Error::Json {
        path: path.to_path_buf(),
        source,
    })?;
    writeln!(out).map_err(io_err(path))?;
    out.flush().map_err(io_err(path))
}

/// Write all three result files into `dir`, creating it if needed. Returns
/// the paths written.
pub fn export_results(
    dir: &Path,
    batches: &[BatchResult],
    metrics: &BTreeMap<String, ScenarioMetrics>,
) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir).map_err(io_err(dir))?;
    let raw = dir.join(RAW_FILE);
    let agg = dir.join(AGGREGATE_FILE);
    let met = dir.join(METRICS_FILE);
    write_raw(&raw, batches)?;
    write_aggregate(&agg, batches)?;
    write_metrics(&met, metrics)?;
    Ok(vec![raw, agg, met])
}

/// A row of the raw CSV.
#[derive(Debug, Clone, PartialEq)]
pub struct RawRow {
    pub scenario: String,
    pub run: usize,
    pub day: usize,
    pub record: ResponseRecord,
}

#[derive(Deserialize)]
struct RawCsvRow {
    scenario: String,
    run: usize,
    day: usize,
    #[serde(rename = "S")]
    s: f64,
    #[serde(rename = "I")]
    i: f64,
    #[serde(rename = "I_A")]
    ia: f64,
    #[serde(rename = "I_H")]
    ih: f64,
    #[serde(rename = "I_S")]
    is: f64,
    #[serde(rename = "R")]
    r: f64,
    #[serde(rename = "D")]
    d: f64,
    #[serde(rename = "W_A1")]
    w1: f64,
    #[serde(rename = "W_A3")]
    w3: f64,
    #[serde(rename = "W_A4")]
    w4: f64,
}

pub fn read_raw(path: &Path) -> Result<Vec<RawRow>> {
    let mut r = csv::Reader::from_path(path).map_err(csv_err(path))?;
    r.deserialize::<RawCsvRow>()
        .map(|row| {
            let row = row.map_err(csv_err(path))?;
            Ok(RawRow {
                scenario: row.scenario,
                run: row.run,
                day: row.day,
                record: ResponseRecord::from_values([
                    row.s, row.i, row.ia, row.ih, row.is, row.r, row.d, row.w1, row.w3, row.w4,
                ]),
            })
        })
        .collect()
}

pub fn read_metrics(path: &Path) -> Result<BTreeMap<String, ScenarioMetrics>> {
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    serde_json::from_str(&text).map_err(|source| Error::Json {
        path: path.to_path_buf(),
        source,
    })
}
