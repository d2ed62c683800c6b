//! Agent-based simulation of an epidemic spreading through a small closed
//! economy, used to compare social-distancing policies by their health and
//! economic outcomes.
//!
//! A run builds a world of people, houses, businesses, a government and a
//! healthcare system ([`init::build_world`]), then advances it one hour at a
//! time ([`sim::step`]). Batches of independent runs are aggregated per day
//! ([`batch::run_batch`]) and summarized against a no-epidemic baseline
//! ([`metrics::scenario_metrics`]).

pub mod batch;
pub mod config;
pub mod contacts;
pub mod economy;
pub mod epidemic;
pub mod error;
pub mod experiment;
pub mod init;
pub mod metrics;
pub mod model;
pub mod output;
pub mod rng;
pub mod scenario;
pub mod sim;
pub mod world;

#[cfg(test)]
mod test_util;

pub use error::{Error, Result};
