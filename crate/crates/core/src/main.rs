use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use episim::config::load_parameters;
use episim::experiment::{run_experiment, Arm, Experiment};
use episim::model::Parameters;
use episim::output::export_results;
use episim::scenario::{ScenarioId, Trigger};
use episim::sim::HOURS_PER_DAY;

#[derive(Parser)]
#[command(name = "episim", version, about = "Epidemic and economy simulation of social-distancing scenarios")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Monte Carlo replications per scenario.
    #[arg(long, default_value_t = 35)]
    runs: usize,
    /// Simulated days (at least 30).
    #[arg(long, default_value_t = 60)]
    days: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output directory for raw.csv, aggregate.csv and metrics.json.
    #[arg(long, default_value = "results")]
    out: PathBuf,
    /// TOML parameter file.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Run one scenario and the baseline.
    Run {
        #[arg(long)]
        scenario: ScenarioId,
        /// Parameter override, key=value.
        #[arg(long = "param", alias = "set", value_name = "KEY=VALUE")]
        overrides: Vec<String>,
        /// Fraction of people isolated by the partial-isolation policies.
        #[arg(long)]
        isolation_level: Option<f64>,
        /// Infected fraction that triggers the conditional lockdown.
        #[arg(long)]
        threshold: Option<f64>,
        #[command(flatten)]
        common: Common,
    },
    /// Run one scenario over a range of values of a parameter.
    Sweep {
        /// Parameter to vary: isolation-level, lockdown-threshold or any model parameter.
        #[arg(long)]
        param: String,
        /// Values as start:stop:step (inclusive) or a comma-separated list.
        #[arg(long)]
        values: String,
        #[arg(long, default_value = "partial")]
        scenario: ScenarioId,
        /// Parameter override applied to every value, key=value.
        #[arg(long = "set", value_name = "KEY=VALUE")]
        overrides: Vec<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Run several scenarios and the baseline.
    Compare {
        /// `all` or a comma-separated list of scenario ids.
        #[arg(long, default_value = "all")]
        scenarios: String,
        #[arg(long = "param", alias = "set", value_name = "KEY=VALUE")]
        overrides: Vec<String>,
        #[command(flatten)]
        common: Common,
    },
}

fn parse_values(spec: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() == 3 {
        let [start, stop, step] = [parts[0], parts[1], parts[2]].map(|s| s.trim().parse::<f64>());
        let (start, stop, step) = (start?, stop?, step?);
        if !(step > 0.0) || stop < start {
            bail!("range `{spec}` needs start <= stop and a positive step");
        }
        let n = ((stop - start) / step + 1e-9).floor() as usize;
        return Ok((0..=n)
            .map(|k| ((start + k as f64 * step) * 1e10).round() / 1e10)
            .collect());
    }
    spec.split(',')
        .map(|s| s.trim().parse::<f64>().with_context(|| format!("bad value `{s}`")))
        .collect()
}

fn parse_scenarios(spec: &str) -> Result<Vec<ScenarioId>> {
    if spec == "all" {
        return Ok(ScenarioId::INTERVENTIONS.to_vec());
    }
    let ids = spec
        .split(',')
        .map(|s| s.trim().parse::<ScenarioId>())
        .collect::<Result<Vec<_>, _>>()?;
    if ids.contains(&ScenarioId::Baseline) {
        bail!("the baseline always runs; list intervention scenarios only");
    }
    Ok(ids)
}

fn finish(common: &Common, experiment: &Experiment) -> Result<()> {
    let files = export_results(&common.out, &experiment.batches, &experiment.metrics)?;
    for (label, m) in &experiment.metrics {
        println!(
            "{label:>24}  peak I {:.4} on day {:>3}  deaths {:.4}  dW A1 {:+.4} A3 {:+.4} A4 {:+.4}",
            m.infection_peak, m.day_of_peak, m.final_deaths, m.delta_w.a1, m.delta_w.a3, m.delta_w.a4
        );
    }
    for f in files {
        println!("wrote {}", f.display());
    }
    Ok(())
}

fn execute(common: &Common, arms: &[Arm]) -> Result<()> {
    if common.days < 30 {
        bail!("--days must be at least 30");
    }
    let experiment = run_experiment(arms, common.days * HOURS_PER_DAY, common.runs, common.seed)?;
    finish(common, &experiment)
}

fn params(common: &Common, overrides: &[String]) -> Result<Parameters> {
    Ok(load_parameters(common.config.as_deref(), overrides)?)
}

fn main() -> Result<()> {
    match Cli::parse().command {
        Command::Run {
            scenario,
            overrides,
            isolation_level,
            threshold,
            common,
        } => {
            let params = params(&common, &overrides)?;
            let mut arm = Arm::named(scenario, &params);
            if let Some(level) = isolation_level {
                arm.policy.isolation_level = level;
            }
            if let Some(x) = threshold {
                arm.policy.trigger = Trigger::InfectedAtLeast(x);
            }
            execute(&common, &[arm])
        }
        Command::Sweep {
            param,
            values,
            scenario,
            overrides,
            common,
        } => {
            let key = param.replace('-', "_");
            let base = params(&common, &overrides)?;
            let mut arms = Vec::new();
            for v in parse_values(&values)? {
                let mut arm = match key.as_str() {
                    "isolation_level" => {
                        let mut arm = Arm::named(scenario, &base);
                        arm.policy.isolation_level = v;
                        arm
                    }
                    "lockdown_threshold" => {
                        let mut arm = Arm::named(scenario, &base);
                        arm.policy.trigger = Trigger::InfectedAtLeast(v);
                        arm
                    }
                    _ => {
                        let mut all = overrides.clone();
                        all.push(format!("{key}={v}"));
                        Arm::named(scenario, &params(&common, &all)?)
                    }
                };
                arm.label = format!("{scenario}@{param}={v}");
                arms.push(arm);
            }
            execute(&common, &arms)
        }
        Command::Compare {
            scenarios,
            overrides,
            common,
        } => {
            let params = params(&common, &overrides)?;
            let arms: Vec<Arm> = parse_scenarios(&scenarios)?
                .into_iter()
                .map(|id| Arm::named(id, &params))
                .collect();
            execute(&common, &arms)
        }
    }
}
