//! The hourly simulation loop.

use serde::{Deserialize, Serialize};

use crate::contacts::{Contact, SpatialGrid};
use crate::economy::{business_contact, daily_expenses, monthly_accounting};
use crate::epidemic::{advance_disease, apply_movement, attempt_contagion, routine_action, update_hospital, Sites};
use crate::error::{Error, Result};
use crate::init::build_world_from_stream;
use crate::model::{distance, Census, Parameters, ResponseRecord};
use crate::rng::run_stream;
use crate::scenario::{assign_isolation, ScenarioPolicy};
use crate::world::WorldState;

pub const HOURS_PER_DAY: u32 = 24;
pub const HOURS_PER_MONTH: u32 = 720;

/// Everything needed to run a batch of one scenario.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationConfig {
    pub params: Parameters,
    pub scenario: ScenarioPolicy,
    /// Number of iterations (hours).
    pub hours: u32,
    pub runs: usize,
    pub seed: u64,
}

impl SimulationConfig {
    pub fn days(&self) -> u32 {
        self.hours / HOURS_PER_DAY
    }

    pub fn validate(&self) -> Result<()> {
        self.params.validate()?;
        self.scenario.validate()?;
        if self.hours < HOURS_PER_MONTH || self.hours % HOURS_PER_DAY != 0 {
            return Err(Error::InvalidConfig(format!(
                "horizon must be a whole number of days and at least 30 days, got {} hours",
                self.hours
            )));
        }
        if self.runs == 0 {
            return Err(Error::InvalidConfig("at least one run is required".into()));
        }
        Ok(())
    }
}

/// Per-run scratch space reused across iterations.
#[derive(Debug, Default)]
pub struct Workspace {
    grid: SpatialGrid,
    free_walkers: Vec<bool>,
}

/// Advance the world by iteration `t` (1-based).
pub fn step(world: &mut WorldState, t: u32, params: &Parameters, policy: &ScenarioPolicy, ws: &mut Workspace) {
    let hour = (t - 1) % HOURS_PER_DAY;
    let day = (t - 1) / HOURS_PER_DAY;

    if hour == 0 {
        update_hospital(&mut world.people, &mut world.hospital);
        world.healthcare.patient_days += world.hospital.admitted.len() as u64;
        for i in 0..world.people.len() {
            advance_disease(&mut world.people[i], day, params, &mut world.rng);
        }
    }

    let active = policy.is_active(world.infected_fraction());

    ws.free_walkers.clear();
    let sites = Sites {
        houses: &world.houses,
        businesses: &world.businesses,
        hospital: world.healthcare.position,
    };
    for person in &mut world.people {
        let rules = policy.mobility_rules(person, active, params);
        let action = routine_action(person, hour, rules);
        person.position = apply_movement(person, action, sites, params, &mut world.rng);
        ws.free_walkers.push(action.is_free_walk());
    }

    if t % HOURS_PER_DAY == 0 {
        daily_expenses(world, params);
    }
    if t % HOURS_PER_MONTH == 0 {
        monthly_accounting(world, params);
    }

    let threshold = params.contact_threshold();
    let contacts = ws.grid.contacts(&world.people, &world.businesses, threshold);
    let (reach, probability) = policy.transmission(active, params);
    for c in contacts {
        match c {
            Contact::People(i, j) => {
                let (a, b) = pair_mut(&mut world.people, i, j);
                if distance(a.position, b.position) <= reach {
                    attempt_contagion(a, b, probability, day, params, &mut world.rng);
                }
            }
            Contact::Shop { person, business } => {
                if ws.free_walkers[person] {
                    business_contact(world, person, business, params);
                }
            }
        }
    }
    world.clock = t;
}

fn pair_mut<T>(v: &mut [T], i: usize, j: usize) -> (&mut T, &mut T) {
    debug_assert!(i < j);
    let (lo, hi) = v.split_at_mut(j);
    (&mut lo[i], &mut hi[0])
}

/// The ten response variables for the current state.
pub fn summarize(world: &WorldState, params: &Parameters) -> ResponseRecord {
    let c = world.census();
    let n = world.people.len() as f64;
    let frac = |k: usize| k as f64 / n;
    let total = params.total_wealth;
    ResponseRecord {
        susceptible: frac(c.susceptible),
        infected: frac(c.infected),
        asymptomatic: frac(c.asymptomatic),
        hospitalized: frac(c.hospitalized),
        severe: frac(c.severe),
        recovered: frac(c.recovered),
        dead: frac(c.dead),
        wealth_people: (world.people_wealth() + world.house_wealth()) / total,
        wealth_business: world.business_wealth() / total,
        wealth_government: (world.government.wealth + world.healthcare.wealth) / total,
    }
}

/// Output of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOutput {
    pub run: usize,
    /// One record per iteration.
    pub hourly: Vec<ResponseRecord>,
    /// Population counts per iteration.
    pub census: Vec<Census>,
    /// Absolute total wealth per iteration.
    pub total_wealth: Vec<f64>,
    /// Daily means of the hourly records.
    pub daily: Vec<ResponseRecord>,
}

/// Build the world for `run` and simulate it to the horizon.
pub fn run_simulation(config: &SimulationConfig, run: usize) -> Result<RunOutput> {
    let params = config.scenario.effective_params(&config.params);
    let mut world = build_world_from_stream(&params, run_stream(config.seed, run as u64))?;
    assign_isolation(&mut world, &config.scenario);

    let hours = config.hours as usize;
    let mut out = RunOutput {
        run,
        hourly: Vec::with_capacity(hours),
        census: Vec::with_capacity(hours),
        total_wealth: Vec::with_capacity(hours),
        daily: Vec::new(),
    };
    let mut ws = Workspace::default();
    for t in 1..=config.hours {
        step(&mut world, t, &params, &config.scenario, &mut ws);
        out.hourly.push(summarize(&world, &params));
        out.census.push(world.census());
        out.total_wealth.push(world.total_wealth());
    }
    out.daily = out
        .hourly
        .chunks(HOURS_PER_DAY as usize)
        .map(ResponseRecord::mean)
        .collect();
    Ok(out)
}
