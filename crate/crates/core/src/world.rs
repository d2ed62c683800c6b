use crate::epidemic::HospitalLedger;
use crate::model::{Business, Census, EpidemicState, Government, Healthcare, House, Person, Severity};
use crate::rng::SimRng;

/// Complete simulation state: every agent, the clock, the hospital ledger and
/// the run's random stream.
#[derive(Debug, Clone, PartialEq)]
pub struct WorldState {
    pub people: Vec<Person>,
    pub houses: Vec<House>,
    pub businesses: Vec<Business>,
    pub government: Government,
    pub healthcare: Healthcare,
    pub hospital: HospitalLedger,
    /// Iterations completed so far.
    pub clock: u32,
    pub rng: SimRng,
}

impl WorldState {
    pub fn census(&self) -> Census {
        let mut c = Census::default();
        for p in &self.people {
            match &p.state {
                EpidemicState::Susceptible => c.susceptible += 1,
                EpidemicState::Recovered => c.recovered += 1,
                EpidemicState::Dead => c.dead += 1,
                EpidemicState::Infected(inf) => {
                    c.infected += 1;
                    match inf.severity {
                        None | Some(Severity::Asymptomatic) => c.asymptomatic += 1,
                        Some(Severity::Hospitalized) => c.hospitalized += 1,
                        Some(Severity::Severe) => c.severe += 1,
                    }
                }
            }
        }
        c
    }

    /// Fraction of the population currently infected.
    pub fn infected_fraction(&self) -> f64 {
        self.census().infected as f64 / self.people.len() as f64
    }

    pub fn people_wealth(&self) -> f64 {
        self.people.iter().map(|p| p.wealth).sum()
    }

    pub fn house_wealth(&self) -> f64 {
        self.houses.iter().map(|h| h.wealth).sum()
    }

    pub fn business_wealth(&self) -> f64 {
        self.businesses.iter().map(|b| b.wealth).sum()
    }

    /// Sum of wealth over every agent.
    pub fn total_wealth(&self) -> f64 {
        self.people_wealth()
            + self.house_wealth()
            + self.business_wealth()
            + self.government.wealth
            + self.healthcare.wealth
    }
}
