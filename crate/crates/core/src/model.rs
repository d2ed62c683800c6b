//! Domain types shared by every part of the simulator: agents, parameters,
//! epidemic state and the per-hour response record.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Number of age brackets in the medical-condition tables (0-9, ..., 80+).
pub const AGE_BRACKETS: usize = 9;

/// Number of income quintiles.
pub const QUINTILES: usize = 5;

/// A point in the simulated environment, in grid units (one unit is about 7 m).
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Position {
    pub x: f64,
    pub y: f64,
}

impl Position {
    pub const ORIGIN: Position = Position { x: 0.0, y: 0.0 };

    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }
}

/// Euclidean distance between two positions.
pub fn distance(p: Position, q: Position) -> f64 {
    (p.x - q.x).hypot(p.y - q.y)
}

/// Clip each coordinate into `[0, height] x [0, width]`.
pub fn clamp_position(p: Position, height: f64, width: f64) -> Position {
    Position {
        x: p.x.clamp(0.0, height),
        y: p.y.clamp(0.0, width),
    }
}

/// Age bracket index used by the medical-condition tables. Ages of 80 and
/// above share the last bracket.
pub fn age_bracket(age: f64) -> usize {
    ((age.max(0.0) / 10.0).floor() as usize).min(AGE_BRACKETS - 1)
}

/// Income quintile, 1 (poorest) to 5 (richest).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Stratum(u8);

impl Stratum {
    pub fn new(q: u8) -> Result<Self> {
        if (1..=QUINTILES as u8).contains(&q) {
            Ok(Self(q))
        } else {
            Err(Error::InvalidParameter(format!("stratum {q} outside 1..=5")))
        }
    }

    pub fn get(self) -> u8 {
        self.0
    }

    /// Zero-based index into the income-share table.
    pub fn index(self) -> usize {
        usize::from(self.0 - 1)
    }

    pub fn all() -> impl Iterator<Item = Stratum> {
        (1..=QUINTILES as u8).map(Stratum)
    }
}

/// Model parameters. Field names double as the keys of the configuration
/// file, so they are stable.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Parameters {
    // Social and demographic.
    /// Environment height (x extent), grid units.
    pub height: f64,
    /// Environment width (y extent), grid units.
    pub width: f64,
    pub population_size: usize,
    /// Beta distribution shape pair for age / 100.
    pub age_shape: (f64, f64),
    pub family_size: usize,
    /// Standard deviation of one hour of free walking, grid units.
    pub mobility: f64,
    pub homeless_rate: f64,

    // Epidemiological.
    pub contagion_distance: f64,
    pub contagion_probability: f64,
    /// Inclusive range of incubation lengths, days.
    pub incubation_days: (u32, u32),
    /// Inclusive range of contagious-window lengths, days.
    pub transmission_days: (u32, u32),
    pub recovering_days: u32,
    pub hospitalization_rate: [f64; AGE_BRACKETS],
    pub severe_rate: [f64; AGE_BRACKETS],
    pub fatality_rate: [f64; AGE_BRACKETS],
    pub initial_infected: f64,
    pub initial_immune: f64,
    pub critical_limit: f64,

    // Economical.
    pub income_shares: [f64; QUINTILES],
    pub formal_business_rate: f64,
    pub total_wealth: f64,
    pub public_share: f64,
    pub business_share: f64,
    pub personal_share: f64,
    pub minimum_income: f64,
    pub minimum_expense: f64,
    pub unemployment_rate: f64,
    pub informal_business_rate: f64,
    /// Open interval of ages belonging to the economically active population.
    pub eap_age: (f64, f64),

    /// Standard deviation of the "go to" position noise.
    pub position_noise: f64,

    // Accounting constants the model needs but the original leaves open.
    pub tax_rate: f64,
    pub spend_per_contact: f64,
    pub hospital_cost_per_patient_day: f64,
    pub capacity_fatality_multiplier: f64,
    pub healthcare_fixed_expense: f64,
}

impl Default for Parameters {
    fn default() -> Self {
        Self {
            height: 500.0,
            width: 500.0,
            population_size: 300,
            age_shape: (2.0, 4.0),
            family_size: 3,
            mobility: 10.0,
            homeless_rate: 0.0005,

            contagion_distance: 1.0,
            contagion_probability: 0.9,
            incubation_days: (5, 6),
            transmission_days: (8, 10),
            recovering_days: 20,
            hospitalization_rate: [
                0.001, 0.003, 0.012, 0.032, 0.049, 0.102, 0.166, 0.243, 0.273,
            ],
            severe_rate: [0.05, 0.05, 0.05, 0.05, 0.063, 0.122, 0.274, 0.432, 0.709],
            fatality_rate: [
                0.00002, 0.00006, 0.0003, 0.0008, 0.0015, 0.006, 0.022, 0.051, 0.093,
            ],
            initial_infected: 0.01,
            initial_immune: 0.01,
            critical_limit: 0.05,

            // Q3 follows the cumulative column (24.17 - 11.50), so the shares sum to one.
            income_shares: [0.0362, 0.0788, 0.1267, 0.1971, 0.5612],
            formal_business_rate: 0.01875,
            total_wealth: 1_000_000.0,
            public_share: 0.01,
            business_share: 0.05,
            personal_share: 0.94,
            minimum_income: 900.0,
            minimum_expense: 600.0,
            unemployment_rate: 0.12,
            informal_business_rate: 0.40,
            eap_age: (16.0, 65.0),

            position_noise: 0.01,

            tax_rate: 0.10,
            spend_per_contact: 130.0,
            hospital_cost_per_patient_day: 30.0,
            capacity_fatality_multiplier: 10.0,
            healthcare_fixed_expense: 0.0,
        }
    }
}

impl Parameters {
    /// Distance at or below which two agents are in contact. The same value
    /// as the contagion distance.
    pub fn contact_threshold(&self) -> f64 {
        self.contagion_distance
    }

    /// Personal share implied by the public and business shares.
    pub fn derived_personal_share(&self) -> f64 {
        1.0 - self.public_share - self.business_share
    }

    /// Hospital capacity in beds.
    pub fn hospital_capacity(&self) -> usize {
        (self.critical_limit * self.population_size as f64 + 1e-9).floor() as usize
    }

    /// Ratio of a quintile's income share to the given reference quintile's.
    pub fn share_ratio(&self, q: Stratum, reference: Stratum) -> f64 {
        self.income_shares[q.index()] / self.income_shares[reference.index()]
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));

        for (name, v) in [("height", self.height), ("width", self.width)] {
            if !(v.is_finite() && v > 0.0) {
                return bad(format!("{name} must be positive, got {v}"));
            }
        }
        if self.population_size < 1 {
            return bad("population_size must be at least 1".into());
        }
        if self.family_size < 1 {
            return bad("family_size must be at least 1".into());
        }
        let (a, b) = self.age_shape;
        if !(a > 0.0 && b > 0.0 && a.is_finite() && b.is_finite()) {
            return bad(format!("age_shape must be positive, got ({a}, {b})"));
        }
        for (name, v) in [
            ("mobility", self.mobility),
            ("contagion_distance", self.contagion_distance),
            ("position_noise", self.position_noise),
            ("total_wealth", self.total_wealth),
            ("minimum_income", self.minimum_income),
            ("minimum_expense", self.minimum_expense),
            ("formal_business_rate", self.formal_business_rate),
            ("informal_business_rate", self.informal_business_rate),
            ("spend_per_contact", self.spend_per_contact),
            ("hospital_cost_per_patient_day", self.hospital_cost_per_patient_day),
            ("healthcare_fixed_expense", self.healthcare_fixed_expense),
            ("capacity_fatality_multiplier", self.capacity_fatality_multiplier),
        ] {
            if !(v.is_finite() && v >= 0.0) {
                return bad(format!("{name} must be non-negative, got {v}"));
            }
        }

        let probabilities = [
            ("homeless_rate", self.homeless_rate),
            ("contagion_probability", self.contagion_probability),
            ("initial_infected", self.initial_infected),
            ("initial_immune", self.initial_immune),
            ("critical_limit", self.critical_limit),
            ("public_share", self.public_share),
            ("business_share", self.business_share),
            ("personal_share", self.personal_share),
            ("unemployment_rate", self.unemployment_rate),
            ("tax_rate", self.tax_rate),
        ];
        for (name, p) in probabilities {
            check_probability(name, p)?;
        }
        for (name, table) in [
            ("hospitalization_rate", &self.hospitalization_rate),
            ("severe_rate", &self.severe_rate),
            ("fatality_rate", &self.fatality_rate),
        ] {
            for &p in table.iter() {
                check_probability(name, p)?;
            }
        }

        for (name, (lo, hi)) in [
            ("incubation_days", self.incubation_days),
            ("transmission_days", self.transmission_days),
        ] {
            if lo > hi {
                return bad(format!("{name} range is empty: {lo} > {hi}"));
            }
        }
        if self.recovering_days < 1 {
            return bad("recovering_days must be at least 1".into());
        }
        if self.initial_infected + self.initial_immune > 1.0 + 1e-12 {
            return bad(format!(
                "initial_infected + initial_immune exceeds 1 ({} + {})",
                self.initial_infected, self.initial_immune
            ));
        }

        if self.income_shares.iter().any(|&s| !(s > 0.0 && s.is_finite())) {
            return bad("income_shares must be strictly positive".into());
        }
        let total: f64 = self.income_shares.iter().sum();
        if (total - 1.0).abs() > 1e-9 {
            return bad(format!("income_shares sum to {total}, expected 1"));
        }
        let shares = self.public_share + self.business_share + self.personal_share;
        if (shares - 1.0).abs() > 1e-9 {
            return bad(format!(
                "public, business and personal shares sum to {shares}, expected 1"
            ));
        }
        let (lo, hi) = self.eap_age;
        if !(lo <= hi) {
            return bad(format!("eap_age interval is empty: ({lo}, {hi})"));
        }
        Ok(())
    }
}

fn check_probability(name: &str, p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{name} must lie in [0, 1], got {p}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Phase {
    /// Infected but not yet transmitting.
    Incubating,
    /// Transmitting to contacts.
    Contagious,
    /// Past the contagious window, still infected.
    Convalescent,
}

/// Ordered so that `max` picks the worse condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Severity {
    Asymptomatic,
    Hospitalized,
    Severe,
}

impl Severity {
    pub fn needs_care(self) -> bool {
        self >= Severity::Hospitalized
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Infection {
    pub phase: Phase,
    /// Defined once the incubation period is over.
    pub severity: Option<Severity>,
    pub infection_day: u32,
    pub incubation_length: u32,
    pub contagious_length: u32,
    /// Set the first time the agent needed a hospital bed and none was free.
    pub unserved: bool,
}

impl Infection {
    pub fn new(infection_day: u32, incubation_length: u32, contagious_length: u32) -> Self {
        Self {
            phase: Phase::Incubating,
            severity: None,
            infection_day,
            incubation_length,
            contagious_length,
            unserved: false,
        }
    }

    pub fn is_contagious(&self) -> bool {
        self.phase == Phase::Contagious
    }

    pub fn needs_care(&self) -> bool {
        self.severity.is_some_and(Severity::needs_care)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum EpidemicState {
    Susceptible,
    Infected(Infection),
    Recovered,
    Dead,
}

impl EpidemicState {
    pub fn is_alive(&self) -> bool {
        !matches!(self, EpidemicState::Dead)
    }

    pub fn infection(&self) -> Option<&Infection> {
        match self {
            EpidemicState::Infected(inf) => Some(inf),
            _ => None,
        }
    }

    pub fn is_contagious(&self) -> bool {
        self.infection().is_some_and(Infection::is_contagious)
    }

    pub fn is_symptomatic(&self) -> bool {
        self.infection().is_some_and(Infection::needs_care)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Employment {
    Employed(usize),
    Unemployed,
    /// Outside the economically active age band.
    Inactive,
}

/// A1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Person {
    pub position: Position,
    pub age: f64,
    /// `None` for homeless people.
    pub house: Option<usize>,
    pub employment: Employment,
    pub state: EpidemicState,
    pub wealth: f64,
    pub stratum: Stratum,
    pub isolated: bool,
}

impl Person {
    pub fn is_alive(&self) -> bool {
        self.state.is_alive()
    }

    pub fn is_homeless(&self) -> bool {
        self.house.is_none()
    }

    pub fn employer(&self) -> Option<usize> {
        match self.employment {
            Employment::Employed(b) => Some(b),
            _ => None,
        }
    }

    /// Eligible for government aid: unemployed or homeless.
    pub fn receives_aid(&self) -> bool {
        self.is_homeless() || self.employment == Employment::Unemployed
    }
}

/// A2.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct House {
    pub position: Position,
    pub wealth: f64,
    pub stratum: Stratum,
    pub members: Vec<usize>,
    /// Gross income since the last accounting.
    pub income: f64,
    /// Fixed expenses accrued since the last accounting, owed to suppliers.
    pub supplier_debt: f64,
}

/// A3.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Business {
    pub position: Position,
    pub wealth: f64,
    pub stratum: Stratum,
    pub employees: Vec<usize>,
    /// Gross income since the last accounting.
    pub income: f64,
}

/// A4.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Government {
    pub position: Position,
    pub wealth: f64,
}

/// A5.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Healthcare {
    pub position: Position,
    pub wealth: f64,
    /// Bed-days served since the last accounting.
    pub patient_days: u64,
}

/// Reference to any agent in the world.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Agent {
    Person(usize),
    House(usize),
    Business(usize),
    Government,
    Healthcare,
}

/// Population counts behind a [`ResponseRecord`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Census {
    pub susceptible: usize,
    pub infected: usize,
    pub asymptomatic: usize,
    pub hospitalized: usize,
    pub severe: usize,
    pub recovered: usize,
    pub dead: usize,
}

impl Census {
    pub fn total(&self) -> usize {
        self.susceptible + self.infected + self.recovered + self.dead
    }
}

/// The ten response variables observed each hour.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct ResponseRecord {
    pub susceptible: f64,
    pub infected: f64,
    pub asymptomatic: f64,
    pub hospitalized: f64,
    pub severe: f64,
    pub recovered: f64,
    pub dead: f64,
    pub wealth_people: f64,
    pub wealth_business: f64,
    pub wealth_government: f64,
}

/// Column names, in CSV order.
pub const VARIABLES: [&str; 10] = [
    "S", "I", "I_A", "I_H", "I_S", "R", "D", "W_A1", "W_A3", "W_A4",
];

impl ResponseRecord {
    pub fn values(&self) -> [f64; 10] {
        [
            self.susceptible,
            self.infected,
            self.asymptomatic,
            self.hospitalized,
            self.severe,
            self.recovered,
            self.dead,
            self.wealth_people,
            self.wealth_business,
            self.wealth_government,
        ]
    }

    pub fn from_values(v: [f64; 10]) -> Self {
        Self {
            susceptible: v[0],
            infected: v[1],
            asymptomatic: v[2],
            hospitalized: v[3],
            severe: v[4],
            recovered: v[5],
            dead: v[6],
            wealth_people: v[7],
            wealth_business: v[8],
            wealth_government: v[9],
        }
    }

    /// Element-wise mean of a non-empty slice of records.
    pub fn mean(records: &[ResponseRecord]) -> ResponseRecord {
        let n = records.len() as f64;
        let mut acc = [0.0; 10];
        for r in records {
            for (a, v) in acc.iter_mut().zip(r.values()) {
                *a += v;
            }
        }
        ResponseRecord::from_values(acc.map(|a| a / n))
    }
}
