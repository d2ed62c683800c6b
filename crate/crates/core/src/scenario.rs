//! Intervention scenarios: when a policy is active and what it changes.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::epidemic::MobilityRules;
use crate::error::Error;
use crate::model::{Parameters, Person};
use crate::world::WorldState;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ScenarioId {
    /// No epidemic at all; the reference for wealth deltas.
    Baseline,
    DoNothing,
    Lockdown,
    ConditionalLockdown,
    VerticalIsolation,
    PartialIsolation,
    FaceMasks,
    MasksPlusPartial,
    /// Hand-built policy.
    Custom,
}

impl ScenarioId {
    /// The seven intervention scenarios, without the baseline.
    pub const INTERVENTIONS: [ScenarioId; 7] = [
        ScenarioId::DoNothing,
        ScenarioId::Lockdown,
        ScenarioId::ConditionalLockdown,
        ScenarioId::VerticalIsolation,
        ScenarioId::PartialIsolation,
        ScenarioId::FaceMasks,
        ScenarioId::MasksPlusPartial,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ScenarioId::Baseline => "baseline",
            ScenarioId::DoNothing => "do-nothing",
            ScenarioId::Lockdown => "lockdown",
            ScenarioId::ConditionalLockdown => "conditional-lockdown",
            ScenarioId::VerticalIsolation => "vertical",
            ScenarioId::PartialIsolation => "partial",
            ScenarioId::FaceMasks => "masks",
            ScenarioId::MasksPlusPartial => "masks-partial",
            ScenarioId::Custom => "custom",
        }
    }
}

impl fmt::Display for ScenarioId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ScenarioId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        std::iter::once(ScenarioId::Baseline)
            .chain(ScenarioId::INTERVENTIONS)
            .chain(std::iter::once(ScenarioId::Custom))
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::UnknownScenario(s.to_string()))
    }
}

/// When the policy's restrictions are in force.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Trigger {
    Never,
    Always,
    /// While the infected fraction is at or above the threshold.
    InfectedAtLeast(f64),
}

/// Who is kept at home while the policy is active.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Isolation {
    Nobody,
    Everybody,
    /// People older than `over`, younger than `under`, and anyone who needs
    /// hospital care.
    Vertical { over: f64, under: f64 },
    /// The people flagged at start-up with probability `isolation_level`.
    Random,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioPolicy {
    pub id: ScenarioId,
    pub trigger: Trigger,
    pub isolation: Isolation,
    /// Fraction of people flagged for random isolation.
    pub isolation_level: f64,
    /// Replaces the contagion distance while active (masks).
    pub contagion_distance: Option<f64>,
    /// Replaces the contagion probability while active (masks).
    pub contagion_probability: Option<f64>,
    /// Replaces the walking amplitude while active.
    pub mobility: Option<f64>,
    /// Replaces the initial infected and immune fractions.
    pub seeding: Option<(f64, f64)>,
}

impl ScenarioPolicy {
    /// No restrictions and default seeding.
    pub fn unrestricted(id: ScenarioId) -> Self {
        Self {
            id,
            trigger: Trigger::Never,
            isolation: Isolation::Nobody,
            isolation_level: 0.0,
            contagion_distance: None,
            contagion_probability: None,
            mobility: None,
            seeding: None,
        }
    }

    /// Parameters with this scenario's seeding applied.
    pub fn effective_params(&self, params: &Parameters) -> Parameters {
        let mut p = params.clone();
        if let Some((infected, immune)) = self.seeding {
            p.initial_infected = infected;
            p.initial_immune = immune;
        }
        p
    }

    pub fn is_active(&self, infected_fraction: f64) -> bool {
        match self.trigger {
            Trigger::Never => false,
            Trigger::Always => true,
            Trigger::InfectedAtLeast(x) => infected_fraction >= x,
        }
    }

    /// Whether this person is kept at home while the policy is active.
    pub fn isolates(&self, person: &Person) -> bool {
        match self.isolation {
            Isolation::Nobody => false,
            Isolation::Everybody => true,
            Isolation::Vertical { over, under } => {
                person.age > over || person.age < under || person.state.is_symptomatic()
            }
            Isolation::Random => person.isolated,
        }
    }

    /// Movement rules for one person this hour.
    pub fn mobility_rules(&self, person: &Person, active: bool, params: &Parameters) -> MobilityRules {
        let mut rules = MobilityRules::unrestricted(params);
        if active {
            if let Some(m) = self.mobility {
                rules.amplitude = m;
                rules.confined_amplitude = m;
            }
            rules.confined = self.isolates(person);
        }
        rules
    }

    /// Contagion distance and probability this hour.
    pub fn transmission(&self, active: bool, params: &Parameters) -> (f64, f64) {
        let d = params.contagion_distance;
        let p = params.contagion_probability;
        if active {
            (self.contagion_distance.unwrap_or(d), self.contagion_probability.unwrap_or(p))
        } else {
            (d, p)
        }
    }

    pub fn validate(&self) -> Result<(), Error> {
        let bad = |m: String| Err(Error::InvalidParameter(m));
        if !(0.0..=1.0).contains(&self.isolation_level) {
            return bad(format!("isolation level must lie in [0, 1], got {}", self.isolation_level));
        }
        if let Trigger::InfectedAtLeast(x) = self.trigger {
            if !(0.0..1.0).contains(&x) {
                return bad(format!("lockdown threshold must lie in [0, 1), got {x}"));
            }
        }
        if let Some(d) = self.contagion_distance {
            if !(d.is_finite() && d >= 0.0) {
                return bad(format!("contagion distance must be non-negative, got {d}"));
            }
        }
        if let Some(p) = self.contagion_probability {
            if !(0.0..=1.0).contains(&p) {
                return bad(format!("contagion probability must lie in [0, 1], got {p}"));
            }
        }
        if let Some(m) = self.mobility {
            if !(m.is_finite() && m >= 0.0) {
                return bad(format!("mobility must be non-negative, got {m}"));
            }
        }
        Ok(())
    }
}

pub const DEFAULT_ISOLATION_LEVEL: f64 = 0.5;
pub const MASK_DISTANCE: f64 = 0.5;
pub const MASK_PROBABILITY: f64 = 0.3;
pub const LOCKDOWN_MOBILITY: f64 = 1.0;

/// Policy of a named scenario. `critical_limit` is the conditional lockdown
/// threshold.
pub fn make_scenario(id: ScenarioId, params: &Parameters) -> ScenarioPolicy {
    let base = ScenarioPolicy::unrestricted(id);
    let masks = ScenarioPolicy {
        trigger: Trigger::Always,
        contagion_distance: Some(MASK_DISTANCE),
        contagion_probability: Some(MASK_PROBABILITY),
        ..base.clone()
    };
    let partial = ScenarioPolicy {
        trigger: Trigger::Always,
        isolation: Isolation::Random,
        isolation_level: DEFAULT_ISOLATION_LEVEL,
        ..base.clone()
    };
    let lockdown = ScenarioPolicy {
        trigger: Trigger::Always,
        isolation: Isolation::Everybody,
        mobility: Some(LOCKDOWN_MOBILITY),
        ..base.clone()
    };
    match id {
        ScenarioId::Baseline => ScenarioPolicy {
            seeding: Some((0.0, 1.0)),
            ..base
        },
        ScenarioId::DoNothing | ScenarioId::Custom => base,
        ScenarioId::Lockdown => lockdown,
        ScenarioId::ConditionalLockdown => ScenarioPolicy {
            trigger: Trigger::InfectedAtLeast(params.critical_limit),
            ..lockdown
        },
        ScenarioId::VerticalIsolation => ScenarioPolicy {
            trigger: Trigger::Always,
            isolation: Isolation::Vertical { over: 65.0, under: 18.0 },
            ..base
        },
        ScenarioId::PartialIsolation => partial,
        ScenarioId::FaceMasks => masks,
        ScenarioId::MasksPlusPartial => ScenarioPolicy {
            trigger: Trigger::Always,
            isolation: Isolation::Random,
            isolation_level: DEFAULT_ISOLATION_LEVEL,
            ..masks
        },
    }
}

/// Draw one uniform per person and flag it for random isolation when below
/// the policy's isolation level. The draws happen for every policy, so runs
/// with the same seed share their later random numbers across scenarios.
pub fn assign_isolation(world: &mut WorldState, policy: &ScenarioPolicy) {
    let level = match policy.isolation {
        Isolation::Random => policy.isolation_level,
        _ => 0.0,
    };
    for p in &mut world.people {
        p.isolated = world.rng.random::<f64>() < level;
    }
}
