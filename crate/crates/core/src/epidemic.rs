//! Hourly movement, contagion on contact and daily disease progression.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::init::jitter;
use crate::model::{
    age_bracket, Business, EpidemicState, House, Infection, Parameters, Person, Phase, Position,
    Severity, AGE_BRACKETS,
};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum MovementAction {
    GoHome,
    GoToWork,
    /// Random step with the given standard deviation per axis.
    WalkFreely { amplitude: f64 },
    GoToHospital,
    StayStill,
}

impl MovementAction {
    pub fn is_free_walk(&self) -> bool {
        matches!(self, MovementAction::WalkFreely { .. })
    }
}

/// What the active policy allows a given person to do this hour.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MobilityRules {
    /// Kept at home (lockdown or isolation).
    pub confined: bool,
    /// Step amplitude for free walking.
    pub amplitude: f64,
    /// Step amplitude for confined people with no home to stay in.
    pub confined_amplitude: f64,
}

impl MobilityRules {
    pub fn unrestricted(params: &Parameters) -> Self {
        Self {
            confined: false,
            amplitude: params.mobility,
            confined_amplitude: 1.0,
        }
    }
}

/// Daily routine: rest 0-8, work 8-12 and 14-18, free time otherwise.
pub fn routine_action(person: &Person, hour: u32, rules: MobilityRules) -> MovementAction {
    if !person.is_alive() {
        return MovementAction::StayStill;
    }
    if person.state.is_symptomatic() {
        return MovementAction::GoToHospital;
    }
    let walk = MovementAction::WalkFreely {
        amplitude: rules.amplitude,
    };
    if rules.confined {
        return if person.is_homeless() {
            MovementAction::WalkFreely {
                amplitude: rules.confined_amplitude,
            }
        } else {
            MovementAction::GoHome
        };
    }
    match hour % 24 {
        0..8 if !person.is_homeless() => MovementAction::GoHome,
        8..12 | 14..18 if person.employer().is_some() => MovementAction::GoToWork,
        _ => walk,
    }
}

/// Fixed places people move to.
#[derive(Debug, Clone, Copy)]
pub struct Sites<'a> {
    pub houses: &'a [House],
    pub businesses: &'a [Business],
    pub hospital: Position,
}

/// New position after taking `action`.
pub fn apply_movement<R: Rng + ?Sized>(
    person: &Person,
    action: MovementAction,
    sites: Sites<'_>,
    params: &Parameters,
    rng: &mut R,
) -> Position {
    if !person.is_alive() {
        return Position::ORIGIN;
    }
    let sigma = params.position_noise;
    match action {
        MovementAction::GoHome => match person.house {
            Some(h) => jitter(sites.houses[h].position, sigma, params, rng),
            None => person.position,
        },
        MovementAction::GoToWork => match person.employer() {
            Some(b) => jitter(sites.businesses[b].position, sigma, params, rng),
            None => person.position,
        },
        MovementAction::WalkFreely { amplitude } => jitter(person.position, amplitude, params, rng),
        MovementAction::GoToHospital => jitter(sites.hospital, sigma, params, rng),
        MovementAction::StayStill => person.position,
    }
}

/// Fresh infection on `day` with incubation and contagious lengths drawn
/// uniformly from their ranges.
pub fn new_infection<R: Rng + ?Sized>(day: u32, params: &Parameters, rng: &mut R) -> Infection {
    let (ilo, ihi) = params.incubation_days;
    let (tlo, thi) = params.transmission_days;
    let incubation = rng.random_range(ilo..=ihi);
    let contagious = rng.random_range(tlo..=thi);
    Infection::new(day, incubation, contagious)
}

/// Transmission attempt between two people in contact. Returns true when a
/// new infection happened.
pub fn attempt_contagion<R: Rng + ?Sized>(
    a: &mut Person,
    b: &mut Person,
    probability: f64,
    day: u32,
    params: &Parameters,
    rng: &mut R,
) -> bool {
    let target = match (&a.state, &b.state) {
        (s, EpidemicState::Susceptible) if s.is_contagious() => b,
        (EpidemicState::Susceptible, s) if s.is_contagious() => a,
        _ => return false,
    };
    if rng.random::<f64>() < probability {
        target.state = EpidemicState::Infected(new_infection(day, params, rng));
        true
    } else {
        false
    }
}

/// Severity given the two uniform draws: the first decides hospitalization,
/// the second whether a hospitalized case is severe.
pub fn severity_from_draws(
    age: f64,
    hospitalization: &[f64; AGE_BRACKETS],
    severe: &[f64; AGE_BRACKETS],
    u_hospital: f64,
    u_severe: f64,
) -> Severity {
    let b = age_bracket(age);
    if u_hospital >= hospitalization[b] {
        Severity::Asymptomatic
    } else if u_severe < severe[b] {
        Severity::Severe
    } else {
        Severity::Hospitalized
    }
}

pub fn draw_severity<R: Rng + ?Sized>(
    age: f64,
    hospitalization: &[f64; AGE_BRACKETS],
    severe: &[f64; AGE_BRACKETS],
    rng: &mut R,
) -> Severity {
    let u = rng.random::<f64>();
    if u >= hospitalization[age_bracket(age)] {
        return Severity::Asymptomatic;
    }
    severity_from_draws(age, hospitalization, severe, u, rng.random())
}

/// Probability of death at the end of the infection.
pub fn effective_fatality(base: f64, unserved: bool, multiplier: f64) -> f64 {
    if unserved {
        (base * multiplier).min(1.0)
    } else {
        base
    }
}

/// Outcome of one day of disease progression.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Progress {
    Unchanged,
    BecameContagious,
    Recovered,
    Died,
}

/// One day of disease progression for an infected person; other states are
/// left alone.
///
/// Severity is drawn when incubation ends and re-drawn on each later day of
/// the infection, keeping the worse of the two. The infection ends
/// `recovering_days` after it started, with death or recovery.
pub fn advance_disease<R: Rng + ?Sized>(
    person: &mut Person,
    day: u32,
    params: &Parameters,
    rng: &mut R,
) -> Progress {
    let EpidemicState::Infected(mut inf) = person.state else {
        return Progress::Unchanged;
    };
    let elapsed = day.saturating_sub(inf.infection_day);

    if elapsed >= params.recovering_days {
        let base = params.fatality_rate[age_bracket(person.age)];
        let p = effective_fatality(base, inf.unserved, params.capacity_fatality_multiplier);
        return if rng.random::<f64>() < p {
            person.state = EpidemicState::Dead;
            person.position = Position::ORIGIN;
            Progress::Died
        } else {
            person.state = EpidemicState::Recovered;
            Progress::Recovered
        };
    }

    let mut progress = Progress::Unchanged;
    if inf.phase == Phase::Incubating {
        if elapsed >= inf.incubation_length {
            inf.phase = Phase::Contagious;
            inf.severity = Some(draw_severity(
                person.age,
                &params.hospitalization_rate,
                &params.severe_rate,
                rng,
            ));
            progress = Progress::BecameContagious;
        }
    } else if let Some(current) = inf.severity {
        let s = draw_severity(person.age, &params.hospitalization_rate, &params.severe_rate, rng);
        inf.severity = Some(current.max(s));
    }

    let contagious_end = (inf.incubation_length + inf.contagious_length).min(params.recovering_days);
    if inf.phase == Phase::Contagious && elapsed >= contagious_end {
        inf.phase = Phase::Convalescent;
    }
    person.state = EpidemicState::Infected(inf);
    progress
}

/// Hospital beds and who occupies them today.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HospitalLedger {
    pub capacity: usize,
    /// Person indices, in admission-priority order.
    pub admitted: Vec<usize>,
}

impl HospitalLedger {
    pub fn new(capacity: usize) -> Self {
        Self {
            capacity,
            admitted: Vec::new(),
        }
    }
}

/// Re-assign beds among everyone needing care: severe before hospitalized,
/// earlier infection first, lower index last. Those left without a bed are
/// marked unserved for the rest of their infection. Returns the number of
/// people who needed care but got no bed.
pub fn update_hospital(people: &mut [Person], ledger: &mut HospitalLedger) -> usize {
    let mut patients: Vec<(std::cmp::Reverse<Severity>, u32, usize)> = people
        .iter()
        .enumerate()
        .filter_map(|(i, p)| {
            let inf = p.state.infection()?;
            let severity = inf.severity.filter(|s| s.needs_care())?;
            Some((std::cmp::Reverse(severity), inf.infection_day, i))
        })
        .collect();
    patients.sort_unstable();

    let served = patients.len().min(ledger.capacity);
    ledger.admitted = patients[..served].iter().map(|&(_, _, i)| i).collect();
    for &(_, _, i) in &patients[served..] {
        if let EpidemicState::Infected(inf) = &mut people[i].state {
            inf.unserved = true;
        }
    }
    patients.len() - served
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Employment, Stratum};
    use crate::test_util::FixedRng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn person(age: f64) -> Person {
        Person {
            position: Position::new(10.0, 10.0),
            age,
            house: Some(0),
            employment: Employment::Employed(0),
            state: EpidemicState::Susceptible,
            wealth: 0.0,
            stratum: Stratum::new(3).unwrap(),
            isolated: false,
        }
    }

    fn contagious(age: f64, severity: Severity) -> Person {
        let mut inf = Infection::new(0, 5, 9);
        inf.phase = Phase::Contagious;
        inf.severity = Some(severity);
        Person {
            state: EpidemicState::Infected(inf),
            ..person(age)
        }
    }

    fn rules() -> MobilityRules {
        MobilityRules::unrestricted(&Parameters::default())
    }

    #[test]
    fn routine_follows_the_daily_timetable() {
        let p = person(30.0);
        assert_eq!(routine_action(&p, 3, rules()), MovementAction::GoHome);
        assert_eq!(routine_action(&p, 10, rules()), MovementAction::GoToWork);
        assert_eq!(routine_action(&p, 15, rules()), MovementAction::GoToWork);
        assert!(routine_action(&p, 12, rules()).is_free_walk());
        assert!(routine_action(&p, 20, rules()).is_free_walk());

        let jobless = Person {
            employment: Employment::Unemployed,
            ..person(30.0)
        };
        assert!(routine_action(&jobless, 10, rules()).is_free_walk());
        let homeless = Person {
            house: None,
            employment: Employment::Unemployed,
            ..person(30.0)
        };
        assert!(routine_action(&homeless, 3, rules()).is_free_walk());
    }

    #[test]
    fn hospital_cases_go_to_hospital() {
        for s in [Severity::Hospitalized, Severity::Severe] {
            let p = contagious(40.0, s);
            assert_eq!(routine_action(&p, 10, rules()), MovementAction::GoToHospital);
            let confined = MobilityRules {
                confined: true,
                ..rules()
            };
            assert_eq!(routine_action(&p, 20, confined), MovementAction::GoToHospital);
        }
        let mild = contagious(40.0, Severity::Asymptomatic);
        assert_eq!(routine_action(&mild, 10, rules()), MovementAction::GoToWork);
    }

    #[test]
    fn confinement_keeps_people_home() {
        let confined = MobilityRules {
            confined: true,
            amplitude: 1.0,
            confined_amplitude: 1.0,
        };
        for hour in 0..24 {
            assert_eq!(routine_action(&person(30.0), hour, confined), MovementAction::GoHome);
        }
        let homeless = Person {
            house: None,
            ..person(30.0)
        };
        assert_eq!(
            routine_action(&homeless, 10, confined),
            MovementAction::WalkFreely { amplitude: 1.0 }
        );
        let dead = Person {
            state: EpidemicState::Dead,
            ..person(30.0)
        };
        assert_eq!(routine_action(&dead, 10, rules()), MovementAction::StayStill);
    }

    fn sites_fixture() -> (Vec<House>, Vec<Business>) {
        let house = House {
            position: Position::new(100.0, 200.0),
            wealth: 0.0,
            stratum: Stratum::new(1).unwrap(),
            members: vec![0],
            income: 0.0,
            supplier_debt: 0.0,
        };
        let business = Business {
            position: Position::new(300.0, 50.0),
            wealth: 0.0,
            stratum: Stratum::new(1).unwrap(),
            employees: vec![0],
            income: 0.0,
        };
        (vec![house], vec![business])
    }

    #[test]
    fn movement_targets() {
        let params = Parameters::default();
        let (houses, businesses) = sites_fixture();
        let sites = Sites {
            houses: &houses,
            businesses: &businesses,
            hospital: Position::new(250.0, 250.0),
        };
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let p = person(30.0);
        for _ in 0..100 {
            let home = apply_movement(&p, MovementAction::GoHome, sites, &params, &mut rng);
            assert!(crate::model::distance(home, houses[0].position) < 5.0 * 0.01 * 1.5);
            let work = apply_movement(&p, MovementAction::GoToWork, sites, &params, &mut rng);
            assert!(crate::model::distance(work, businesses[0].position) < 0.075);
            let hosp = apply_movement(&p, MovementAction::GoToHospital, sites, &params, &mut rng);
            assert!(crate::model::distance(hosp, sites.hospital) < 0.075);
        }
        let still = apply_movement(
            &p,
            MovementAction::WalkFreely { amplitude: 0.0 },
            sites,
            &params,
            &mut rng,
        );
        assert_eq!(still, p.position);

        let dead = Person {
            state: EpidemicState::Dead,
            ..person(30.0)
        };
        let pos = apply_movement(&dead, MovementAction::StayStill, sites, &params, &mut rng);
        assert_eq!(pos, Position::ORIGIN);
    }

    #[test]
    fn free_walk_is_clamped() {
        let params = Parameters::default();
        let (houses, businesses) = sites_fixture();
        let sites = Sites {
            houses: &houses,
            businesses: &businesses,
            hospital: Position::ORIGIN,
        };
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let p = Person {
            position: Position::new(0.5, 499.5),
            ..person(30.0)
        };
        for _ in 0..200 {
            let q = apply_movement(&p, MovementAction::WalkFreely { amplitude: 50.0 }, sites, &params, &mut rng);
            assert!((0.0..=500.0).contains(&q.x) && (0.0..=500.0).contains(&q.y));
        }
    }

    #[test]
    fn contagion_with_forced_draw() {
        let params = Parameters::default();
        let mut a = contagious(30.0, Severity::Asymptomatic);
        let mut b = person(30.0);
        // 0.5 for the contagion draw, then two duration draws.
        let mut rng = FixedRng::new(&[0.5, 0.0, 0.0]);
        assert!(attempt_contagion(&mut a, &mut b, 0.9, 3, &params, &mut rng));
        let inf = b.state.infection().copied().unwrap();
        assert_eq!(inf.phase, Phase::Incubating);
        assert_eq!(inf.infection_day, 3);
        assert!((5..=6).contains(&inf.incubation_length));
        assert!((8..=10).contains(&inf.contagious_length));

        // Same with the roles swapped; a draw above the probability fails.
        let mut a = person(30.0);
        let mut b = contagious(30.0, Severity::Asymptomatic);
        let mut rng = FixedRng::new(&[0.95]);
        assert!(!attempt_contagion(&mut a, &mut b, 0.9, 3, &params, &mut rng));
        assert_eq!(a.state, EpidemicState::Susceptible);
    }

    #[test]
    fn contagion_needs_exactly_one_source() {
        let params = Parameters::default();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut a = person(30.0);
        let mut b = person(30.0);
        assert!(!attempt_contagion(&mut a, &mut b, 1.0, 0, &params, &mut rng));

        let mut a = contagious(30.0, Severity::Asymptomatic);
        let mut b = contagious(30.0, Severity::Asymptomatic);
        assert!(!attempt_contagion(&mut a, &mut b, 1.0, 0, &params, &mut rng));

        // Incubating people do not transmit.
        let mut a = Person {
            state: EpidemicState::Infected(Infection::new(0, 5, 9)),
            ..person(30.0)
        };
        let mut b = person(30.0);
        assert!(!attempt_contagion(&mut a, &mut b, 1.0, 0, &params, &mut rng));

        let mut a = contagious(30.0, Severity::Asymptomatic);
        let mut b = Person {
            state: EpidemicState::Recovered,
            ..person(30.0)
        };
        assert!(!attempt_contagion(&mut a, &mut b, 1.0, 0, &params, &mut rng));
    }

    #[test]
    fn zero_probability_never_infects() {
        let params = Parameters::default();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..10_000 {
            let mut a = contagious(30.0, Severity::Asymptomatic);
            let mut b = person(30.0);
            assert!(!attempt_contagion(&mut a, &mut b, 0.0, 0, &params, &mut rng));
        }
    }

    #[test]
    fn severity_forced_draws() {
        let p = Parameters::default();
        let (h, s) = (&p.hospitalization_rate, &p.severe_rate);
        assert_eq!(severity_from_draws(50.0, h, s, 0.0, 0.0), Severity::Severe);
        assert_eq!(severity_from_draws(50.0, h, s, 0.0, 0.5), Severity::Hospitalized);
        assert_eq!(severity_from_draws(50.0, h, s, 0.5, 0.0), Severity::Asymptomatic);
        // 80+ bracket: 0.273 hospitalized, 0.709 of those severe.
        assert_eq!(severity_from_draws(85.0, h, s, 0.27, 0.70), Severity::Severe);
        assert_eq!(severity_from_draws(85.0, h, s, 0.28, 0.0), Severity::Asymptomatic);
        assert_eq!(severity_from_draws(5.0, h, s, 0.0009, 0.9), Severity::Hospitalized);
        assert_eq!(severity_from_draws(5.0, h, s, 0.0011, 0.0), Severity::Asymptomatic);
    }

    #[test]
    fn fatality_scaling() {
        assert_eq!(effective_fatality(0.093, false, 10.0), 0.093);
        assert!((effective_fatality(0.006, true, 10.0) - 0.06).abs() < 1e-15);
        assert_eq!(effective_fatality(0.2, true, 10.0), 1.0);
    }

    fn infected(age: f64, inf: Infection) -> Person {
        Person {
            state: EpidemicState::Infected(inf),
            ..person(age)
        }
    }

    #[test]
    fn incubation_end_starts_contagion() {
        let params = Parameters::default();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut p = infected(30.0, Infection::new(2, 5, 9));
        assert_eq!(advance_disease(&mut p, 6, &params, &mut rng), Progress::Unchanged);
        assert_eq!(p.state.infection().unwrap().phase, Phase::Incubating);
        assert_eq!(advance_disease(&mut p, 7, &params, &mut rng), Progress::BecameContagious);
        let inf = p.state.infection().unwrap();
        assert_eq!(inf.phase, Phase::Contagious);
        assert!(inf.severity.is_some());
        // Contagious for nine days, then convalescent.
        advance_disease(&mut p, 15, &params, &mut rng);
        assert_eq!(p.state.infection().unwrap().phase, Phase::Contagious);
        advance_disease(&mut p, 16, &params, &mut rng);
        assert_eq!(p.state.infection().unwrap().phase, Phase::Convalescent);
    }

    #[test]
    fn contagious_window_truncated_by_recovery() {
        let params = Parameters {
            recovering_days: 12,
            ..Parameters::default()
        };
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut p = infected(30.0, Infection::new(0, 6, 10));
        for day in 0..12 {
            advance_disease(&mut p, day, &params, &mut rng);
            assert!(matches!(p.state, EpidemicState::Infected(_)));
        }
        assert_eq!(p.state.infection().unwrap().phase, Phase::Contagious);
        let end = advance_disease(&mut p, 12, &params, &mut rng);
        assert!(matches!(end, Progress::Recovered | Progress::Died));
    }

    #[test]
    fn terminal_draw_with_forced_values() {
        let params = Parameters::default();
        let mut inf = Infection::new(0, 5, 9);
        inf.phase = Phase::Convalescent;
        inf.severity = Some(Severity::Severe);

        let mut p = infected(85.0, inf);
        let mut rng = FixedRng::new(&[0.05]);
        assert_eq!(advance_disease(&mut p, 20, &params, &mut rng), Progress::Died);
        assert_eq!(p.state, EpidemicState::Dead);
        assert_eq!(p.position, Position::ORIGIN);

        let mut p = infected(85.0, inf);
        let mut rng = FixedRng::new(&[0.1]);
        assert_eq!(advance_disease(&mut p, 20, &params, &mut rng), Progress::Recovered);

        let zero = Parameters {
            fatality_rate: [0.0; AGE_BRACKETS],
            ..Parameters::default()
        };
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..1000 {
            let mut p = infected(85.0, Infection { unserved: true, ..inf });
            assert_eq!(advance_disease(&mut p, 20, &zero, &mut rng), Progress::Recovered);
        }
    }

    #[test]
    fn unserved_fatality_by_monte_carlo() {
        // Bracket 50-59: fatality 0.006, times 10 when unserved.
        let params = Parameters::default();
        let mut inf = Infection::new(0, 5, 9);
        inf.phase = Phase::Convalescent;
        inf.severity = Some(Severity::Severe);
        inf.unserved = true;
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let n = 100_000;
        let deaths = (0..n)
            .filter(|_| {
                let mut p = infected(55.0, inf);
                advance_disease(&mut p, 20, &params, &mut rng) == Progress::Died
            })
            .count();
        let rate = deaths as f64 / n as f64;
        let sd = (0.06 * 0.94 / n as f64).sqrt();
        assert!((rate - 0.06).abs() < 4.0 * sd, "rate {rate}");
    }

    #[test]
    fn terminal_states_are_absorbing() {
        let params = Parameters::default();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for state in [EpidemicState::Recovered, EpidemicState::Dead, EpidemicState::Susceptible] {
            let mut p = Person { state, ..person(50.0) };
            for day in 0..40 {
                assert_eq!(advance_disease(&mut p, day, &params, &mut rng), Progress::Unchanged);
                assert_eq!(p.state, state);
            }
        }
    }

    #[test]
    fn severity_never_improves() {
        let params = Parameters::default();
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..500 {
            let mut p = infected(75.0, Infection::new(0, 5, 9));
            let mut worst = None;
            for day in 0..20 {
                advance_disease(&mut p, day, &params, &mut rng);
                let s = p.state.infection().unwrap().severity;
                assert!(s >= worst);
                worst = s;
            }
        }
    }

    fn patient(severity: Severity, day: u32) -> Person {
        let mut p = contagious(50.0, severity);
        if let EpidemicState::Infected(inf) = &mut p.state {
            inf.infection_day = day;
        }
        p
    }

    #[test]
    fn hospital_capacity_and_priority() {
        let mut ledger = HospitalLedger::new(15);
        let mut people: Vec<Person> = (0..16).map(|_| patient(Severity::Severe, 1)).collect();
        assert_eq!(update_hospital(&mut people, &mut ledger), 1);
        assert_eq!(ledger.admitted.len(), 15);
        let unserved: Vec<usize> = (0..16)
            .filter(|&i| people[i].state.infection().unwrap().unserved)
            .collect();
        assert_eq!(unserved, vec![15]);

        // Severe first, then earlier infection, then index.
        let mut people = vec![
            patient(Severity::Hospitalized, 0),
            patient(Severity::Severe, 5),
            patient(Severity::Hospitalized, 2),
            patient(Severity::Severe, 3),
            patient(Severity::Asymptomatic, 0),
        ];
        let mut ledger = HospitalLedger::new(3);
        assert_eq!(update_hospital(&mut people, &mut ledger), 1);
        assert_eq!(ledger.admitted, vec![3, 1, 0]);
        assert!(people[2].state.infection().unwrap().unserved);
        assert!(!people[4].state.infection().unwrap().unserved);

        let mut empty: Vec<Person> = (0..5).map(|_| person(20.0)).collect();
        assert_eq!(update_hospital(&mut empty, &mut ledger), 0);
        assert!(ledger.admitted.is_empty());
    }

    #[test]
    fn unserved_flag_is_sticky() {
        let mut people = vec![patient(Severity::Severe, 0), patient(Severity::Severe, 1)];
        let mut ledger = HospitalLedger::new(1);
        update_hospital(&mut people, &mut ledger);
        assert!(people[1].state.infection().unwrap().unserved);
        people[0].state = EpidemicState::Recovered;
        update_hospital(&mut people, &mut ledger);
        assert_eq!(ledger.admitted, vec![1]);
        assert!(people[1].state.infection().unwrap().unserved);
    }

    /// Admission by exhaustive search: the admitted set is the lexicographically
    /// best set of `capacity` patients under the priority order.
    fn brute_force_unserved(keys: &[(u8, u32)], capacity: usize) -> usize {
        let n = keys.len();
        let mut best: Option<Vec<usize>> = None;
        for mask in 0u32..(1 << n) {
            if mask.count_ones() as usize != capacity.min(n) {
                continue;
            }
            let mut chosen: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
            chosen.sort_by_key(|&i| (std::cmp::Reverse(keys[i].0), keys[i].1, i));
            let key: Vec<_> = chosen.iter().map(|&i| (std::cmp::Reverse(keys[i].0), keys[i].1, i)).collect();
            let better = match &best {
                None => true,
                Some(b) => {
                    let bk: Vec<_> = b.iter().map(|&i| (std::cmp::Reverse(keys[i].0), keys[i].1, i)).collect();
                    key < bk
                }
            };
            if better {
                best = Some(chosen);
            }
        }
        n - best.map_or(0, |b| b.len())
    }

    #[test]
    fn admission_matches_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        for _ in 0..200 {
            let n = rng.random_range(0..12);
            let capacity = rng.random_range(0..8);
            let keys: Vec<(u8, u32)> = (0..n)
                .map(|_| (rng.random_range(1..=2u8), rng.random_range(0..4u32)))
                .collect();
            let mut people: Vec<Person> = keys
                .iter()
                .map(|&(s, d)| {
                    patient(if s == 2 { Severity::Severe } else { Severity::Hospitalized }, d)
                })
                .collect();
            let mut ledger = HospitalLedger::new(capacity);
            let unserved = update_hospital(&mut people, &mut ledger);
            assert_eq!(unserved, brute_force_unserved(&keys, capacity));
            assert!(ledger.admitted.len() <= capacity);
        }
    }
}
