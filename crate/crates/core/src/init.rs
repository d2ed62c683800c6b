//! Construction of the initial world from parameters and a seed.

use rand::seq::index;
use rand::Rng;
use rand_distr::{Beta, Distribution, Normal};

use crate::epidemic::{new_infection, HospitalLedger};
use crate::error::{Error, Result};
use crate::model::{
    clamp_position, Business, Employment, EpidemicState, Government, Healthcare, House,
    Parameters, Person, Position, Stratum, QUINTILES,
};
use crate::rng::{run_stream, SimRng};
use crate::world::WorldState;

/// Ceiling that ignores floating noise below 1e-9 (so 0.01 * 300 is 3, not 4).
fn ceil_count(x: f64) -> usize {
    (x - 1e-9).ceil().max(0.0) as usize
}

/// Number of houses for a population and an average family size.
pub fn count_houses(population: usize, family_size: usize) -> Result<usize> {
    if family_size == 0 {
        return Err(Error::InvalidParameter("family_size must be at least 1".into()));
    }
    Ok(population.div_ceil(family_size))
}

/// Number of businesses, formal plus informal.
pub fn count_businesses(population: usize, formal_rate: f64, informal_rate: f64) -> usize {
    let n = population as f64;
    ceil_count(n * formal_rate + n * informal_rate)
}

/// Age in years, `100 * Beta(a, b)`.
pub fn sample_age<R: Rng + ?Sized>(shape: (f64, f64), rng: &mut R) -> f64 {
    let beta = Beta::new(shape.0, shape.1).expect("age shape validated as positive");
    100.0 * beta.sample(rng)
}

fn uniform_position<R: Rng + ?Sized>(params: &Parameters, rng: &mut R) -> Position {
    Position::new(
        rng.random_range(0.0..params.height),
        rng.random_range(0.0..params.width),
    )
}

fn uniform_stratum<R: Rng + ?Sized>(rng: &mut R) -> Stratum {
    Stratum::new(rng.random_range(1..=QUINTILES as u8)).expect("in range")
}

/// `anchor + N(0, sigma)` on both axes, clipped to the environment.
pub(crate) fn jitter<R: Rng + ?Sized>(
    anchor: Position,
    sigma: f64,
    params: &Parameters,
    rng: &mut R,
) -> Position {
    let noise = Normal::new(0.0, sigma).expect("non-negative sigma");
    let p = Position::new(anchor.x + noise.sample(rng), anchor.y + noise.sample(rng));
    clamp_position(p, params.height, params.width)
}

/// Build the initial world with the stream of run 0 for `seed`.
pub fn build_world(params: &Parameters, seed: u64) -> Result<WorldState> {
    build_world_from_stream(params, run_stream(seed, 0))
}

/// Build the initial world, consuming `rng`; the world keeps the stream.
pub fn build_world_from_stream(params: &Parameters, mut rng: SimRng) -> Result<WorldState> {
    params.validate()?;
    let population = params.population_size;
    let n_houses = count_houses(population, params.family_size)?;
    let n_businesses =
        count_businesses(population, params.formal_business_rate, params.informal_business_rate);
    if n_businesses == 0 {
        return Err(Error::InvalidParameter(
            "business rates yield no businesses; at least one is required".into(),
        ));
    }

    let mut houses: Vec<House> = (0..n_houses)
        .map(|_| House {
            position: uniform_position(params, &mut rng),
            wealth: 0.0,
            stratum: uniform_stratum(&mut rng),
            members: Vec::new(),
            income: 0.0,
            supplier_debt: 0.0,
        })
        .collect();
    let mut businesses: Vec<Business> = (0..n_businesses)
        .map(|_| Business {
            position: uniform_position(params, &mut rng),
            wealth: 0.0,
            stratum: uniform_stratum(&mut rng),
            employees: Vec::new(),
            income: 0.0,
        })
        .collect();
    let government = Government {
        position: uniform_position(params, &mut rng),
        wealth: 0.0,
    };
    let healthcare = Healthcare {
        position: uniform_position(params, &mut rng),
        wealth: 0.0,
        patient_days: 0,
    };

    let (eap_lo, eap_hi) = params.eap_age;
    let mut people = Vec::with_capacity(population);
    for id in 0..population {
        let age = sample_age(params.age_shape, &mut rng);
        let homeless = rng.random::<f64>() < params.homeless_rate;
        let house = (!homeless).then(|| rng.random_range(0..n_houses));
        let position = match house {
            Some(h) => jitter(houses[h].position, params.position_noise, params, &mut rng),
            None => uniform_position(params, &mut rng),
        };
        let stratum = uniform_stratum(&mut rng);
        let employment = if !(age > eap_lo && age < eap_hi) {
            Employment::Inactive
        } else if homeless || rng.random::<f64>() < params.unemployment_rate {
            Employment::Unemployed
        } else {
            Employment::Employed(rng.random_range(0..n_businesses))
        };

        if let Some(h) = house {
            houses[h].members.push(id);
        }
        if let Employment::Employed(b) = employment {
            businesses[b].employees.push(id);
        }
        people.push(Person {
            position,
            age,
            house,
            employment,
            state: EpidemicState::Susceptible,
            wealth: 0.0,
            stratum,
            isolated: false,
        });
    }

    let infected = ceil_count(params.initial_infected * population as f64).min(population);
    let immune = ceil_count(params.initial_immune * population as f64).min(population - infected);
    let chosen = index::sample(&mut rng, population, infected + immune);
    for (k, id) in chosen.iter().enumerate() {
        people[id].state = if k < infected {
            EpidemicState::Infected(new_infection(0, params, &mut rng))
        } else {
            EpidemicState::Recovered
        };
    }

    let mut world = WorldState {
        people,
        houses,
        businesses,
        government,
        healthcare,
        hospital: HospitalLedger::new(params.hospital_capacity()),
        clock: 0,
        rng,
    };
    distribute_wealth(&mut world, params);
    Ok(world)
}

/// Split `pool` across quintiles by income share and equally within each
/// quintile. Quintiles without recipients are skipped and their share goes
/// proportionally to the others. Returns one amount per recipient, in order.
fn split_by_quintile(pool: f64, strata: &[Stratum], shares: &[f64; QUINTILES]) -> Vec<f64> {
    let mut counts = [0usize; QUINTILES];
    for s in strata {
        counts[s.index()] += 1;
    }
    let active: f64 = (0..QUINTILES)
        .filter(|&q| counts[q] > 0)
        .map(|q| shares[q])
        .sum();
    if active == 0.0 {
        return vec![0.0; strata.len()];
    }
    strata
        .iter()
        .map(|s| pool * shares[s.index()] / active / counts[s.index()] as f64)
        .collect()
}

/// Initial allocation of the total wealth: public share to the government,
/// business share to businesses, personal share to houses (and directly to
/// homeless people). Individuals and the healthcare system start at zero.
pub fn distribute_wealth(world: &mut WorldState, params: &Parameters) {
    let total = params.total_wealth;
    world.government.wealth = params.public_share * total;
    world.healthcare.wealth = 0.0;
    for p in &mut world.people {
        p.wealth = 0.0;
    }

    let strata: Vec<Stratum> = world.businesses.iter().map(|b| b.stratum).collect();
    let amounts = split_by_quintile(params.business_share * total, &strata, &params.income_shares);
    for (b, a) in world.businesses.iter_mut().zip(amounts) {
        b.wealth = a;
    }

    let homeless: Vec<usize> = (0..world.people.len())
        .filter(|&i| world.people[i].is_homeless())
        .collect();
    let strata: Vec<Stratum> = world
        .houses
        .iter()
        .map(|h| h.stratum)
        .chain(homeless.iter().map(|&i| world.people[i].stratum))
        .collect();
    let amounts = split_by_quintile(params.personal_share * total, &strata, &params.income_shares);
    let (to_houses, to_homeless) = amounts.split_at(world.houses.len());
    for (h, &a) in world.houses.iter_mut().zip(to_houses) {
        h.wealth = a;
    }
    for (&i, &a) in homeless.iter().zip(to_homeless) {
        world.people[i].wealth = a;
    }

    // Fold the rounding residue into the government so the sum is exactly the total.
    let residue = total - world.total_wealth();
    world.government.wealth += residue;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Phase;
    use rand::SeedableRng;

    #[test]
    fn house_counts() {
        assert_eq!(count_houses(300, 3).unwrap(), 100);
        assert_eq!(count_houses(1, 1).unwrap(), 1);
        assert_eq!(count_houses(301, 3).unwrap(), 101);
        assert!(count_houses(10, 0).is_err());
    }

    #[test]
    fn business_counts() {
        assert_eq!(count_businesses(300, 0.01875, 0.40), 126);
        assert_eq!(count_businesses(0, 0.3, 0.7), 0);
        assert_eq!(count_businesses(100, 0.01875, 0.40), 42);
    }

    #[test]
    fn ages_within_support_and_mean() {
        let mut rng = SimRng::seed_from_u64(1);
        let n = 100_000;
        let mut sum = 0.0;
        for _ in 0..n {
            let a = sample_age((2.0, 4.0), &mut rng);
            assert!((0.0..=100.0).contains(&a));
            sum += a;
        }
        let mean = sum / n as f64;
        assert!((mean - 100.0 / 3.0).abs() < 1.0, "mean age {mean}");
    }

    #[test]
    fn uniform_ages_pass_ks() {
        let mut rng = SimRng::seed_from_u64(2);
        let n = 5_000;
        let mut xs: Vec<f64> = (0..n).map(|_| sample_age((1.0, 1.0), &mut rng) / 100.0).collect();
        xs.sort_by(f64::total_cmp);
        let d = xs
            .iter()
            .enumerate()
            .map(|(i, &x)| {
                let lo = x - i as f64 / n as f64;
                let hi = (i + 1) as f64 / n as f64 - x;
                lo.max(hi)
            })
            .fold(0.0, f64::max);
        // Kolmogorov critical value at alpha = 0.01 is about 1.628 / sqrt(n).
        assert!(d < 1.628 / (n as f64).sqrt(), "KS statistic {d}");
    }

    #[test]
    fn default_world_shape() {
        let params = Parameters::default();
        let w = build_world(&params, 7).unwrap();
        assert_eq!(w.people.len(), 300);
        assert_eq!(w.houses.len(), 100);
        assert_eq!(w.businesses.len(), 126);
        let c = w.census();
        assert_eq!(c.infected, 3);
        assert_eq!(c.recovered, 3);
        assert_eq!(c.susceptible, 294);
        for p in &w.people {
            if let EpidemicState::Infected(inf) = p.state {
                assert_eq!(inf.phase, Phase::Incubating);
                assert_eq!(inf.infection_day, 0);
            }
        }
    }

    #[test]
    fn baseline_seeding_has_no_infection() {
        let params = Parameters {
            initial_infected: 0.0,
            initial_immune: 1.0,
            ..Parameters::default()
        };
        let c = build_world(&params, 3).unwrap().census();
        assert_eq!(c.infected, 0);
        assert_eq!(c.recovered, 300);
    }

    #[test]
    fn over_seeding_is_rejected() {
        let params = Parameters {
            initial_infected: 0.7,
            initial_immune: 0.5,
            ..Parameters::default()
        };
        assert!(build_world(&params, 3).is_err());
    }

    #[test]
    fn same_seed_same_world() {
        let params = Parameters::default();
        assert_eq!(build_world(&params, 11).unwrap(), build_world(&params, 11).unwrap());
        assert_ne!(build_world(&params, 11).unwrap(), build_world(&params, 12).unwrap());
    }

    #[test]
    fn memberships_partition_people() {
        let params = Parameters {
            homeless_rate: 0.05,
            ..Parameters::default()
        };
        let w = build_world(&params, 5).unwrap();
        for (i, p) in w.people.iter().enumerate() {
            let in_houses = w.houses.iter().filter(|h| h.members.contains(&i)).count();
            assert_eq!(in_houses, usize::from(!p.is_homeless()));
            let in_jobs = w.businesses.iter().filter(|b| b.employees.contains(&i)).count();
            match p.employment {
                Employment::Employed(b) => {
                    assert_eq!(in_jobs, 1);
                    assert!(w.businesses[b].employees.contains(&i));
                    assert!(p.age > 16.0 && p.age < 65.0);
                    assert!(!p.is_homeless());
                }
                Employment::Unemployed => {
                    assert_eq!(in_jobs, 0);
                    assert!(p.age > 16.0 && p.age < 65.0);
                }
                Employment::Inactive => {
                    assert_eq!(in_jobs, 0);
                    assert!(!(p.age > 16.0 && p.age < 65.0));
                }
            }
            assert!(p.position.x >= 0.0 && p.position.x <= params.height);
            assert!(p.position.y >= 0.0 && p.position.y <= params.width);
        }
    }

    #[test]
    fn homeless_fraction_matches_rate() {
        let params = Parameters {
            population_size: 10_000,
            homeless_rate: 0.2,
            ..Parameters::default()
        };
        let w = build_world(&params, 9).unwrap();
        let k = w.people.iter().filter(|p| p.is_homeless()).count() as f64;
        let n: f64 = 10_000.0;
        let sd = (n * 0.2 * 0.8).sqrt();
        assert!((k - n * 0.2).abs() < 4.0 * sd, "{k} homeless");
    }

    #[test]
    fn wealth_split_follows_shares() {
        let params = Parameters::default();
        let w = build_world(&params, 21).unwrap();
        assert!((w.total_wealth() - 1_000_000.0).abs() <= 1e-6 * 1_000_000.0);
        assert!((w.government.wealth - 10_000.0).abs() < 1e-6);
        assert!((w.business_wealth() - 50_000.0).abs() < 1e-6);
        let personal = w.house_wealth() + w.people_wealth();
        assert!((personal - 940_000.0).abs() < 1e-6);
        assert_eq!(w.healthcare.wealth, 0.0);

        if w.people.iter().all(|p| !p.is_homeless()) {
            let q5: f64 = w
                .houses
                .iter()
                .filter(|h| h.stratum.get() == 5)
                .map(|h| h.wealth)
                .sum();
            assert!((q5 / 940_000.0 - 0.5612).abs() < 1e-9);
        }
    }

    #[test]
    fn empty_quintile_share_is_redistributed() {
        let s = |q| Stratum::new(q).unwrap();
        let shares = [0.1, 0.1, 0.2, 0.2, 0.4];
        let amounts = split_by_quintile(100.0, &[s(1), s(1), s(5)], &shares);
        let total: f64 = amounts.iter().sum();
        assert!((total - 100.0).abs() < 1e-12);
        assert!((amounts[0] - 10.0).abs() < 1e-12);
        assert!((amounts[2] - 80.0).abs() < 1e-12);
    }
}
