//! Money flows between agents. Every function moves wealth from one agent to
//! another, so the total is conserved up to floating-point rounding.

use rand::Rng;

use crate::model::{Parameters, Stratum};
use crate::world::WorldState;

fn reference() -> Stratum {
    Stratum::new(3).expect("valid quintile")
}

fn lowest() -> Stratum {
    Stratum::new(1).expect("valid quintile")
}

/// Amount a person of quintile `q` spends on one business contact.
pub fn purchase_amount(q: Stratum, params: &Parameters) -> f64 {
    params.spend_per_contact * (params.minimum_expense / 720.0) * params.share_ratio(q, reference())
}

/// Daily fixed expense of one household member or employee in quintile `q`.
pub fn daily_expense(q: Stratum, params: &Parameters) -> f64 {
    params.minimum_expense * params.share_ratio(q, reference()) / 30.0
}

/// Monthly salary of an employee in quintile `q`.
pub fn salary(q: Stratum, params: &Parameters) -> f64 {
    params.minimum_income * params.share_ratio(q, lowest())
}

/// A person buys from a business they are in contact with. Paid from the
/// person's wealth if it covers the amount, otherwise from the household's,
/// otherwise nothing is bought. Returns the amount paid.
pub fn business_contact(world: &mut WorldState, person: usize, business: usize, params: &Parameters) -> f64 {
    let p = &world.people[person];
    let amount = purchase_amount(p.stratum, params);
    if amount <= 0.0 {
        return 0.0;
    }
    if p.wealth >= amount {
        world.people[person].wealth -= amount;
    } else {
        match p.house {
            Some(h) if world.houses[h].wealth >= amount => world.houses[h].wealth -= amount,
            _ => return 0.0,
        }
    }
    let b = &mut world.businesses[business];
    b.wealth += amount;
    b.income += amount;
    amount
}

/// End-of-day expenses.
///
/// Each household accrues its members' fixed expenses as a debt to suppliers,
/// settled at the monthly accounting; living members check in their share of
/// it from their own wealth as far as they can. Each business pays its
/// employees' fixed expenses to one uniformly random business.
pub fn daily_expenses(world: &mut WorldState, params: &Parameters) {
    for h in 0..world.houses.len() {
        let living: Vec<usize> = world.houses[h]
            .members
            .iter()
            .copied()
            .filter(|&i| world.people[i].is_alive())
            .collect();
        if living.is_empty() {
            continue;
        }
        let share = daily_expense(world.houses[h].stratum, params);
        let mut checked_in = 0.0;
        for &i in &living {
            let pay = share.min(world.people[i].wealth.max(0.0));
            world.people[i].wealth -= pay;
            checked_in += pay;
        }
        let house = &mut world.houses[h];
        house.wealth += checked_in;
        house.income += checked_in;
        house.supplier_debt += share * living.len() as f64;
    }

    let n = world.businesses.len();
    for b in 0..n {
        let living = world.businesses[b]
            .employees
            .iter()
            .filter(|&&i| world.people[i].is_alive())
            .count();
        if living == 0 {
            continue;
        }
        let amount = daily_expense(world.businesses[b].stratum, params) * living as f64;
        let target = world.rng.random_range(0..n);
        world.businesses[b].wealth -= amount;
        world.businesses[target].wealth += amount;
        world.businesses[target].income += amount;
    }
}

/// Monthly accounting, in order: taxes on gross income, salaries, household
/// supplier payments, healthcare funding and aid.
///
/// A household's supplier payment covers its accrued fixed expenses plus the
/// salaries its members received this month, which go back into the business
/// sector through one uniformly random business.
pub fn monthly_accounting(world: &mut WorldState, params: &Parameters) {
    let mut taxes = 0.0;
    for h in &mut world.houses {
        let t = params.tax_rate * h.income;
        h.wealth -= t;
        h.income = 0.0;
        taxes += t;
    }
    for b in &mut world.businesses {
        let t = params.tax_rate * b.income;
        b.wealth -= t;
        b.income = 0.0;
        taxes += t;
    }
    world.government.wealth += taxes;

    let mut household_salaries = vec![0.0; world.houses.len()];
    for b in 0..world.businesses.len() {
        for k in 0..world.businesses[b].employees.len() {
            let e = world.businesses[b].employees[k];
            let person = &mut world.people[e];
            if !person.is_alive() {
                continue;
            }
            let s = salary(person.stratum, params);
            person.wealth += s;
            if let Some(h) = person.house {
                household_salaries[h] += s;
            }
            world.businesses[b].wealth -= s;
        }
    }

    let n = world.businesses.len();
    for (h, received) in household_salaries.into_iter().enumerate() {
        let house = &mut world.houses[h];
        let owed = house.supplier_debt + received;
        house.supplier_debt = 0.0;
        if owed == 0.0 {
            continue;
        }
        house.wealth -= owed;
        let target = world.rng.random_range(0..n);
        world.businesses[target].wealth += owed;
        world.businesses[target].income += owed;
    }

    let funding = params.healthcare_fixed_expense
        + params.hospital_cost_per_patient_day * world.healthcare.patient_days as f64;
    world.government.wealth -= funding;
    world.healthcare.wealth += funding;
    world.healthcare.patient_days = 0;

    for p in &mut world.people {
        if p.is_alive() && p.receives_aid() {
            p.wealth += params.minimum_income;
            world.government.wealth -= params.minimum_income;
        }
    }
}
