//! Contact detection: which living people are close to each other or to a
//! business. A uniform grid keeps this near-linear; the quadratic scan is
//! kept as a reference.

use crate::model::{distance, Business, Person, Position};

/// A pair of agents within the contact threshold. Ordered so that the
/// contact list can be processed in a canonical sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Contact {
    /// Two people, lower index first.
    People(usize, usize),
    Shop { person: usize, business: usize },
}

/// Every contact by checking all pairs.
pub fn find_contacts_naive(people: &[Person], businesses: &[Business], threshold: f64) -> Vec<Contact> {
    let mut out = Vec::new();
    for (i, a) in people.iter().enumerate().filter(|(_, p)| p.is_alive()) {
        for (j, b) in people.iter().enumerate().skip(i + 1) {
            if b.is_alive() && distance(a.position, b.position) <= threshold {
                out.push(Contact::People(i, j));
            }
        }
        for (k, biz) in businesses.iter().enumerate() {
            if distance(a.position, biz.position) <= threshold {
                out.push(Contact::Shop { person: i, business: k });
            }
        }
    }
    out.sort_unstable();
    out
}

#[derive(Debug, Clone, Copy)]
enum Entry {
    Person(usize),
    Business(usize),
}

fn cell_size(threshold: f64) -> f64 {
    if threshold > 0.0 {
        threshold
    } else {
        1.0
    }
}

/// Uniform grid with cells as wide as the contact threshold, so every
/// contact lies in the same or an adjacent cell. Occupied cells are kept as a
/// sorted list, which stays small however large the environment is.
#[derive(Debug, Default)]
pub struct SpatialGrid {
    cell: f64,
    entries: Vec<((i64, i64), Entry)>,
}

impl SpatialGrid {
    pub fn new(threshold: f64) -> Self {
        Self {
            cell: cell_size(threshold),
            entries: Vec::new(),
        }
    }

    fn key(&self, p: Position) -> (i64, i64) {
        ((p.x / self.cell).floor() as i64, (p.y / self.cell).floor() as i64)
    }

    /// Every contact, in the same order as [`find_contacts_naive`].
    pub fn contacts(&mut self, people: &[Person], businesses: &[Business], threshold: f64) -> Vec<Contact> {
        self.cell = cell_size(threshold);
        self.entries.clear();
        for (i, p) in people.iter().enumerate().filter(|(_, p)| p.is_alive()) {
            self.entries.push((self.key(p.position), Entry::Person(i)));
        }
        for (k, b) in businesses.iter().enumerate() {
            self.entries.push((self.key(b.position), Entry::Business(k)));
        }
        self.entries.sort_unstable_by_key(|e| e.0);

        let mut out = Vec::new();
        for (i, a) in people.iter().enumerate().filter(|(_, p)| p.is_alive()) {
            let (cx, cy) = self.key(a.position);
            for dx in -1..=1 {
                let row = cx.saturating_add(dx);
                let lo = (row, cy.saturating_sub(1));
                let hi = (row, cy.saturating_add(1));
                let start = self.entries.partition_point(|e| e.0 < lo);
                for &(key, e) in &self.entries[start..] {
                    if key > hi {
                        break;
                    }
                    match e {
                        Entry::Person(j) if j > i => {
                            if distance(a.position, people[j].position) <= threshold {
                                out.push(Contact::People(i, j));
                            }
                        }
                        Entry::Business(k) => {
                            if distance(a.position, businesses[k].position) <= threshold {
                                out.push(Contact::Shop { person: i, business: k });
                            }
                        }
                        Entry::Person(_) => {}
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }
}

/// Every contact, using a fresh grid.
pub fn find_contacts(people: &[Person], businesses: &[Business], threshold: f64) -> Vec<Contact> {
    SpatialGrid::new(threshold).contacts(people, businesses, threshold)
}
