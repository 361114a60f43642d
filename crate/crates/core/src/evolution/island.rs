use super::Individual;
use rand::Rng;

/// A subpopulation. Islands form a ring ordered by `id`.
#[derive(Clone, Debug, PartialEq)]
pub struct Island {
    pub id: usize,
    pub population: Vec<Individual>,
    pub capacity: usize,
}

impl Island {
    pub fn new(id: usize, capacity: usize) -> Self {
        Island {
            id,
            population: Vec::new(),
            capacity,
        }
    }

    /// Lowest value of `attr` in the population, if any.
    pub fn best(&self, attr: super::Attribute) -> Option<f64> {
        self.population
            .iter()
            .map(|i| i.attribute(attr))
            .min_by(f64::total_cmp)
    }
}

/// Record of one migration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MigrationEvent {
    pub from: usize,
    pub to: usize,
    /// Index of the migrant in the emigration island's population.
    pub individual: usize,
}

/// Copies one random individual from a random island to one of its two
/// ring neighbours. The emigration island keeps its member; the receiving
/// island may exceed capacity until its next selection.
///
/// Returns `None` with fewer than two islands or an empty emigration island.
pub fn migrate<R: Rng + ?Sized>(islands: &mut [Island], rng: &mut R) -> Option<MigrationEvent> {
    let n = islands.len();
    if n < 2 {
        return None;
    }
    let from = rng.random_range(0..n);
    let to = if rng.random_bool(0.5) {
        (from + 1) % n
    } else {
        (from + n - 1) % n
    };
    let size = islands[from].population.len();
    if size == 0 {
        return None;
    }
    let individual = rng.random_range(0..size);
    let migrant = islands[from].population[individual].clone();
    islands[to].population.push(migrant);
    Some(MigrationEvent {
        from,
        to,
        individual,
    })
}
