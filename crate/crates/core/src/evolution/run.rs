use super::{
    instantiate_individual, migrate, select_next_generation, HallOfFame, Individual, Island,
    MigrationEvent,
};
use crate::dataset::Dataset;
use crate::expr::ExprNode;
use crate::genetics::{mutate, random_expression};
use crate::options::{Options, OptionsError};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::time::{Duration, Instant};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum RunError {
    #[error(transparent)]
    Options(#[from] OptionsError),
    #[error("starting expression `{expr}` uses v{var} but the data has {n_vars} variable(s)")]
    UnknownVariable {
        expr: String,
        var: usize,
        n_vars: usize,
    },
    #[error("could not start worker threads: {0}")]
    Threads(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StopReason {
    Generations,
    TimeLimit,
    Target,
}

/// Snapshot handed to the observer after every generation (including
/// generation 0, the initial population).
pub struct Progress<'a> {
    pub generation: usize,
    pub islands: &'a [Island],
    pub hall_of_fame: &'a HallOfFame,
    pub migration: Option<MigrationEvent>,
    pub elapsed: Duration,
}

impl Progress<'_> {
    /// One log line: generation, per-island best mse, mare and compl, and
    /// wall time.
    pub fn line(&self) -> String {
        use super::Attribute::{Compl, Mare, Mse};
        let mut s = format!("gen {:>5}", self.generation);
        for island in self.islands {
            let show = |v: Option<f64>| v.map_or("-".to_string(), |x| format!("{x:.3e}"));
            s.push_str(&format!(
                " | i{} mse {} mare {} compl {}",
                island.id,
                show(island.best(Mse)),
                show(island.best(Mare)),
                island.best(Compl).map_or("-".to_string(), |c| format!("{c}")),
            ));
        }
        s.push_str(&format!(" | {:.1}s", self.elapsed.as_secs_f64()));
        s
    }
}

#[derive(Clone, Debug)]
pub struct RunResult {
    pub hall_of_fame: HallOfFame,
    pub islands: Vec<Island>,
    /// Generations completed after the initial population.
    pub generations: usize,
    pub stop_reason: StopReason,
}

/// Independent generator for one unit of work. Every task owns its stream,
/// so results do not depend on how tasks are spread over threads.
fn stream_rng(seed: u64, generation: u64, island: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut h = generation
        .wrapping_mul(0x9E37_79B9_7F4A_7C15)
        .wrapping_add(island.wrapping_mul(0xBF58_476D_1CE4_E5B9))
        .wrapping_add(index.wrapping_mul(0x94D0_49BB_1331_11EB));
    h ^= h >> 31;
    rng.set_stream(h);
    rng
}

// Stream ids reserved for the serial part of each generation.
const SELECTION_STREAM: u64 = u64::MAX;
const MIGRATION_STREAM: u64 = u64::MAX - 1;
// Attempts to fill an island with valid random individuals.
const INIT_ROUNDS: u64 = 50;

struct Workers(Option<rayon::ThreadPool>);

impl Workers {
    fn new(threads: usize) -> Result<Self, RunError> {
        if threads == 1 {
            return Ok(Workers(None));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map(|p| Workers(Some(p)))
            .map_err(|e| RunError::Threads(e.to_string()))
    }

    fn map<T: Sync, U: Send>(&self, items: &[T], f: impl Fn(&T) -> U + Sync + Send) -> Vec<U> {
        match &self.0 {
            None => items.iter().map(f).collect(),
            Some(pool) => pool.install(|| items.par_iter().map(f).collect()),
        }
    }
}

pub fn run(opts: &Options, data: &Dataset) -> Result<RunResult, RunError> {
    run_with_observer(opts, data, |_| {})
}

/// The generational loop. `observer` sees every generation.
pub fn run_with_observer(
    opts: &Options,
    data: &Dataset,
    mut observer: impl FnMut(&Progress<'_>),
) -> Result<RunResult, RunError> {
    opts.validate()?;
    let n_vars = data.n_vars();
    for e in &opts.starting_expressions {
        let var = e.max_variable();
        if var > n_vars {
            return Err(RunError::UnknownVariable {
                expr: e.to_string(),
                var,
                n_vars,
            });
        }
    }
    let start = Instant::now();
    let workers = Workers::new(opts.threads)?;
    let mut hof = HallOfFame::new(opts.selection.pareto_objectives.clone());

    let mut islands = initial_islands(opts, data, &workers);
    for island in &islands {
        hof.extend(&island.population);
    }
    observer(&Progress {
        generation: 0,
        islands: &islands,
        hall_of_fame: &hof,
        migration: None,
        elapsed: start.elapsed(),
    });

    let mut generation = 0;
    let mut stop_reason = StopReason::Generations;
    loop {
        if target_reached(opts, &hof) {
            stop_reason = StopReason::Target;
            break;
        }
        if generation >= opts.stop.max_generations {
            break;
        }
        if opts.stop.time_limit.is_some_and(|t| start.elapsed() >= t) {
            stop_reason = StopReason::TimeLimit;
            break;
        }
        generation += 1;
        let g = generation as u64;

        let tasks: Vec<(usize, usize)> = (0..islands.len())
            .flat_map(|i| (0..opts.offspring_count()).map(move |k| (i, k)))
            .collect();
        let offspring = workers.map(&tasks, |&(i, k)| {
            let mut rng = stream_rng(opts.seed, g, i as u64, k as u64);
            let child = breed(&islands[i].population, opts, n_vars, &mut rng);
            instantiate_individual(&child, data, opts, &mut rng).ok()
        });

        let mut offspring = offspring.into_iter();
        for island in islands.iter_mut() {
            let kids: Vec<Individual> = offspring
                .by_ref()
                .take(opts.offspring_count())
                .flatten()
                .collect();
            hof.extend(&kids);
            island.population.extend(kids);
        }
        islands = islands
            .into_iter()
            .map(|island| {
                let mut rng = stream_rng(opts.seed, g, island.id as u64, SELECTION_STREAM);
                select_next_generation(island, &opts.selection, &mut rng)
            })
            .collect();

        let migration = if generation % opts.migration_interval == 0 {
            let mut rng = stream_rng(opts.seed, g, 0, MIGRATION_STREAM);
            migrate(&mut islands, &mut rng)
        } else {
            None
        };
        observer(&Progress {
            generation,
            islands: &islands,
            hall_of_fame: &hof,
            migration,
            elapsed: start.elapsed(),
        });
    }

    Ok(RunResult {
        hall_of_fame: hof,
        islands,
        generations: generation,
        stop_reason,
    })
}

fn target_reached(opts: &Options, hof: &HallOfFame) -> bool {
    match opts.stop.target {
        Some((attr, threshold)) => hof.best(attr).is_some_and(|v| v <= threshold),
        None => false,
    }
}

/// A mutated copy of a uniformly drawn parent, with a crossover partner
/// from the same island. Empty islands get a fresh random expression.
fn breed<R: Rng + ?Sized>(
    population: &[Individual],
    opts: &Options,
    n_vars: usize,
    rng: &mut R,
) -> ExprNode {
    let n = population.len();
    if n == 0 {
        return random_expression(opts, n_vars, rng);
    }
    let parent = rng.random_range(0..n);
    let partner = if n > 1 {
        let mut j = rng.random_range(0..n - 1);
        if j >= parent {
            j += 1;
        }
        Some(&population[j].expr)
    } else {
        None
    };
    mutate(&population[parent].expr, partner, opts, n_vars, rng).0
}

/// Generation 0: starting expressions go round-robin to the islands, then
/// random expressions fill the remaining slots. Candidates that fail
/// instantiation are redrawn a bounded number of times.
fn initial_islands(opts: &Options, data: &Dataset, workers: &Workers) -> Vec<Island> {
    let n_vars = data.n_vars();
    let mut islands: Vec<Island> = (0..opts.n_islands)
        .map(|id| Island::new(id, opts.island_capacity))
        .collect();

    let seeded: Vec<(usize, usize)> = (0..opts.starting_expressions.len())
        .map(|k| (k % opts.n_islands, k))
        .collect();
    let fitted = workers.map(&seeded, |&(i, k)| {
        let mut rng = stream_rng(opts.seed, 0, i as u64, k as u64);
        instantiate_individual(&opts.starting_expressions[k], data, opts, &mut rng).ok()
    });
    for ((i, _), ind) in seeded.iter().zip(fitted) {
        if let Some(ind) = ind {
            islands[*i].population.push(ind);
        }
    }
    // the initial selection below trims any excess of starting expressions

    let base = opts.starting_expressions.len() as u64;
    for round in 0..INIT_ROUNDS {
        let tasks: Vec<(usize, usize)> = islands
            .iter()
            .flat_map(|isl| {
                let missing = isl.capacity.saturating_sub(isl.population.len());
                (0..missing).map(move |slot| (isl.id, slot))
            })
            .collect();
        if tasks.is_empty() {
            break;
        }
        let width = opts.island_capacity as u64;
        let made = workers.map(&tasks, |&(i, slot)| {
            let index = base + round * width + slot as u64;
            let mut rng = stream_rng(opts.seed, 0, i as u64, index);
            let expr = random_expression(opts, n_vars, &mut rng);
            instantiate_individual(&expr, data, opts, &mut rng).ok()
        });
        for ((i, _), ind) in tasks.iter().zip(made) {
            if let Some(ind) = ind {
                islands[*i].population.push(ind);
            }
        }
    }
    islands
        .into_iter()
        .map(|island| {
            if island.population.len() <= island.capacity {
                return island;
            }
            let mut rng = stream_rng(opts.seed, 0, island.id as u64, SELECTION_STREAM);
            let mut selected = select_next_generation(island, &opts.selection, &mut rng);
            selected.population.iter_mut().for_each(|ind| ind.age = 0);
            selected
        })
        .collect()
}
