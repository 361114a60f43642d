//! An island-model run with ring migration, reporting each migration and
//! the per-island best as the search proceeds.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use symreg::evolution::run_with_observer;
use symreg::{Attribute, Dataset, Options, StopCriteria};

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let x: Vec<Vec<f64>> = (0..100).map(|_| vec![rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0)]).collect();
    let y = x.iter().map(|r| r[0] * r[1] + 0.5 * r[0]).collect();
    let data = Dataset::from_rows(&x, y, None).unwrap().with_split(0.8, 5).unwrap();

    let opts = Options {
        n_islands: 4,
        island_capacity: 25,
        migration_interval: 5,
        seed: 2,
        threads: 0,
        stop: StopCriteria {
            max_generations: 40,
            ..StopCriteria::default()
        },
        ..Options::default()
    };
    let result = run_with_observer(&opts, &data, |p| {
        if let Some(m) = &p.migration {
            // the copy lands at the end of the receiving island
            let migrant = p.islands[m.to].population.last().unwrap();
            println!("gen {:>3}: island {} -> {}: {}", p.generation, m.from, m.to, migrant.expr);
        }
        if p.generation % 10 == 0 {
            println!("{}", p.line());
        }
    })
    .unwrap();

    println!("\nhall of fame ({} members):", result.hall_of_fame.len());
    for m in symreg::io::sorted_members(&result.hall_of_fame) {
        println!("  compl {:>2}  mse {:.3e}  {}", m.compl, m.attribute(Attribute::Mse), m.expr);
    }
}
