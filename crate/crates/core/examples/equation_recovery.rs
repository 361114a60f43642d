//! Recovers y = 2.5*x1^2 + sin(x2) from 200 noiseless rows.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use symreg::{Attribute, Dataset, Options, StopCriteria};

fn main() {
    let seed: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1);
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let rows: Vec<Vec<f64>> = (0..200)
        .map(|_| vec![rng.random_range(0.5..3.0), rng.random_range(0.5..3.0)])
        .collect();
    let y = rows.iter().map(|r| 2.5 * r[0] * r[0] + r[1].sin()).collect();
    let data = Dataset::from_rows(&rows, y, None).unwrap();

    let opts = Options {
        n_islands: 2,
        island_capacity: 50,
        seed,
        threads: 1,
        stop: StopCriteria {
            max_generations: 200,
            target: Some((Attribute::Mare, 1e-6)),
            ..StopCriteria::default()
        },
        ..Options::default()
    };
    let out = symreg::evolution::run_with_observer(&opts, &data, |p| {
        if p.generation % 10 == 0 {
            eprintln!("{}", p.line());
        }
    })
    .unwrap();
    let best = out.hall_of_fame.best_by(Attribute::Mare).unwrap();
    println!(
        "stopped after {} generations ({:?}); best mare {:.3e}: {}",
        out.generations, out.stop_reason, best.measures.mare, best.expr
    );
}
