//! Levenberg-Marquardt parameter identification, with and without early
//! stopping on a held-out validation subset.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use symreg::fitting::{fit_params_lm, FitOptions, ResidualConfig};
use symreg::{parse, Dataset};

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let noise = Normal::new(0.0, 0.1).unwrap();
    let x: Vec<Vec<f64>> = (0..80).map(|_| vec![rng.random_range(-1.0..1.0)]).collect();
    let y: Vec<f64> = x
        .iter()
        .map(|r| 1.5 * (0.8 * r[0]).exp() - 0.4 + noise.sample(&mut rng))
        .collect();

    let model = parse("1.0 * exp(1.0 * v1) + 1.0").unwrap();
    let cfg = ResidualConfig::default();

    let all_rows = Dataset::from_rows(&x, y.clone(), None).unwrap();
    let (fitted, report) =
        fit_params_lm(&model, &all_rows, &cfg, &FitOptions::default(), &mut rng).unwrap();
    println!("all rows:   {fitted}");
    println!("  objective {:.3e} -> {:.3e} in {} iterations", report.initial_objective, report.objective, report.iterations);

    let split = Dataset::from_rows(&x, y, None).unwrap().with_split(0.8, 1).unwrap();
    let opts = FitOptions {
        early_stop_patience: 2,
        ..FitOptions::default()
    };
    let (fitted, report) = fit_params_lm(&model, &split, &cfg, &opts, &mut rng).unwrap();
    println!("80/20 split: {fitted}");
    println!(
        "  {} iterations, stopped early: {}, validation objective {:.3e}",
        report.iterations,
        report.stopped_early,
        report.validation_objective.unwrap_or(f64::NAN)
    );
}
