//! Fitting through a transform of the model output: the evolved expression
//! f is scored as exp(f), so searching for log(y) is never needed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use symreg::fitting::{compute_measures, fit_params_lm, FitOptions, ResidualConfig, Weighting};
use symreg::{parse, Dataset};

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let x: Vec<Vec<f64>> = (0..50).map(|_| vec![rng.random_range(0.0..2.0)]).collect();
    // spans several decades, so relative errors matter more than absolute ones
    let y: Vec<f64> = x.iter().map(|r| (3.0 * r[0] - 1.0).exp()).collect();
    let data = Dataset::from_rows(&x, y, None).unwrap();

    let cfg = ResidualConfig::default()
        .with_pre_residual_processing(|f, _| f.iter_mut().for_each(|v| *v = v.exp()))
        .with_weighting(Weighting::InverseTarget);
    let (fitted, _) = fit_params_lm(&parse("0.5 * v1 + 0.0").unwrap(), &data, &cfg, &FitOptions::default(), &mut rng).unwrap();
    let m = compute_measures(&fitted, data.all(), &cfg).unwrap();
    println!("f = {fitted}");
    println!("mse {:.3e}, mare {:.3e}, max_are {:.3e}", m.mse, m.mare, m.max_are);
}
