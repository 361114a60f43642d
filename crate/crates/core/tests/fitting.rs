use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use symreg::expr::eval;
use symreg::fitting::{
    compute_measures, fit_params_lm, ms_processed_e, predict, quantile, residual, FitOptions,
    Weighting,
};
use symreg::genetics::random_expression;
use symreg::{parse, Dataset, Options, ResidualConfig};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn fit(expr: &str, data: &Dataset, cfg: &ResidualConfig) -> (Vec<f64>, symreg::fitting::FitReport) {
    let (e, r) = fit_params_lm(&parse(expr).unwrap(), data, cfg, &FitOptions::default(), &mut rng(0))
        .unwrap();
    (e.params(), r)
}

#[test]
fn straight_line_matches_closed_form() {
    let x: Vec<Vec<f64>> = (0..30).map(|i| vec![-1.0 + 0.1 * i as f64]).collect();
    let y: Vec<f64> = x.iter().map(|r| 2.0 * r[0] + 3.0).collect();
    let d = Dataset::from_rows(&x, y.clone(), None).unwrap();
    // closed-form simple regression
    let n = x.len() as f64;
    let mx = x.iter().map(|r| r[0]).sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(&y).map(|(r, yi)| (r[0] - mx) * (yi - my)).sum();
    let sxx: f64 = x.iter().map(|r| (r[0] - mx).powi(2)).sum();
    let slope = sxy / sxx;
    let icpt = my - slope * mx;
    let (p, _) = fit("0.3 * v1 + -1.0", &d, &ResidualConfig::default());
    assert!((p[0] - slope).abs() < 1e-8 && (p[1] - icpt).abs() < 1e-8, "{p:?}");
    assert!((p[0] - 2.0).abs() < 1e-8 && (p[1] - 3.0).abs() < 1e-8);
}

#[test]
fn exp_pre_processing_equals_transformed_target() {
    let mut r = rng(1);
    let x: Vec<Vec<f64>> = (0..50).map(|_| vec![r.random_range(-1.0..2.0)]).collect();
    let y: Vec<f64> = x.iter().map(|row| (0.5 * row[0] + 1.0).exp()).collect();
    let d = Dataset::from_rows(&x, y.clone(), None).unwrap();
    let g = ResidualConfig::default().with_pre_residual_processing(|u, _| {
        u.iter_mut().for_each(|v| *v = v.exp())
    });
    let f = parse("0.2 * v1 + 0.1").unwrap();
    let manual: Vec<f64> = eval(&f, d.all()).unwrap().iter().map(|v| v.exp()).collect();
    assert_eq!(predict(&f, d.all(), &g).unwrap(), manual);

    let (p, _) = fit("0.2 * v1 + 0.1", &d, &g);
    // the same model fitted to log(y) without processing
    let logged = Dataset::from_rows(&x, y.iter().map(|v| v.ln()).collect(), None).unwrap();
    let (q, _) = fit("0.2 * v1 + 0.1", &logged, &ResidualConfig::default());
    for (a, b) in p.iter().zip(&q) {
        assert!((a - b).abs() < 1e-8, "{p:?} vs {q:?}");
    }
    assert!((p[0] - 0.5).abs() < 1e-8 && (p[1] - 1.0).abs() < 1e-8);
}

#[test]
fn inverse_target_weights_give_relative_error() {
    let x = vec![vec![1.0], vec![2.0], vec![4.0]];
    let y = vec![2.0, 5.0, 10.0];
    let d = Dataset::from_rows(&x, y.clone(), None).unwrap();
    let e = parse("2.0 * v1").unwrap();
    let cfg = ResidualConfig::default().with_weighting(Weighting::InverseTarget);
    let r = residual(&e, d.all(), &cfg).unwrap();
    let expected = [0.0, 1.0 / 5.0, 2.0 / 10.0].iter().map(|v| v * v).sum::<f64>() / 3.0;
    let got = ms_processed_e(&r, d.all(), &cfg).unwrap();
    assert!((got - expected).abs() < 1e-15);
    let plain = ms_processed_e(&r, d.all(), &ResidualConfig::default()).unwrap();
    assert!((plain - 5.0 / 3.0).abs() < 1e-15);
    assert_eq!(ms_processed_e(&[0.0, 0.0, 0.0], d.all(), &cfg).unwrap(), 0.0);
}

#[test]
fn fitting_never_worsens_the_start() {
    let opts = Options::default();
    let mut r = rng(2);
    let x: Vec<Vec<f64>> = (0..40).map(|_| vec![r.random_range(0.5..2.0), r.random_range(0.5..2.0)]).collect();
    let y = x.iter().map(|v| v[0] * v[1].sin() + 1.0).collect();
    let d = Dataset::from_rows(&x, y, None).unwrap().with_split(0.75, 3).unwrap();
    let mut fitted = 0;
    while fitted < 300 {
        let e = random_expression(&opts, 2, &mut r);
        if e.n_params() == 0 {
            continue;
        }
        let Ok((_, rep)) = fit_params_lm(&e, &d, &ResidualConfig::default(), &FitOptions::default(), &mut r)
        else {
            continue;
        };
        fitted += 1;
        assert!(rep.objective <= rep.initial_objective, "{e}: {rep:?}");
        let (best, last) = (
            rep.validation_objective.unwrap(),
            rep.final_iterate_validation_objective.unwrap(),
        );
        assert!(best <= last, "{e}: {rep:?}");
    }
}

#[test]
fn without_validation_rows_there_is_no_early_stop() {
    let x: Vec<Vec<f64>> = (0..20).map(|i| vec![i as f64 * 0.1]).collect();
    let y = x.iter().map(|v| v[0].sin()).collect();
    let d = Dataset::from_rows(&x, y, None).unwrap();
    assert!(!d.early_stopping());
    let (_, rep) = fit("1.0 * v1 + 0.5 * (v1 * v1)", &d, &ResidualConfig::default());
    assert!(!rep.stopped_early);
    assert_eq!(rep.validation_objective, None);
}

#[test]
fn protected_division_fails_the_fit() {
    let d = Dataset::from_rows(&[vec![0.0], vec![1.0]], vec![1.0, 1.0], None).unwrap();
    let e = parse("2.0 / v1").unwrap();
    assert!(fit_params_lm(&e, &d, &ResidualConfig::default(), &FitOptions::default(), &mut rng(0)).is_err());
}

// Quantile via explicit order statistics.
fn q75_oracle(values: &[f64]) -> f64 {
    let mut s = values.to_vec();
    s.sort_by(f64::total_cmp);
    let pos = 0.75 * (s.len() - 1) as f64;
    let (i, frac) = (pos as usize, pos.fract());
    if i + 1 < s.len() {
        s[i] * (1.0 - frac) + s[i + 1] * frac
    } else {
        s[i]
    }
}

#[test]
fn measure_invariants_hold() {
    let opts = Options::default();
    let mut r = rng(4);
    let x: Vec<Vec<f64>> = (0..25).map(|_| vec![r.random_range(0.1..3.0), r.random_range(-2.0..2.0)]).collect();
    let y: Vec<f64> = x.iter().map(|v| v[0].ln() + v[1]).collect();
    let d = Dataset::from_rows(&x, y.clone(), None).unwrap();
    let cfg = ResidualConfig::default();
    let mut seen = 0;
    while seen < 500 {
        let e = random_expression(&opts, 2, &mut r);
        let Ok(m) = compute_measures(&e, d.all(), &cfg) else {
            continue;
        };
        seen += 1;
        assert!(m.mse >= 0.0 && m.mae >= 0.0 && m.max_ae >= m.mae);
        assert!(m.max_are >= m.q75_are && m.q75_are >= 0.0);
        assert!(m.minus_r2 >= -1.0);
        assert_eq!(m.ms_processed_e, m.mse);
        let res = residual(&e, d.all(), &cfg).unwrap();
        let rel: Vec<f64> = res.iter().zip(&y).map(|(ri, yi)| (ri / yi).abs()).collect();
        assert!((m.q75_are - q75_oracle(&rel)).abs() <= 1e-12 * m.q75_are.max(1.0));
        assert_eq!(quantile(&rel, 0.75), m.q75_are);
    }
}
