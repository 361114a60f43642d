//! Levenberg-Marquardt with forward-difference Jacobians and early
//! stopping on a held-out validation subset.

use super::{mean_square, processed, ResidualConfig};
use crate::dataset::{DataView, Dataset};
use crate::expr::{ExprNode, Invalid};
use nalgebra::{DMatrix, DVector};
use rand::Rng;

const MIN_STEP_NORM: f64 = 1e-12;
const MAX_DAMPING: f64 = 1e16;

#[derive(Clone, Debug, PartialEq)]
pub struct FitOptions {
    pub max_iterations: usize,
    pub initial_damping: f64,
    pub damping_up: f64,
    pub damping_down: f64,
    /// Consecutive validation-objective increases that stop the fit.
    pub early_stop_patience: usize,
    pub param_bounds: Option<(f64, f64)>,
    /// Extra starts with parameters redrawn uniformly from `restart_range`.
    pub restarts: usize,
    pub restart_range: (f64, f64),
    /// Relative forward-difference step.
    pub fd_step: f64,
}

impl Default for FitOptions {
    fn default() -> Self {
        FitOptions {
            max_iterations: 100,
            initial_damping: 1e-3,
            damping_up: 3.0,
            damping_down: 2.0,
            early_stop_patience: 5,
            param_bounds: None,
            restarts: 0,
            restart_range: (-5.0, 5.0),
            fd_step: 1e-8,
        }
    }
}

impl FitOptions {
    pub fn validate(&self) -> Result<(), String> {
        if !(self.initial_damping > 0.0) {
            return Err("initial_damping must be positive".into());
        }
        if !(self.damping_up > 1.0 && self.damping_down > 1.0) {
            return Err("damping factors must be greater than 1".into());
        }
        if self.early_stop_patience == 0 {
            return Err("early_stop_patience must be at least 1".into());
        }
        if !(self.fd_step > 0.0) {
            return Err("fd_step must be positive".into());
        }
        if let Some((lo, hi)) = self.param_bounds {
            if !(lo < hi) {
                return Err("param_bounds must satisfy low < high".into());
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct FitReport {
    /// Trial steps taken, accepted or not, summed over restarts.
    pub iterations: usize,
    pub accepted_steps: usize,
    /// Fit-subset objective at the starting point of the chosen run.
    pub initial_objective: f64,
    /// Fit-subset objective of the returned parameters.
    pub objective: f64,
    /// Validation objective of the returned parameters.
    pub validation_objective: Option<f64>,
    /// Validation objective of the last accepted iterate.
    pub final_iterate_validation_objective: Option<f64>,
    pub stopped_early: bool,
}

/// Forward-difference Jacobian of the processed residual with respect to
/// the parameter vector (pre-order), `rows x n_params`. Falls back to a
/// backward difference for a parameter whose forward point is invalid.
pub fn jacobian_forward(
    expr: &ExprNode,
    data: &DataView,
    cfg: &ResidualConfig,
    fd_step: f64,
) -> Result<DMatrix<f64>, Invalid> {
    let base = processed(expr, data, cfg)?;
    jacobian_at(expr, &expr.params(), &base, data, cfg, fd_step)
}

fn jacobian_at(
    expr: &ExprNode,
    params: &[f64],
    base: &[f64],
    data: &DataView,
    cfg: &ResidualConfig,
    fd_step: f64,
) -> Result<DMatrix<f64>, Invalid> {
    let m = base.len();
    let n = params.len();
    let mut jac = DMatrix::zeros(m, n);
    let mut probe = expr.clone();
    let mut p = params.to_vec();
    for j in 0..n {
        let h = fd_step * params[j].abs().max(1.0);
        p[j] = params[j] + h;
        probe.set_params(&p);
        let (shifted, h) = match processed(&probe, data, cfg) {
            Ok(v) => (v, h),
            Err(_) => {
                p[j] = params[j] - h;
                probe.set_params(&p);
                (processed(&probe, data, cfg)?, -h)
            }
        };
        for i in 0..m {
            jac[(i, j)] = (shifted[i] - base[i]) / h;
        }
        p[j] = params[j];
    }
    Ok(jac)
}

fn objective(expr: &ExprNode, data: &DataView, cfg: &ResidualConfig) -> Option<(Vec<f64>, f64)> {
    let e = processed(expr, data, cfg).ok()?;
    let obj = mean_square(&e);
    obj.is_finite().then_some((e, obj))
}

fn solve_damped(jac: &DMatrix<f64>, e: &[f64], damping: f64) -> Option<DVector<f64>> {
    let jt = jac.transpose();
    let mut a = &jt * jac;
    let g = &jt * DVector::from_column_slice(e);
    for k in 0..a.nrows() {
        let d = a[(k, k)].max(1e-12);
        a[(k, k)] += damping * d;
    }
    let rhs = -g;
    if let Some(chol) = a.clone().cholesky() {
        return Some(chol.solve(&rhs));
    }
    a.lu().solve(&rhs)
}

struct Run {
    params: Vec<f64>,
    report: FitReport,
    /// Selection score among restarts.
    score: f64,
}

fn single_run(
    expr: &ExprNode,
    start: Vec<f64>,
    data: &Dataset,
    cfg: &ResidualConfig,
    opts: &FitOptions,
) -> Option<Run> {
    let fit = data.fit();
    let val = data.validation();
    let early = !val.is_empty();

    let mut current = expr.with_params(&start);
    let (mut e, mut obj) = objective(&current, fit, cfg)?;
    let mut params = start;
    let mut report = FitReport {
        initial_objective: obj,
        ..FitReport::default()
    };

    let val_obj = |e: &ExprNode| objective(e, val, cfg).map_or(f64::INFINITY, |(_, o)| o);
    let mut last_val = if early { val_obj(&current) } else { 0.0 };
    let mut best_val = (last_val, params.clone(), obj);
    let mut rising = 0usize;

    let mut damping = opts.initial_damping;
    let mut jac: Option<DMatrix<f64>> = None;
    while report.iterations < opts.max_iterations {
        if jac.is_none() {
            match jacobian_at(&current, &params, &e, fit, cfg, opts.fd_step) {
                Ok(j) => jac = Some(j),
                Err(_) => break,
            }
        }
        report.iterations += 1;
        let Some(step) = solve_damped(jac.as_ref().unwrap(), &e, damping) else {
            damping *= opts.damping_up;
            if damping > MAX_DAMPING {
                break;
            }
            continue;
        };
        if !(step.norm() >= MIN_STEP_NORM) {
            break;
        }
        let mut trial: Vec<f64> = params.iter().zip(step.iter()).map(|(p, d)| p + d).collect();
        if let Some((lo, hi)) = opts.param_bounds {
            trial.iter_mut().for_each(|p| *p = p.clamp(lo, hi));
        }
        let candidate = current.with_params(&trial);
        match objective(&candidate, fit, cfg) {
            Some((e_new, obj_new)) if obj_new < obj => {
                params = trial;
                current = candidate;
                e = e_new;
                obj = obj_new;
                jac = None;
                damping /= opts.damping_down;
                report.accepted_steps += 1;
                if early {
                    let v = val_obj(&current);
                    rising = if v > last_val { rising + 1 } else { 0 };
                    last_val = v;
                    if v < best_val.0 {
                        best_val = (v, params.clone(), obj);
                    }
                    if rising >= opts.early_stop_patience {
                        report.stopped_early = true;
                        break;
                    }
                }
            }
            _ => {
                damping *= opts.damping_up;
                if damping > MAX_DAMPING {
                    break;
                }
            }
        }
    }

    if early {
        report.final_iterate_validation_objective = Some(last_val);
        report.validation_objective = Some(best_val.0);
        report.objective = best_val.2;
        Some(Run {
            params: best_val.1,
            score: best_val.0,
            report,
        })
    } else {
        report.objective = obj;
        Some(Run {
            params,
            score: obj,
            report,
        })
    }
}

/// Identifies the parameters of `expr` by minimising `ms_processed_e` on
/// the fit subset of `data`. When the dataset has validation rows, fitting
/// stops once the validation objective has risen on `early_stop_patience`
/// consecutive accepted steps, and the parameters with the lowest
/// validation objective are returned.
///
/// Returns [`Invalid`] when the expression cannot be evaluated at any
/// starting point.
pub fn fit_params_lm<R: Rng + ?Sized>(
    expr: &ExprNode,
    data: &Dataset,
    cfg: &ResidualConfig,
    opts: &FitOptions,
    rng: &mut R,
) -> Result<(ExprNode, FitReport), Invalid> {
    let n = expr.n_params();
    if n == 0 {
        let (_, obj) = objective(expr, data.fit(), cfg).ok_or(Invalid::NonFinite)?;
        let validation_objective = if data.early_stopping() {
            objective(expr, data.validation(), cfg).map(|(_, o)| o)
        } else {
            None
        };
        let report = FitReport {
            initial_objective: obj,
            objective: obj,
            validation_objective,
            final_iterate_validation_objective: validation_objective,
            ..FitReport::default()
        };
        return Ok((expr.clone(), report));
    }

    let mut best: Option<Run> = None;
    let mut iterations = 0;
    for restart in 0..=opts.restarts {
        let start = if restart == 0 {
            expr.params()
        } else {
            let (lo, hi) = opts.restart_range;
            (0..n).map(|_| rng.random_range(lo..hi)).collect()
        };
        if let Some(run) = single_run(expr, start, data, cfg, opts) {
            iterations += run.report.iterations;
            if best.as_ref().is_none_or(|b| run.score < b.score) {
                best = Some(run);
            }
        }
    }
    let mut best = best.ok_or(Invalid::NonFinite)?;
    best.report.iterations = iterations;
    Ok((expr.with_params(&best.params), best.report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn line_data() -> Dataset {
        let x: Vec<Vec<f64>> = (0..20).map(|i| vec![i as f64 * 0.25 + 0.5]).collect();
        let y = x.iter().map(|r| 2.0 * r[0] + 3.0).collect();
        Dataset::from_rows(&x, y, None).unwrap()
    }

    #[test]
    fn recovers_line() {
        let d = line_data();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let e = parse("1.0 * v1 + 1.0").unwrap();
        let (fitted, report) =
            fit_params_lm(&e, &d, &ResidualConfig::default(), &FitOptions::default(), &mut rng)
                .unwrap();
        let p = fitted.params();
        assert!((p[0] - 2.0).abs() < 1e-8 && (p[1] - 3.0).abs() < 1e-8, "{p:?}");
        assert!(report.objective <= report.initial_objective);
        assert!(report.accepted_steps > 0);
    }

    #[test]
    fn no_parameters_is_a_no_op() {
        let d = line_data();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let e = parse("v1 * v1").unwrap();
        let (fitted, report) =
            fit_params_lm(&e, &d, &ResidualConfig::default(), &FitOptions::default(), &mut rng)
                .unwrap();
        assert_eq!(fitted, e);
        assert_eq!(report.iterations, 0);
    }

    #[test]
    fn invalid_everywhere() {
        let x = vec![vec![0.0], vec![1.0]];
        let d = Dataset::from_rows(&x, vec![1.0, 2.0], None).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let opts = FitOptions {
            restarts: 3,
            ..FitOptions::default()
        };
        let e = parse("1.5 / v1").unwrap();
        assert!(fit_params_lm(&e, &d, &ResidualConfig::default(), &opts, &mut rng).is_err());
    }

    #[test]
    fn bounds_are_respected() {
        let d = line_data();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let opts = FitOptions {
            param_bounds: Some((-1.0, 1.5)),
            ..FitOptions::default()
        };
        let (fitted, _) =
            fit_params_lm(&parse("1.0 * v1 + 1.0").unwrap(), &d, &ResidualConfig::default(), &opts, &mut rng)
                .unwrap();
        assert!(fitted.params().iter().all(|p| (-1.0..=1.5).contains(p)));
    }

    #[test]
    fn jacobian_of_linear_model() {
        let d = line_data();
        let e = parse("3.0 * v1 + 1.0").unwrap();
        let j = jacobian_forward(&e, d.all(), &ResidualConfig::default(), 1e-8).unwrap();
        // residual is y - (a x + b): d/da = -x, d/db = -1
        for i in 0..d.n_rows() {
            assert!((j[(i, 0)] + d.all().column(1)[i]).abs() < 1e-5);
            assert!((j[(i, 1)] + 1.0).abs() < 1e-5);
        }
    }
}
