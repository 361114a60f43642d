//! Parameter identification and residual-related measures.
//!
//! The fitted objective is the mean squared *processed* error
//! (`ms_processed_e`): residuals `y - g(f(X))` are passed through an
//! optional custom transform `h` and multiplied by per-row weights before
//! squaring. With no transform and no weights it is the plain MSE.

mod lm;
mod measures;

pub use crate::dataset::{DataView, Dataset};
pub use lm::{fit_params_lm, jacobian_forward, FitOptions, FitReport};
pub use measures::{compute_measures, quantile, Measures};

use crate::expr::{eval, ExprNode, Invalid};
use std::fmt;
use std::sync::Arc;

/// In-place transform over a vector aligned with the rows of a view.
pub type RowTransform = Arc<dyn Fn(&mut [f64], &DataView) + Send + Sync>;

/// Per-row weights applied to the processed residual.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Weighting {
    /// Every row weighs 1.
    Uniform,
    /// The dataset's weight column, or 1 when there is none.
    #[default]
    Data,
    /// `1 / |y|`, turning the objective into a mean squared relative error.
    /// Rows with `|y| < 1e-300` weigh 0.
    InverseTarget,
}

#[derive(Clone, Default)]
pub struct ResidualConfig {
    /// Applied to the raw predictions `f(X)` before the residual is formed.
    /// Must act row by row.
    pub pre_residual_processing: Option<RowTransform>,
    pub weighting: Weighting,
    /// Applied to the residual vector before weighting and squaring.
    pub custom_processing: Option<RowTransform>,
}

impl fmt::Debug for ResidualConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ResidualConfig")
            .field("pre_residual_processing", &self.pre_residual_processing.is_some())
            .field("weighting", &self.weighting)
            .field("custom_processing", &self.custom_processing.is_some())
            .finish()
    }
}

impl ResidualConfig {
    pub fn with_pre_residual_processing(
        mut self,
        g: impl Fn(&mut [f64], &DataView) + Send + Sync + 'static,
    ) -> Self {
        self.pre_residual_processing = Some(Arc::new(g));
        self
    }

    pub fn with_custom_processing(
        mut self,
        h: impl Fn(&mut [f64], &DataView) + Send + Sync + 'static,
    ) -> Self {
        self.custom_processing = Some(Arc::new(h));
        self
    }

    pub fn with_weighting(mut self, weighting: Weighting) -> Self {
        self.weighting = weighting;
        self
    }
}

/// Predictions after pre-residual processing.
pub fn predict(expr: &ExprNode, data: &DataView, cfg: &ResidualConfig) -> Result<Vec<f64>, Invalid> {
    let mut pred = eval(expr, data)?;
    if let Some(g) = &cfg.pre_residual_processing {
        g(&mut pred, data);
        if pred.iter().any(|v| !v.is_finite()) {
            return Err(Invalid::NonFinite);
        }
    }
    Ok(pred)
}

/// `y - g(f(X))` on every row of `data`.
pub fn residual(expr: &ExprNode, data: &DataView, cfg: &ResidualConfig) -> Result<Vec<f64>, Invalid> {
    let mut r = predict(expr, data, cfg)?;
    for (ri, yi) in r.iter_mut().zip(data.target()) {
        *ri = yi - *ri;
    }
    if r.iter().any(|v| !v.is_finite()) {
        return Err(Invalid::NonFinite);
    }
    Ok(r)
}

fn row_weight(cfg: &ResidualConfig, data: &DataView, i: usize) -> f64 {
    match cfg.weighting {
        Weighting::Uniform => 1.0,
        Weighting::Data => data.weights().map_or(1.0, |w| w[i]),
        Weighting::InverseTarget => {
            let y = data.target()[i].abs();
            if y < 1e-300 {
                0.0
            } else {
                1.0 / y
            }
        }
    }
}

/// `w_i * h(r)_i`, the vector whose mean square is `ms_processed_e`.
pub fn processed_residuals(
    mut residuals: Vec<f64>,
    data: &DataView,
    cfg: &ResidualConfig,
) -> Result<Vec<f64>, Invalid> {
    if let Some(h) = &cfg.custom_processing {
        h(&mut residuals, data);
    }
    for (i, r) in residuals.iter_mut().enumerate() {
        *r *= row_weight(cfg, data, i);
        if !r.is_finite() {
            return Err(Invalid::NonFinite);
        }
    }
    Ok(residuals)
}

/// Mean over rows of `(w_i * h(r)_i)^2`.
pub fn ms_processed_e(residuals: &[f64], data: &DataView, cfg: &ResidualConfig) -> Result<f64, Invalid> {
    let e = processed_residuals(residuals.to_vec(), data, cfg)?;
    Ok(mean_square(&e))
}

pub(crate) fn mean_square(v: &[f64]) -> f64 {
    if v.is_empty() {
        return 0.0;
    }
    v.iter().map(|x| x * x).sum::<f64>() / v.len() as f64
}

/// Processed residual vector of `expr` on `data`.
pub(crate) fn processed(expr: &ExprNode, data: &DataView, cfg: &ResidualConfig) -> Result<Vec<f64>, Invalid> {
    processed_residuals(residual(expr, data, cfg)?, data, cfg)
}
